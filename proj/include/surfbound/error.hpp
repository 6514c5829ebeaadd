#ifndef SURFBOUND_ERROR_HPP
#define SURFBOUND_ERROR_HPP

#include <stdexcept>
#include <string>

namespace surfbound
{

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad signature text, bad cycle notation, out-of-range
/// indices. The CLI maps this to exit status 2.
class InputError : public Error
{
public:
  using Error::Error;
};

class UnknownAtlasName : public InputError
{
public:
  explicit UnknownAtlasName(std::string const &name)
  : InputError("unknown atlas group '" + name + "'")
  {}
};

class NonIntegralGenus : public InputError
{
public:
  using InputError::InputError;
};

/// A construction whose parameters are inconsistent (e.g. a metacyclic
/// presentation with k^m != 1 mod n).
class InconsistentGroup : public Error
{
public:
  using Error::Error;
};

/// Floating point eigenvalues could not be separated from zero.
class NumericalError : public Error
{
public:
  using Error::Error;
};

} // namespace surfbound

#endif // SURFBOUND_ERROR_HPP
