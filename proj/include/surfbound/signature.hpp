#ifndef SURFBOUND_SIGNATURE_HPP
#define SURFBOUND_SIGNATURE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "error.hpp"

namespace surfbound
{

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(Rational const &q)
{ return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator()); }

inline Rational parse_rational(std::string_view text)
{
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos)
      return Rational(std::stoll(std::string(text)));
    return Rational(std::stoll(std::string(text.substr(0, slash))),
                    std::stoll(std::string(text.substr(slash + 1))));
  } catch (std::exception const &) {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
}

/// Signature of a cocompact Fuchsian group: quotient genus and cone orders.
struct Signature
{
  unsigned genus = 0;
  std::vector<unsigned> cone_orders;

  std::size_t cone_count() const
  { return cone_orders.size(); }

  bool is_triangle() const
  { return genus == 0 && cone_orders.size() == 3; }

  /// "h:m1,...,mr", e.g. "0:2,3,7" or "1:" for the torus.
  std::string to_string() const
  {
    std::string out = std::to_string(genus) + ":";
    for (std::size_t i = 0; i < cone_orders.size(); ++i) {
      if (i)
        out += ',';
      out += std::to_string(cone_orders[i]);
    }
    return out;
  }

  /// Short form "(2,3,7)" for genus 0, "(1;2)" otherwise.
  std::string pretty() const
  {
    std::string out = "(";
    if (genus != 0)
      out += std::to_string(genus) + ";";
    for (std::size_t i = 0; i < cone_orders.size(); ++i) {
      if (i)
        out += ',';
      out += std::to_string(cone_orders[i]);
    }
    return out + ")";
  }

  static Signature parse(std::string_view text)
  {
    auto colon = text.find(':');
    if (colon == std::string_view::npos || colon == 0)
      throw InputError("signature must look like 'h:m1,...,mr', got '" + std::string(text) + "'");
    Signature s;
    s.genus = parse_count(text.substr(0, colon), text);
    auto rest = text.substr(colon + 1);
    while (!rest.empty()) {
      auto comma = rest.find(',');
      auto tok = rest.substr(0, comma);
      unsigned m = parse_count(tok, text);
      if (m < 2)
        throw InputError("cone orders must be >= 2 in '" + std::string(text) + "'");
      s.cone_orders.push_back(m);
      if (comma == std::string_view::npos)
        break;
      rest = rest.substr(comma + 1);
      if (rest.empty())
        throw InputError("trailing comma in '" + std::string(text) + "'");
    }
    return s;
  }

  friend bool operator==(Signature const &, Signature const &) = default;
  friend auto operator<=>(Signature const &, Signature const &) = default;

private:
  static unsigned parse_count(std::string_view tok, std::string_view whole)
  {
    if (tok.empty() || tok.size() > 6)
      throw InputError("bad number in signature '" + std::string(whole) + "'");
    unsigned v = 0;
    for (char ch : tok) {
      if (ch < '0' || ch > '9')
        throw InputError("bad number in signature '" + std::string(whole) + "'");
      v = v * 10 + static_cast<unsigned>(ch - '0');
    }
    return v;
  }
};

/// Orbifold Euler characteristic 2 - 2h - sum(1 - 1/m_i), exact.
inline Rational orb_euler(Signature const &s)
{
  Rational chi(2 - 2 * static_cast<std::int64_t>(s.genus));
  for (unsigned m : s.cone_orders)
    chi -= Rational(1) - Rational(1, m);
  return chi;
}

/// Genus g of a surface with 2 - 2g = order * chi(s) (Riemann-Hurwitz).
inline unsigned rh_genus(Signature const &s, std::size_t group_order)
{
  if (group_order == 0)
    throw InputError("group order must be >= 1");
  Rational const two_minus_2g = orb_euler(s) * static_cast<std::int64_t>(group_order);
  if (two_minus_2g.denominator() != 1 || (two_minus_2g.numerator() % 2) != 0)
    throw NonIntegralGenus("NonIntegralGenus: " + s.to_string() + " with order " +
                           std::to_string(group_order) + " gives 2-2g = " +
                           surfbound::to_string(two_minus_2g));
  auto const g = (2 - two_minus_2g.numerator()) / 2;
  if (g < 0)
    throw NonIntegralGenus("NonIntegralGenus: negative genus for " + s.to_string());
  return static_cast<unsigned>(g);
}

} // namespace surfbound

#endif // SURFBOUND_SIGNATURE_HPP
