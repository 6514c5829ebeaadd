#ifndef SURFBOUND_SUBGROUPS_HPP
#define SURFBOUND_SUBGROUPS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"

namespace surfbound
{

/// Finite subgroups of SO(3): the possible stabilisers of a vertex of the
/// singular set of an orientable 3-orbifold.
struct SphericalType
{
  enum class Kind { cyclic, dihedral, tetrahedral, octahedral, icosahedral };

  Kind kind = Kind::cyclic;
  unsigned n = 1; ///< cyclic / dihedral parameter

  static SphericalType cyclic(unsigned n)
  { return {Kind::cyclic, n}; }
  static SphericalType dihedral(unsigned n)
  { return {Kind::dihedral, n}; }
  static SphericalType tetrahedral()
  { return {Kind::tetrahedral, 0}; }
  static SphericalType octahedral()
  { return {Kind::octahedral, 0}; }
  static SphericalType icosahedral()
  { return {Kind::icosahedral, 0}; }

  std::size_t group_order() const
  {
    switch (kind) {
    case Kind::cyclic: return n;
    case Kind::dihedral: return 2 * std::size_t{n};
    case Kind::tetrahedral: return 12;
    case Kind::octahedral: return 24;
    case Kind::icosahedral: return 60;
    }
    return 0;
  }

  /// Canonical edge-order triple, largest first: D_n (n,2,2), A4 (3,3,2),
  /// S4 (4,3,2), A5 (5,3,2).
  std::array<unsigned, 3> edge_orders() const
  {
    switch (kind) {
    case Kind::dihedral: return {n, 2, 2};
    case Kind::tetrahedral: return {3, 3, 2};
    case Kind::octahedral: return {4, 3, 2};
    case Kind::icosahedral: return {5, 3, 2};
    case Kind::cyclic: break;
    }
    throw InputError("cyclic groups have no edge-order triple");
  }

  std::string name() const
  {
    switch (kind) {
    case Kind::cyclic: return "Z" + std::to_string(n);
    case Kind::dihedral: return "D" + std::to_string(n);
    case Kind::tetrahedral: return "A4";
    case Kind::octahedral: return "S4";
    case Kind::icosahedral: return "A5";
    }
    return "?";
  }

  static SphericalType parse(std::string const &s)
  {
    if (s == "A4")
      return tetrahedral();
    if (s == "S4")
      return octahedral();
    if (s == "A5")
      return icosahedral();
    if (s.size() > 1 && (s[0] == 'D' || s[0] == 'Z')) {
      unsigned v = static_cast<unsigned>(std::stoul(s.substr(1)));
      return s[0] == 'D' ? dihedral(v) : cyclic(v);
    }
    throw InputError("unknown spherical type '" + s + "'");
  }

  /// Spherical type with the given incident edge orders (any order), if the
  /// triple (a,b,c) satisfies 1/a + 1/b + 1/c > 1.
  static std::optional<SphericalType> from_triple(std::array<unsigned, 3> t)
  {
    std::sort(t.begin(), t.end(), std::greater<>());
    if (t[2] < 2)
      return std::nullopt;
    if (t[1] == 2 && t[2] == 2)
      return dihedral(t[0]);
    if (t[1] == 3 && t[2] == 2) {
      if (t[0] == 3)
        return tetrahedral();
      if (t[0] == 4)
        return octahedral();
      if (t[0] == 5)
        return icosahedral();
    }
    return std::nullopt;
  }

  /// Element-order histogram (index = order) of the abstract group.
  std::vector<std::size_t> order_histogram() const
  {
    switch (kind) {
    case Kind::tetrahedral: return {0, 1, 3, 8};
    case Kind::octahedral: return {0, 1, 9, 8, 6};
    case Kind::icosahedral: return {0, 1, 15, 20, 0, 24};
    default: break;
    }
    throw InputError("histogram only tabulated for polyhedral types");
  }

  friend bool operator==(SphericalType const &, SphericalType const &) = default;
};

/// All involutions t with t s t^-1 = s^-1, in element order.
inline std::vector<Elem> inverting_involutions(FiniteGroup const &g, Elem s)
{
  if (g.element_order(s) < 2)
    throw InputError("inverting_involutions needs an element of order >= 2");
  std::vector<Elem> out;
  Elem const s_inv = g.inv(s);
  for (Elem t : g.elements())
    if (g.element_order(t) == 2 && g.conj(t, s) == s_inv)
      out.push_back(t);
  return out;
}

/// Witness (s, t) for a dihedral subgroup of order 2n: s of order n, t an
/// involution inverting s, and <s,t> of order exactly 2n. For n = 2 the
/// witness spans a Klein four-group.
inline std::optional<std::pair<Elem, Elem>> has_dihedral(FiniteGroup const &g, unsigned n)
{
  if (n < 2)
    throw InputError("dihedral parameter must be >= 2");
  if (g.order() % (2 * n) != 0)
    return std::nullopt;
  for (Elem s : g.elements()) {
    if (g.element_order(s) != n)
      continue;
    for (Elem t : g.elements()) {
      if (g.element_order(t) != 2 || t == s)
        continue;
      if (g.conj(t, s) == g.inv(s))
        return std::pair{s, t};
    }
  }
  return std::nullopt;
}

/// True iff the subgroup h has the order and element-order histogram of the
/// polyhedral type.
inline bool matches_polyhedral(FiniteGroup const &g, ElementSet const &h, SphericalType type)
{
  if (h.size() != type.group_order())
    return false;
  auto hist = g.order_histogram(h);
  auto want = type.order_histogram();
  want.resize(hist.size(), 0);
  return hist == want;
}

/// A subgroup H of type A4 / S4 / A5 containing c. Such subgroups are exactly
/// the groups <x, y> with x of order 2, y of order 3, xy of order 3 / 4 / 5
/// and |<x,y>| = 12 / 24 / 60; the match is confirmed by the histogram.
inline std::optional<ElementSet> has_polyhedral_with(FiniteGroup const &g, SphericalType type, Elem c)
{
  unsigned k = 0;
  switch (type.kind) {
  case SphericalType::Kind::tetrahedral: k = 3; break;
  case SphericalType::Kind::octahedral: k = 4; break;
  case SphericalType::Kind::icosahedral: k = 5; break;
  default: throw InputError("has_polyhedral_with needs A4, S4 or A5");
  }
  auto const triple = type.edge_orders();
  unsigned const oc = g.element_order(c);
  if (oc != triple[0] && oc != triple[1] && oc != triple[2])
    throw InputError("element of order " + std::to_string(oc) + " cannot lie on an edge of " + type.name());
  if (g.order() % type.group_order() != 0)
    return std::nullopt;

  std::vector<ElementSet> tried;
  for (Elem x : g.elements()) {
    if (g.element_order(x) != 2)
      continue;
    for (Elem y : g.elements()) {
      if (g.element_order(y) != 3 || g.element_order(g.mul(x, y)) != k)
        continue;
      auto h = g.subgroup_generated({x, y});
      if (!h.contains(c) || h.size() != type.group_order())
        continue;
      bool dup = false;
      for (auto const &t : tried)
        dup = dup || t == h;
      if (dup)
        continue;
      if (matches_polyhedral(g, h, type))
        return h;
      tried.push_back(std::move(h));
    }
  }
  return std::nullopt;
}

/// Some subgroup of polyhedral type, if any. Every such subgroup has a
/// conjugate containing an involution class representative.
inline std::optional<ElementSet> has_polyhedral(FiniteGroup const &g, SphericalType type)
{
  for (Elem c : g.class_representatives())
    if (g.element_order(c) == 2)
      if (auto h = has_polyhedral_with(g, type, c))
        return h;
  return std::nullopt;
}

/// Kernels of all surjections G -> Z2, from sign assignments on the stored
/// generators in increasing binary order.
inline std::vector<ElementSet> index2_subgroups(FiniteGroup const &g)
{
  std::vector<ElementSet> out;
  auto const &gens = g.generators();
  if (g.order() % 2 != 0 || gens.size() >= 32)
    return out;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << gens.size()); ++mask) {
    std::vector<int> sign(g.order(), -1);
    sign[0] = 0;
    std::vector<Elem> queue{g.identity()};
    bool ok = true;
    for (std::size_t i = 0; i < queue.size() && ok; ++i)
      for (std::size_t k = 0; k < gens.size(); ++k) {
        Elem y = g.mul(queue[i], gens[k]);
        int s = sign[queue[i].id] ^ static_cast<int>((mask >> k) & 1u);
        if (sign[y.id] < 0) {
          sign[y.id] = s;
          queue.push_back(y);
        } else if (sign[y.id] != s) {
          ok = false;
          break;
        }
      }
    if (!ok)
      continue;
    ElementSet kernel(g.order());
    for (Elem x : g.elements())
      if (sign[x.id] == 0)
        kernel.insert(x);
    bool dup = false;
    for (auto const &k : out)
      dup = dup || k == kernel;
    if (!dup)
      out.push_back(std::move(kernel));
  }
  return out;
}

/// Cyclic subgroups of order n, each listed once, ordered by their smallest
/// generator.
inline std::vector<std::pair<Elem, ElementSet>> cyclic_subgroups(FiniteGroup const &g, unsigned n)
{
  std::vector<std::pair<Elem, ElementSet>> out;
  for (Elem x : g.elements()) {
    if (g.element_order(x) != n)
      continue;
    bool seen = false;
    for (auto const &[_, h] : out)
      seen = seen || h.contains(x);
    if (!seen)
      out.emplace_back(x, g.subgroup_generated({x}));
  }
  return out;
}

} // namespace surfbound

#endif // SURFBOUND_SUBGROUPS_HPP
