#ifndef SURFBOUND_BOUNDING_HPP
#define SURFBOUND_BOUNDING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "generating_vector.hpp"
#include "group.hpp"
#include "subgroups.hpp"

// Axis-closure obstruction.
//
// If G acts on a compact 3-manifold M with the surface as its only boundary
// component, the singular set of M/G is a trivalent graph meeting the
// boundary orbifold in its cone points. The axis leaving a boundary cone
// point of order m either runs to another boundary cone point (whose
// stabiliser is then conjugate to the inverse generator) or ends at an
// interior vertex, whose stabiliser is D_m, or A4/S4/A5 when m = 3, 4, 5.
// When no assignment of these endings exists, the action does not bound.
//
// Order-2 axes are never used as obstructions and polyhedral endings only
// check membership of <c> in a subgroup of the right type. Both choices
// over-approximate what bounds, so an Obstruction stays a proof.

namespace surfbound
{

struct ConeDatum
{
  std::size_t index = 0;
  unsigned order = 0;
  Elem generator;
};

inline std::vector<ConeDatum> cone_data(GeneratingVector const &v)
{
  std::vector<ConeDatum> out;
  for (std::size_t i = 0; i < v.cones.size(); ++i)
    out.push_back({i, v.group->element_order(v.cones[i]), v.cones[i]});
  return out;
}

struct TerminationWitness
{
  enum class Kind { unconstrained, dihedral, polyhedral };

  Kind kind = Kind::unconstrained;
  Elem involution;          ///< dihedral
  SphericalType type;       ///< polyhedral
  std::vector<Elem> subgroup; ///< polyhedral, canonical order

  std::string describe(FiniteGroup const &g) const
  {
    switch (kind) {
    case Kind::unconstrained: return "Unconstrained";
    case Kind::dihedral: return "Dihedral(" + g.format(involution) + ")";
    case Kind::polyhedral: return "Polyhedral(" + type.name() + ")";
    }
    return "?";
  }
};

struct AxisPair
{
  std::size_t first = 0, second = 0;
  Elem conjugator; ///< g with g c_first g^-1 = c_second^-1
};

struct ClosurePlan
{
  std::vector<AxisPair> pairs;
  std::vector<std::pair<std::size_t, TerminationWitness>> terminations;
};

/// Why one cone point cannot be closed off on its own.
struct ConeDiagnostic
{
  std::size_t index = 0;
  unsigned order = 0;
  std::vector<std::size_t> partners;           ///< cones it could pair with
  bool inverting_involution_absent = true;
  std::vector<SphericalType> polyhedral_absent; ///< admissible types checked
};

struct BoundingObstruction
{
  std::size_t blocking_index = 0;
  std::vector<ConeDiagnostic> diagnostics;
};

struct AxisVerdict
{
  std::variant<ClosurePlan, BoundingObstruction> result;

  bool obstructed() const
  { return std::holds_alternative<BoundingObstruction>(result); }

  ClosurePlan const &plan() const
  { return std::get<ClosurePlan>(result); }

  BoundingObstruction const &obstruction() const
  { return std::get<BoundingObstruction>(result); }
};

/// Some g with g c_i g^-1 = c_j^-1 (smallest in element order).
inline std::optional<Elem> can_pair(FiniteGroup const &g, Elem ci, Elem cj)
{
  if (g.element_order(ci) != g.element_order(cj))
    return std::nullopt;
  Elem const target = g.inv(cj);
  if (!g.conjugate(ci, target))
    return std::nullopt;
  for (Elem x : g.elements())
    if (g.conj(x, ci) == target)
      return x;
  return std::nullopt;
}

/// Polyhedral types an axis of order m may end in.
inline std::vector<SphericalType> admissible_polyhedral(unsigned m)
{
  switch (m) {
  case 3: return {SphericalType::tetrahedral(), SphericalType::octahedral(), SphericalType::icosahedral()};
  case 4: return {SphericalType::octahedral()};
  case 5: return {SphericalType::icosahedral()};
  default: return {};
  }
}

inline std::optional<TerminationWitness> can_terminate(FiniteGroup const &g, Elem c)
{
  unsigned const m = g.element_order(c);
  if (m < 2)
    throw InputError("can_terminate needs a non-trivial cone generator");
  TerminationWitness w;
  if (m == 2)
    return w;
  auto invs = inverting_involutions(g, c);
  if (!invs.empty()) {
    w.kind = TerminationWitness::Kind::dihedral;
    w.involution = invs.front();
    return w;
  }
  for (auto type : admissible_polyhedral(m))
    if (auto h = has_polyhedral_with(g, type, c)) {
      w.kind = TerminationWitness::Kind::polyhedral;
      w.type = type;
      w.subgroup = h->sorted();
      return w;
    }
  return std::nullopt;
}

namespace detail
{

struct ClosureTables
{
  std::vector<std::optional<TerminationWitness>> term;
  std::vector<std::vector<std::optional<Elem>>> pair;
};

inline ClosureTables closure_tables(std::vector<ConeDatum> const &cones, FiniteGroup const &g)
{
  std::size_t const r = cones.size();
  ClosureTables t;
  t.term.resize(r);
  t.pair.assign(r, std::vector<std::optional<Elem>>(r));
  for (std::size_t i = 0; i < r; ++i) {
    t.term[i] = can_terminate(g, cones[i].generator);
    for (std::size_t j = 0; j < r; ++j)
      if (i != j)
        t.pair[i][j] = can_pair(g, cones[i].generator, cones[j].generator);
  }
  return t;
}

/// Smallest plan: the lowest open index is terminated if possible, else
/// paired with the lowest admissible partner. Infeasible masks are memoised
/// when `memo` is set (general instances); small instances use plain
/// backtracking over all partitions.
class PlanSearch
{
public:
  PlanSearch(ClosureTables const &t, bool memo)
  : t_(t), memo_(memo)
  {}

  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> run()
  {
    std::size_t const r = t_.term.size();
    std::uint64_t const all = r == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
    std::vector<std::pair<std::size_t, std::size_t>> choice;
    if (!solve(all, choice))
      return std::nullopt;
    return choice;
  }

private:
  ClosureTables const &t_;
  bool memo_;
  std::unordered_set<std::uint64_t> failed_;

  // choice entries: (i, i) terminate, (i, j) pair
  bool solve(std::uint64_t open, std::vector<std::pair<std::size_t, std::size_t>> &choice)
  {
    if (open == 0)
      return true;
    if (memo_ && failed_.contains(open))
      return false;
    std::size_t const i = static_cast<std::size_t>(__builtin_ctzll(open));
    std::uint64_t const rest = open & ~(std::uint64_t{1} << i);
    if (t_.term[i]) {
      choice.emplace_back(i, i);
      if (solve(rest, choice))
        return true;
      choice.pop_back();
    }
    for (std::size_t j = i + 1; j < t_.term.size(); ++j) {
      if (!(rest >> j & 1u) || !t_.pair[i][j])
        continue;
      choice.emplace_back(i, j);
      if (solve(rest & ~(std::uint64_t{1} << j), choice))
        return true;
      choice.pop_back();
    }
    if (memo_)
      failed_.insert(open);
    return false;
  }
};

} // namespace detail

inline constexpr std::size_t brute_force_cone_limit = 8;

/// Searches partitions of the cone points into axis pairs and terminated
/// singletons. Returns the smallest valid plan, or an obstruction certificate
/// when none exists.
inline AxisVerdict axis_closure_check(std::vector<ConeDatum> const &cones, FiniteGroup const &g)
{
  if (cones.size() > 64)
    throw InputError("axis_closure_check supports at most 64 cone points");
  auto const tables = detail::closure_tables(cones, g);
  detail::PlanSearch search(tables, cones.size() > brute_force_cone_limit);
  if (auto choice = search.run()) {
    ClosurePlan plan;
    for (auto [i, j] : *choice) {
      if (i == j)
        plan.terminations.emplace_back(cones[i].index, *tables.term[i]);
      else
        plan.pairs.push_back({cones[i].index, cones[j].index, *tables.pair[i][j]});
    }
    return {plan};
  }

  BoundingObstruction obs;
  std::optional<std::size_t> isolated, unterminated;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (tables.term[i])
      continue;
    ConeDiagnostic d;
    d.index = cones[i].index;
    d.order = cones[i].order;
    for (std::size_t j = 0; j < cones.size(); ++j)
      if (tables.pair[i][j])
        d.partners.push_back(cones[j].index);
    d.polyhedral_absent = admissible_polyhedral(d.order);
    if (!unterminated)
      unterminated = d.index;
    if (!isolated && d.partners.empty())
      isolated = d.index;
    obs.diagnostics.push_back(std::move(d));
  }
  obs.blocking_index = isolated ? *isolated : unterminated.value_or(0);
  return {obs};
}

inline AxisVerdict axis_closure_check(GeneratingVector const &v)
{ return axis_closure_check(cone_data(v), *v.group); }

/// Re-checks every witness of a closure plan and that each cone point is
/// used exactly once.
inline bool verify_plan(std::vector<ConeDatum> const &cones, FiniteGroup const &g, ClosurePlan const &plan)
{
  std::vector<int> used(cones.size(), 0);
  auto find = [&](std::size_t index) -> ConeDatum const * {
    for (std::size_t k = 0; k < cones.size(); ++k)
      if (cones[k].index == index) {
        ++used[k];
        return &cones[k];
      }
    return nullptr;
  };
  for (auto const &p : plan.pairs) {
    auto a = find(p.first), b = find(p.second);
    if (!a || !b || g.conj(p.conjugator, a->generator) != g.inv(b->generator))
      return false;
  }
  for (auto const &[index, w] : plan.terminations) {
    auto c = find(index);
    if (!c)
      return false;
    unsigned const m = g.element_order(c->generator);
    switch (w.kind) {
    case TerminationWitness::Kind::unconstrained:
      if (m != 2)
        return false;
      break;
    case TerminationWitness::Kind::dihedral:
      if (g.element_order(w.involution) != 2 || g.conj(w.involution, c->generator) != g.inv(c->generator))
        return false;
      break;
    case TerminationWitness::Kind::polyhedral: {
      ElementSet h(g.order());
      for (Elem x : w.subgroup)
        h.insert(x);
      if (!h.contains(c->generator) || !g.is_subgroup(h) || !matches_polyhedral(g, h, w.type))
        return false;
      bool admissible = false;
      for (auto t : admissible_polyhedral(m))
        admissible = admissible || t == w.type;
      if (!admissible)
        return false;
      break;
    }
    }
  }
  for (int u : used)
    if (u != 1)
      return false;
  return true;
}

/// Re-checks an obstruction by exhaustive element search, independently of
/// the routines that produced it. Cones without a diagnostic are treated as
/// terminable, which can only make the final "no plan" claim harder.
inline bool verify_obstruction(std::vector<ConeDatum> const &cones,
                               FiniteGroup const &g,
                               BoundingObstruction const &obs)
{
  std::size_t const r = cones.size();
  std::vector<bool> terminable(r, true);
  std::vector<std::vector<bool>> partner(r, std::vector<bool>(r, false));

  auto position = [&](std::size_t index) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < r; ++k)
      if (cones[k].index == index)
        return k;
    return std::nullopt;
  };

  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      if (a == b)
        continue;
      for (Elem x : g.elements())
        if (g.mul({x, cones[a].generator, g.inv(x)}) == g.inv(cones[b].generator)) {
          partner[a][b] = true;
          break;
        }
    }

  for (auto const &d : obs.diagnostics) {
    auto k = position(d.index);
    if (!k)
      return false;
    Elem const c = cones[*k].generator;
    unsigned const m = g.element_order(c);
    if (m < 3 || m != d.order)
      return false;
    for (Elem t : g.elements())
      if (t != g.identity() && g.mul(t, t) == g.identity() && g.mul({t, c, t}) == g.inv(c))
        return false;
    for (auto type : admissible_polyhedral(m)) {
      bool listed = false;
      for (auto const &p : d.polyhedral_absent)
        listed = listed || p == type;
      if (!listed)
        return false;
      // every A4/S4/A5 containing c is generated by c and one more element
      for (Elem y : g.elements()) {
        auto h = g.subgroup_generated({c, y});
        if (matches_polyhedral(g, h, type))
          return false;
      }
    }
    std::vector<std::size_t> expect;
    for (std::size_t b = 0; b < r; ++b)
      if (partner[*k][b])
        expect.push_back(cones[b].index);
    if (expect != d.partners)
      return false;
    terminable[*k] = false;
  }

  // no involutive assignment (self = terminate, other = pair) closes all cones
  std::vector<int> mate(r, -1);
  auto closes = [&](auto &&self, std::size_t i) -> bool {
    while (i < r && mate[i] >= 0)
      ++i;
    if (i == r)
      return true;
    for (std::size_t j = i; j < r; ++j) {
      if (mate[j] >= 0)
        continue;
      if (j == i ? !terminable[i] : !partner[i][j])
        continue;
      mate[i] = static_cast<int>(j);
      mate[j] = static_cast<int>(i);
      if (self(self, i + 1))
        return true;
      mate[i] = mate[j] = -1;
    }
    return false;
  };
  return !closes(closes, 0);
}

} // namespace surfbound

#endif // SURFBOUND_BOUNDING_HPP
