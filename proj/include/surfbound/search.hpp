#ifndef SURFBOUND_SEARCH_HPP
#define SURFBOUND_SEARCH_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <unordered_set>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "generating_vector.hpp"
#include "group.hpp"
#include "signature.hpp"

namespace surfbound
{

namespace detail
{

using StateKey = std::vector<std::uint16_t>;
using StateSet = std::unordered_set<StateKey, boost::hash<StateKey>>;

inline StateKey state_key(GeneratingVector const &v)
{
  StateKey key;
  for (Elem x : v.all_images())
    key.push_back(x.id);
  return key;
}

} // namespace detail

/// States reachable from v by braid moves (both directions) and, optionally,
/// simultaneous conjugation. `complete` is false when the cap was hit.
struct BraidOrbit
{
  std::vector<GeneratingVector> states;
  bool complete = true;
};

inline constexpr std::size_t default_orbit_cap = 1'000'000;

inline BraidOrbit braid_orbit(GeneratingVector const &v,
                              bool with_conjugation,
                              std::size_t cap = default_orbit_cap)
{
  BraidOrbit orbit;
  detail::StateSet seen;
  seen.insert(detail::state_key(v));
  orbit.states.push_back(v);
  auto visit = [&](GeneratingVector w) {
    if (seen.insert(detail::state_key(w)).second) {
      orbit.states.push_back(std::move(w));
    }
  };
  for (std::size_t i = 0; i < orbit.states.size(); ++i) {
    if (orbit.states.size() >= cap) {
      orbit.complete = false;
      break;
    }
    auto const cur = orbit.states[i];
    for (std::size_t k = 0; k + 1 < cur.cones.size(); ++k) {
      visit(braid_move(cur, k));
      visit(inverse_braid_move(cur, k));
    }
    if (with_conjugation)
      for (Elem g : cur.group->generators())
        visit(conjugate_vector(cur, g));
  }
  return orbit;
}

struct SearchOptions
{
  std::size_t limit = std::numeric_limits<std::size_t>::max();
  /// Report one vector per orbit under braid moves and simultaneous
  /// conjugation.
  bool dedupe = false;
  std::size_t orbit_cap = default_orbit_cap;
};

/// Enumerates surface-kernel generating vectors of signature sig in G, in
/// deterministic lexicographic order. c_1 is restricted to conjugacy class
/// representatives; the last cone element is forced by the long relation.
/// fn returns false to stop early.
inline void for_each_vector(Signature const &sig,
                            GroupPtr const &group,
                            std::function<bool(GeneratingVector const &)> const &fn)
{
  auto const &g = *group;
  std::size_t const r = sig.cone_count();
  std::size_t const h = sig.genus;

  std::vector<std::vector<Elem>> candidates(r);
  for (std::size_t j = 0; j < r; ++j) {
    for (Elem x : g.elements())
      if (g.element_order(x) == sig.cone_orders[j])
        candidates[j].push_back(x);
    if (candidates[j].empty())
      return;
  }
  if (r >= 1) {
    std::vector<Elem> reps;
    for (Elem x : g.class_representatives())
      if (g.element_order(x) == sig.cone_orders[0])
        reps.push_back(x);
    candidates[0] = std::move(reps);
  }

  GeneratingVector v{group, sig, std::vector<std::pair<Elem, Elem>>(h), std::vector<Elem>(r)};
  auto const all = g.elements();
  bool stop = false;

  std::function<void(std::size_t, Elem)> cones_from = [&](std::size_t j, Elem prefix) {
    if (stop)
      return;
    if (j + 1 == r || r == 0) {
      Elem last = g.inv(prefix);
      if (r == 0) {
        if (last != g.identity())
          return;
      } else {
        if (g.element_order(last) != sig.cone_orders[r - 1])
          return;
        v.cones[r - 1] = last;
      }
      if (!g.generates(v.all_images()))
        return;
      if (!fn(v))
        stop = true;
      return;
    }
    for (Elem x : candidates[j]) {
      v.cones[j] = x;
      cones_from(j + 1, g.mul(prefix, x));
      if (stop)
        return;
    }
  };

  std::function<void(std::size_t, Elem)> pairs_from = [&](std::size_t i, Elem prefix) {
    if (stop)
      return;
    if (i == h) {
      cones_from(0, prefix);
      return;
    }
    for (Elem a : all)
      for (Elem b : all) {
        v.hyperbolic_pairs[i] = {a, b};
        pairs_from(i + 1, g.mul({prefix, a, b, g.inv(a), g.inv(b)}));
        if (stop)
          return;
      }
  };

  pairs_from(0, g.identity());
}

inline std::vector<GeneratingVector> search_vectors(Signature const &sig,
                                                    GroupPtr const &group,
                                                    SearchOptions const &opts = {})
{
  std::vector<GeneratingVector> out;
  if (opts.limit == 0)
    return out;
  detail::StateSet covered;
  for_each_vector(sig, group, [&](GeneratingVector const &v) {
    if (opts.dedupe) {
      if (covered.contains(detail::state_key(v)))
        return true;
      for (auto const &w : braid_orbit(v, true, opts.orbit_cap).states)
        covered.insert(detail::state_key(w));
    }
    out.push_back(v);
    return out.size() < opts.limit;
  });
  return out;
}

inline std::optional<GeneratingVector> first_vector(Signature const &sig, GroupPtr const &group)
{
  auto found = search_vectors(sig, group, SearchOptions{.limit = 1});
  if (found.empty())
    return std::nullopt;
  return found.front();
}

} // namespace surfbound

#endif // SURFBOUND_SEARCH_HPP
