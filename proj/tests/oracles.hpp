// Independent reference implementations shared by the unit tests and the
// acceptance binary.
#ifndef SURFBOUND_TESTS_ORACLES_HPP
#define SURFBOUND_TESTS_ORACLES_HPP

#include <random>
#include <set>
#include <string>
#include <vector>

#include "surfbound/surfbound.hpp"

namespace oracle
{

using namespace surfbound;
using Tuple = std::vector<std::uint16_t>;

// Every tuple (a1,b1,...,c1..c_{r-1}) over the whole group, with the last
// cone forced by the long relation; kept iff all orders are exact and the
// images generate. No class-representative pruning.
inline std::set<Tuple> all_tuples(Signature const &sig, FiniteGroup const &g)
{
  std::set<Tuple> out;
  std::size_t const free = 2 * sig.genus + (sig.cone_count() ? sig.cone_count() - 1 : 0);
  std::vector<std::size_t> idx(free, 0);
  auto const n = g.order();
  while (true) {
    std::vector<Elem> xs;
    for (auto i : idx)
      xs.push_back(Elem{static_cast<std::uint16_t>(i)});
    Elem acc = g.identity();
    std::size_t k = 0;
    for (; k < 2 * sig.genus; k += 2)
      acc = g.mul({acc, xs[k], xs[k + 1], g.inv(xs[k]), g.inv(xs[k + 1])});
    bool ok = true;
    for (std::size_t j = 0; k + j < free; ++j) {
      ok = ok && g.element_order(xs[k + j]) == sig.cone_orders[j];
      acc = g.mul(acc, xs[k + j]);
    }
    if (ok && sig.cone_count()) {
      xs.push_back(g.inv(acc));
      ok = g.element_order(xs.back()) == sig.cone_orders.back();
    } else if (ok)
      ok = acc == g.identity();
    if (ok && g.generates(xs)) {
      Tuple t;
      for (Elem x : xs)
        t.push_back(x.id);
      out.insert(t);
    }
    std::size_t p = 0;
    while (p < free && ++idx[p] == n)
      idx[p++] = 0;
    if (p == free)
      break;
  }
  return out;
}

inline std::vector<std::vector<unsigned>> nondecreasing(std::vector<unsigned> const &orders, std::size_t r)
{
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  auto rec = [&](auto &&self, std::size_t from) -> void {
    if (cur.size() == r) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < orders.size(); ++i) {
      cur.push_back(orders[i]);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

struct SweepResult
{
  std::size_t pairs = 0;
  std::size_t vectors = 0;
  std::vector<std::string> mismatches;
};

// Groups of order <= 48 used by the search sweep.
inline std::vector<std::string> sweep_groups()
{
  return {"z5", "z6", "d4", "d5", "a4", "d_2_8_5", "d3xd3", "s4", "z2xa4",
          "sl23", "d_2_12_5", "g32a", "z2xd285", "g48a", "z2xs4"};
}

// Compares search_vectors with all_tuples for every genus-0 signature with
// r <= 4 nondecreasing cone orders realised by elements of the group, plus
// genus-1 one-cone signatures for groups of order <= 12.
inline SweepResult search_sweep(std::string const &name)
{
  SweepResult res;
  auto g = atlas_build(name);
  std::vector<unsigned> orders;
  auto hist = g->order_histogram();
  for (unsigned k = 2; k < hist.size(); ++k)
    if (hist[k])
      orders.push_back(k);
  std::vector<Signature> sigs;
  for (std::size_t r = 1; r <= 4; ++r)
    for (auto const &o : nondecreasing(orders, r))
      sigs.push_back({0, o});
  if (g->order() <= 12)
    for (unsigned m : orders)
      sigs.push_back({1, {m}});
  std::set<std::uint16_t> reps;
  for (Elem x : g->class_representatives())
    reps.insert(x.id);
  for (auto const &sig : sigs) {
    std::set<Tuple> want;
    for (auto const &t : all_tuples(sig, *g))
      if (sig.cone_count() < 2 || reps.contains(t[2 * sig.genus]))
        want.insert(t);
    std::set<Tuple> got;
    bool valid = true;
    for (auto const &v : search_vectors(sig, g)) {
      valid = valid && is_surface_kernel(v);
      Tuple t;
      for (Elem x : v.all_images())
        t.push_back(x.id);
      got.insert(t);
    }
    if (got != want || !valid)
      res.mismatches.push_back(name + " " + sig.to_string() + ": search " + std::to_string(got.size()) +
                               ", oracle " + std::to_string(want.size()));
    ++res.pairs;
    res.vectors += got.size();
  }
  return res;
}

inline GeneratingVector random_walk(GeneratingVector v, std::mt19937 &rng, std::size_t steps)
{
  auto const &g = *v.group;
  for (std::size_t s = 0; s < steps; ++s) {
    auto k = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    if (k == 2 || v.cones.size() < 2) {
      auto x = std::uniform_int_distribution<std::size_t>(0, g.order() - 1)(rng);
      v = conjugate_vector(v, Elem{static_cast<std::uint16_t>(x)});
      continue;
    }
    auto i = std::uniform_int_distribution<std::size_t>(0, v.cones.size() - 2)(rng);
    v = k == 0 ? braid_move(v, i) : inverse_braid_move(v, i);
  }
  return v;
}

inline bool reverifies(GeneratingVector const &v, AxisVerdict const &a)
{
  auto cones = cone_data(v);
  return a.obstructed() ? verify_obstruction(cones, *v.group, a.obstruction()) : verify_plan(cones, *v.group, a.plan());
}

// Seeds for the braid property: every table row plus two extra vectors.
inline std::vector<GeneratingVector> braid_seeds()
{
  std::vector<GeneratingVector> seeds;
  for (auto const &e : genus3_table())
    seeds.push_back(detail::row_vector(e, atlas_build(e.atlas)));
  for (auto const &e : genus4_table())
    seeds.push_back(detail::row_vector(e, atlas_build(e.atlas)));
  seeds.push_back(*first_vector(Signature::parse("0:7,7,7"), atlas_build("z7")));
  seeds.push_back(*first_vector(Signature::parse("0:2,2,2,2,3"), atlas_build("s4")));
  return seeds;
}

// Runs `trials` random braid/conjugation sequences; returns failure messages.
inline std::vector<std::string> braid_property(std::size_t trials, std::uint32_t seed)
{
  std::vector<std::string> failures;
  std::mt19937 rng(seed);
  auto seeds = braid_seeds();
  std::vector<bool> base;
  for (auto const &s : seeds)
    base.push_back(axis_closure_check(s).obstructed());
  std::uniform_int_distribution<std::size_t> which(0, seeds.size() - 1), len(1, 40);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    auto k = which(rng);
    auto w = random_walk(seeds[k], rng, len(rng));
    auto ok = is_surface_kernel(w);
    auto tag = "trial " + std::to_string(trial) + " seed " + std::to_string(k);
    if (!ok) {
      failures.push_back(tag + ": " + ok.reason);
      continue;
    }
    auto a = axis_closure_check(w);
    if (a.obstructed() != base[k])
      failures.push_back(tag + ": verdict changed");
    else if (!reverifies(w, a))
      failures.push_back(tag + ": verdict does not re-verify");
  }
  return failures;
}

// The tet orbifold written as a pattern: internal vertices, three edges
// reaching the boundary, three internal edges.
inline HandlebodyPattern tet_pattern(TruncatedTetrahedron const &t)
{
  HandlebodyPattern p;
  auto groups = tet_vertex_groups(t);
  std::vector<std::size_t> slot(4, 0);
  for (std::size_t v = 0; v < 4; ++v)
    if (groups[v]) {
      slot[v] = p.vertices.size();
      p.vertices.push_back(*groups[v]);
    }
  for (std::size_t e = 0; e < 6; ++e) {
    auto [a, b] = tet_edges[e];
    auto end = [&](std::size_t v) {
      return v == t.truncated ? PatternEndpoint::on_boundary() : PatternEndpoint::at(slot[v]);
    };
    p.edges.push_back({t.edge_orders[e], end(a), end(b)});
  }
  return p;
}

} // namespace oracle

#endif
