#include <algorithm>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "surfbound/atlas.hpp"
#include "surfbound/report.hpp"
#include "surfbound/subactions.hpp"

using namespace surfbound;

namespace
{

// Oracle: <c> acting on the right cosets Hx; an orbit of length l gives a
// cone of order m/l. Genus of S/H from Riemann-Hurwitz for the H-action.
Signature coset_oracle(GeneratingVector const &v, ElementSet const &h)
{
  auto const &g = *v.group;
  std::vector<int> coset(g.order(), -1);
  int n = 0;
  for (Elem x : g.elements()) {
    if (coset[x.id] >= 0)
      continue;
    for (Elem y : h.elements())
      coset[g.mul(y, x).id] = n;
    ++n;
  }
  std::vector<Elem> rep(n);
  for (Elem x : g.elements())
    rep[coset[x.id]] = x;

  Signature s;
  for (Elem c : v.cones) {
    unsigned const m = g.element_order(c);
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
      if (seen[i])
        continue;
      unsigned len = 0;
      Elem x = rep[i];
      do {
        seen[coset[x.id]] = true;
        x = g.mul(x, c);
        ++len;
      } while (coset[x.id] != i);
      if (m / len > 1)
        s.cone_orders.push_back(m / len);
    }
  }
  std::sort(s.cone_orders.begin(), s.cone_orders.end());
  auto const genus = rh_genus(v.signature, g.order());
  Rational chi = Rational(2 - 2 * static_cast<std::int64_t>(genus), static_cast<std::int64_t>(h.size()));
  for (unsigned m : s.cone_orders)
    chi += Rational(1) - Rational(1, m);
  auto two_h = Rational(2) - chi;
  EXPECT_EQ(two_h.denominator(), 1);
  s.genus = static_cast<unsigned>(two_h.numerator() / 2);
  return s;
}

std::multiset<std::string> strings(std::vector<InducedAction> const &xs)
{
  std::multiset<std::string> out;
  for (auto const &ia : xs)
    out.insert(ia.sorted_signature().to_string());
  return out;
}

GeneratingVector z2xs4_vector()
{
  return make_vector(atlas_build("z2xs4"), Signature::parse("0:2,4,6"), {"(12)", "(1234)(56)", "(143)(56)"});
}

} // namespace

TEST(InducedAction, WholeGroupIsIdentity)
{
  auto v = z2xs4_vector();
  ElementSet all(v.group->order());
  for (Elem x : v.group->elements())
    all.insert(x);
  auto ia = induced_action(v, all);
  EXPECT_EQ(ia.signature(), v.signature);
  EXPECT_EQ(ia.cone_generators(), v.cones);
  EXPECT_EQ(ia.surface_genus, 3u);
}

TEST(InducedAction, TrivialSubgroupRecoversSurface)
{
  for (auto const &e : genus3_table()) {
    auto v = detail::row_vector(e, atlas_build(e.atlas));
    auto ia = induced_action(v, v.group->subgroup_generated({}));
    EXPECT_TRUE(ia.cones.empty());
    EXPECT_EQ(ia.quotient_genus, 3u) << e.atlas;
  }
}

TEST(InducedAction, AgreesWithCosetOracle)
{
  std::size_t checked = 0;
  auto rows = genus3_table();
  for (auto const &e : genus4_table())
    rows.push_back(e);
  for (auto const &e : rows) {
    auto v = detail::row_vector(e, atlas_build(e.atlas));
    auto const &g = *v.group;
    std::vector<ElementSet> subs = index2_subgroups(g);
    for (unsigned n = 2; n <= 12; ++n)
      for (auto const &[x, h] : cyclic_subgroups(g, n))
        subs.push_back(h);
    for (auto const &h : subs) {
      auto ia = induced_action(v, h);
      EXPECT_EQ(ia.sorted_signature(), coset_oracle(v, h)) << e.atlas << " |H|=" << h.size();
      for (auto const &c : ia.cones) {
        EXPECT_TRUE(h.contains(c.generator));
        EXPECT_EQ(g.element_order(c.generator), c.order);
      }
      ++checked;
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(InducedAction, RejectsNonSubgroups)
{
  auto v = z2xs4_vector();
  ElementSet bad(v.group->order());
  bad.insert(v.group->identity());
  bad.insert(v.cones[1]);
  EXPECT_THROW(induced_action(v, bad), InputError);
}

TEST(InducedAction, Index2RestrictionsOfZ2xS4)
{
  auto got = strings(index2_restrictions(z2xs4_vector()));
  EXPECT_EQ(got, (std::multiset<std::string>{"0:2,6,6", "0:3,4,4", "0:2,2,2,3"}));
}

TEST(InducedAction, S5RestrictsToA5With255)
{
  auto v = make_vector(atlas_build("s5"), Signature::parse("0:2,4,5"), {"(12)", "(2543)", "(12345)"});
  ASSERT_TRUE(is_surface_kernel(v));
  auto subs = index2_subgroups(*v.group);
  ASSERT_EQ(subs.size(), 1u);
  auto ia = induced_action(v, subs.front());
  EXPECT_EQ(ia.sorted_signature().to_string(), "0:2,5,5");
  EXPECT_EQ(ia.surface_genus, 4u);
}

TEST(CyclicWitness, FiveWitnessTypes)
{
  std::map<std::string, std::string> want{{"psl27", "0:7,7,7"}, {"g96", "0:4,8,8"}, {"g32a", "0:4,8,8"},
                                          {"z2xd285", "0:4,8,8"}, {"g48a", "0:4,4,4,4"}, {"sl23", "0:2,3,3,6"},
                                          {"d_2_12_5", "0:2,12,12"}};
  std::size_t found = 0;
  for (auto const &e : genus3_table()) {
    if (!want.contains(e.atlas))
      continue;
    ASSERT_TRUE(e.witness);
    auto v = detail::row_vector(e, atlas_build(e.atlas));
    auto w = detail::find_cyclic_witness(v, e.witness->first, Signature::parse(e.witness->second));
    ASSERT_TRUE(w) << e.atlas;
    EXPECT_EQ(w->action.sorted_signature().to_string(), want[e.atlas]);
    EXPECT_EQ(w->cones.subgroup->order(), e.witness->first);
    ASSERT_TRUE(w->verdict.obstructed());
    EXPECT_TRUE(verify_obstruction(w->cones.cones, *w->cones.subgroup, w->verdict.obstruction())) << e.atlas;
    ++found;
  }
  EXPECT_EQ(found, 7u);
}

TEST(Restriction, CertificateNeedsMatchingSignature)
{
  auto rows = compute_rows(genus3_table());
  auto const &parent = rows[3];
  ASSERT_TRUE(parent.tet);
  auto const &g = *parent.group;
  auto subs = index2_subgroups(g);
  std::size_t ok = 0;
  for (auto const &h : subs) {
    auto sig = induced_action(parent.tet->boundary, h).sorted_signature();
    auto r = bounds_by_restriction(ParentCertificate{*parent.tet}, h, sig);
    ASSERT_TRUE(r) << r.failure;
    EXPECT_EQ(r.value->surface_genus, 3u);
    EXPECT_FALSE(bounds_by_restriction(ParentCertificate{*parent.tet}, h, Signature::parse("0:2,3,7")));
    ++ok;
  }
  EXPECT_EQ(ok, 3u);
  ElementSet all(g.order());
  for (Elem x : g.elements())
    all.insert(x);
  EXPECT_FALSE(bounds_by_restriction(ParentCertificate{*parent.tet}, all, Signature::parse("0:2,4,6")));
}

TEST(Restriction, RowsUseIsomorphicSubgroups)
{
  auto rows = compute_rows(genus3_table());
  std::size_t seen = 0;
  for (auto const &r : rows)
    if (r.verdict == Verdict::bounds_by_restriction) {
      ASSERT_TRUE(r.restriction);
      auto h = subgroup_group(*parent_vector(r.restriction->parent).group, r.restriction->subgroup, "H");
      EXPECT_TRUE(detail::isomorphic_2generated(*h, *r.group)) << r.expected.atlas;
      ++seen;
    }
  EXPECT_EQ(seen, 2u);
}
