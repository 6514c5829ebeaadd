#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace surfbound;

using oracle::reverifies;

TEST(AxisClosure, Z7TripleIsObstructed)
{
  auto g = atlas_build("z7");
  auto v = first_vector(Signature::parse("0:7,7,7"), g);
  ASSERT_TRUE(v);
  auto a = axis_closure_check(*v);
  ASSERT_TRUE(a.obstructed());
  auto const &obs = a.obstruction();
  EXPECT_EQ(obs.diagnostics.size(), 3u);
  for (auto const &d : obs.diagnostics) {
    EXPECT_EQ(d.order, 7u);
    EXPECT_TRUE(d.partners.empty());
    EXPECT_TRUE(d.inverting_involution_absent);
    EXPECT_TRUE(d.polyhedral_absent.empty());
  }
  EXPECT_TRUE(reverifies(*v, a));
}

TEST(AxisClosure, PairsConjugateInverseCones)
{
  // (x, x^-1, y, y^-1) in Z5: two axis pairs, nothing to terminate
  auto g = atlas_build("z5");
  auto x = g->parse("(12345)"), y = g->parse("(13524)");
  GeneratingVector v{g, Signature::parse("0:5,5,5,5"), {}, {x, g->inv(x), y, g->inv(y)}};
  ASSERT_TRUE(is_surface_kernel(v));
  auto a = axis_closure_check(v);
  ASSERT_FALSE(a.obstructed());
  EXPECT_EQ(a.plan().pairs.size(), 2u);
  EXPECT_TRUE(a.plan().terminations.empty());
  EXPECT_TRUE(reverifies(v, a));
}

TEST(AxisClosure, DihedralTermination)
{
  auto g = atlas_build("d4");
  auto v = first_vector(Signature::parse("0:2,2,4"), g);
  ASSERT_TRUE(v);
  auto a = axis_closure_check(*v);
  ASSERT_FALSE(a.obstructed());
  bool dihedral = false;
  for (auto const &[i, w] : a.plan().terminations)
    dihedral = dihedral || w.kind == TerminationWitness::Kind::dihedral;
  EXPECT_TRUE(dihedral || !a.plan().pairs.empty());
  EXPECT_TRUE(reverifies(*v, a));
}

TEST(AxisClosure, AdmissiblePolyhedralTypes)
{
  EXPECT_EQ(admissible_polyhedral(3).size(), 3u);
  EXPECT_EQ(admissible_polyhedral(4).size(), 1u);
  EXPECT_EQ(admissible_polyhedral(5).size(), 1u);
  EXPECT_TRUE(admissible_polyhedral(2).empty());
  EXPECT_TRUE(admissible_polyhedral(7).empty());
}

TEST(AxisClosure, TamperedPlansAreRejected)
{
  auto g = atlas_build("z5");
  auto x = g->parse("(12345)"), y = g->parse("(13524)");
  GeneratingVector v{g, Signature::parse("0:5,5,5,5"), {}, {x, g->inv(x), y, g->inv(y)}};
  auto cones = cone_data(v);
  auto plan = axis_closure_check(v).plan();

  auto twice = plan;
  twice.pairs[1] = twice.pairs[0];
  EXPECT_FALSE(verify_plan(cones, *g, twice));

  auto missing = plan;
  missing.pairs.pop_back();
  EXPECT_FALSE(verify_plan(cones, *g, missing));

  // a Z5 cone cannot end at an unconstrained vertex
  ClosurePlan bogus;
  for (std::size_t i = 0; i < 4; ++i)
    bogus.terminations.push_back({i, TerminationWitness{}});
  EXPECT_FALSE(verify_plan(cones, *g, bogus));
}

TEST(AxisClosure, TamperedObstructionIsRejected)
{
  auto g = atlas_build("z2xs4");
  auto v = make_vector(g, Signature::parse("0:2,4,6"), {"(12)", "(1234)(56)", "(143)(56)"});
  auto a = axis_closure_check(v);
  ASSERT_FALSE(a.obstructed());
  BoundingObstruction fake;
  fake.blocking_index = 2;
  fake.diagnostics.push_back({2, 6, {}, true, {}});
  EXPECT_FALSE(verify_obstruction(cone_data(v), *g, fake));
}

TEST(AxisClosure, Genus3RowVectorsReverify)
{
  for (auto const &e : genus3_table()) {
    auto g = atlas_build(e.atlas);
    auto v = detail::row_vector(e, g);
    ASSERT_TRUE(is_surface_kernel(v)) << e.atlas;
    auto a = axis_closure_check(v);
    EXPECT_TRUE(reverifies(v, a)) << e.atlas << " " << e.signature;
    // bounding rows can never carry an obstruction
    if (e.verdict != Verdict::non_bounding) {
      EXPECT_FALSE(a.obstructed()) << e.atlas << " " << e.signature;
    }
  }
}

TEST(AxisClosure, LargeConeCountsUseMemoisedSearch)
{
  // ten involutions in Z2: every pairing works, and the memoised path is taken
  auto g = atlas_build("z2");
  Elem t = g->parse("(12)");
  GeneratingVector v{g, Signature{0, std::vector<unsigned>(10, 2)}, {}, std::vector<Elem>(10, t)};
  ASSERT_TRUE(is_surface_kernel(v));
  auto a = axis_closure_check(v);
  ASSERT_FALSE(a.obstructed());
  EXPECT_TRUE(reverifies(v, a));

  // nine order-3 cones in Z3 with no A4/D3 available are obstructed
  auto z3 = atlas_build("z3");
  Elem r = z3->parse("(123)");
  GeneratingVector w{z3, Signature{0, std::vector<unsigned>(9, 3)}, {}, std::vector<Elem>(9, r)};
  ASSERT_TRUE(is_surface_kernel(w));
  auto b = axis_closure_check(w);
  EXPECT_TRUE(b.obstructed());
  EXPECT_TRUE(reverifies(w, b));
}

TEST(Properties, RandomBraidSequencesPreserveValidityAndVerdicts)
{
  for (auto const &f : oracle::braid_property(1000, 20240531))
    ADD_FAILURE() << f;
}
