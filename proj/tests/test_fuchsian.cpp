#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace surfbound;

TEST(Signature, ParseAndFormat)
{
  auto s = Signature::parse("0:2,3,7");
  EXPECT_EQ(s.genus, 0u);
  EXPECT_EQ(s.cone_orders, (std::vector<unsigned>{2, 3, 7}));
  EXPECT_EQ(s.to_string(), "0:2,3,7");
  EXPECT_EQ(s.pretty(), "(2,3,7)");
  EXPECT_TRUE(s.is_triangle());
  EXPECT_FALSE(Signature::parse("0:2,2,2,3").is_triangle());
  EXPECT_EQ(Signature::parse("1:2").to_string(), "1:2");
  for (auto bad : {"", "0", ":2,3", "x:2,3", "0:1,3,7", "0:2,,3", "-1:2,3,7", "0:2;3"})
    EXPECT_THROW(Signature::parse(bad), InputError) << bad;
}

TEST(Signature, OrbifoldEulerIsExact)
{
  EXPECT_EQ(orb_euler(Signature::parse("0:2,3,7")), Rational(-1, 42));
  EXPECT_EQ(orb_euler(Signature::parse("0:2,2,2,3")), Rational(-1, 6));
  EXPECT_EQ(orb_euler(Signature::parse("1:2")), Rational(-1, 2));
  EXPECT_EQ(to_string(Rational(-1, 12)), "-1/12");
  EXPECT_EQ(parse_rational("-1/12"), Rational(-1, 12));
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_THROW(parse_rational("1/0"), InputError);
}

TEST(RiemannHurwitz, LargeActionsHaveGenus3)
{
  struct Row
  {
    char const *sig;
    unsigned order;
  };
  for (auto [s, n] : {Row{"0:2,3,7", 168}, {"0:2,3,8", 96}, {"0:3,3,4", 48}, {"0:2,4,6", 48}, {"0:2,4,8", 32},
                      {"0:3,3,6", 24}, {"0:2,4,12", 24}, {"0:2,6,6", 24}, {"0:3,4,4", 24}, {"0:2,2,2,3", 24}})
    EXPECT_EQ(rh_genus(Signature::parse(s), n), 3u) << s;
  EXPECT_EQ(rh_genus(Signature::parse("0:2,4,5"), 120), 4u);
  EXPECT_EQ(rh_genus(Signature::parse("0:2,2,2,3"), 36), 4u);
}

TEST(RiemannHurwitz, NonIntegralGenusThrows)
{
  EXPECT_THROW(rh_genus(Signature::parse("0:2,3,7"), 100), NonIntegralGenus);
  try {
    rh_genus(Signature::parse("0:2,3,7"), 100);
  } catch (NonIntegralGenus const &e) {
    EXPECT_NE(std::string(e.what()).find("NonIntegralGenus"), std::string::npos);
  }
}

TEST(GeneratingVector, SurfaceKernelChecksEachInvariant)
{
  auto g = atlas_build("z2xs4");
  auto sig = Signature::parse("0:2,4,6");
  EXPECT_TRUE(is_surface_kernel(make_vector(g, sig, {"(12)", "(1234)(56)", "(143)(56)"})));
  auto rel = is_surface_kernel(make_vector(g, sig, {"(12)", "(1234)(56)", "(134)(56)"}));
  EXPECT_EQ(rel.reason.rfind("long relation", 0), 0u) << rel.reason;
  auto tor = is_surface_kernel(make_vector(g, Signature::parse("0:2,4,3"), {"(12)", "(1234)(56)", "(143)(56)"}));
  EXPECT_EQ(tor.reason.rfind("torsion", 0), 0u) << tor.reason;
  auto sur = is_surface_kernel(make_vector(g, Signature::parse("0:2,2"), {"(12)", "(12)"}));
  EXPECT_EQ(sur.reason.rfind("surjectivity", 0), 0u) << sur.reason;
}

TEST(GeneratingVector, BraidMoveSwapsOrdersAndPreservesRelation)
{
  auto g = atlas_build("z2xs4");
  auto v = make_vector(g, Signature::parse("0:2,4,6"), {"(12)", "(1234)(56)", "(143)(56)"});
  auto w = braid_move(v, 0);
  EXPECT_EQ(w.signature.cone_orders, (std::vector<unsigned>{4, 2, 6}));
  EXPECT_EQ(w.cones[1], v.cones[0]);
  EXPECT_TRUE(is_surface_kernel(w));
  EXPECT_EQ(inverse_braid_move(w, 0), v);
  EXPECT_THROW(braid_move(v, 2), InputError);
}

TEST(Search, AgreesWithAllTuplesOracle)
{
  std::size_t pairs = 0, vectors = 0;
  for (auto const &name : oracle::sweep_groups()) {
    ASSERT_LE(atlas_build(name)->order(), 48u);
    auto res = oracle::search_sweep(name);
    for (auto const &m : res.mismatches)
      ADD_FAILURE() << m;
    pairs += res.pairs;
    vectors += res.vectors;
  }
  EXPECT_GT(pairs, 300u);
  EXPECT_GT(vectors, 1000u);
}

TEST(Search, EnumerationIsDeterministic)
{
  auto g = atlas_build("psl27");
  auto sig = Signature::parse("0:2,3,7");
  auto a = search_vectors(sig, g), b = search_vectors(sig, g);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(a[i], b[i]);
}

TEST(Search, DedupeGivesOrbitRepresentatives)
{
  auto g = atlas_build("psl27");
  auto sig = Signature::parse("0:2,3,7");
  auto all = search_vectors(sig, g);
  auto reps = search_vectors(sig, g, SearchOptions{.dedupe = true});
  ASSERT_FALSE(reps.empty());
  EXPECT_LE(reps.size(), all.size());
  // the two (2,3,7) classes of PSL(2,7) are swapped by an outer automorphism,
  // so braid moves and inner conjugation leave two orbits
  EXPECT_EQ(reps.size(), 2u);
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      auto orbit = braid_orbit(reps[i], true);
      for (auto const &w : orbit.states)
        EXPECT_FALSE(w == reps[j]);
    }
}

TEST(Search, OrbitCapIsReported)
{
  auto g = atlas_build("s4");
  auto v = first_vector(Signature::parse("0:2,2,2,3"), g);
  ASSERT_TRUE(v);
  auto capped = braid_orbit(*v, true, 5);
  EXPECT_FALSE(capped.complete);
  auto full = braid_orbit(*v, true);
  EXPECT_TRUE(full.complete);
  for (auto const &w : full.states)
    EXPECT_TRUE(is_surface_kernel(w));
}

TEST(Search, LimitStopsEarly)
{
  auto g = atlas_build("z2xs4");
  auto few = search_vectors(Signature::parse("0:2,4,6"), g, SearchOptions{.limit = 3});
  EXPECT_EQ(few.size(), 3u);
  EXPECT_FALSE(first_vector(Signature::parse("0:7,7,7"), g));
}
