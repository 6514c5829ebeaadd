// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "oracles.hpp"

using namespace surfbound;

namespace
{

struct Outcome
{
  bool pass = true;
  std::vector<std::string> passed, failed;

  void check(bool ok, std::string what)
  {
    (ok ? passed : failed).push_back(std::move(what));
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{ return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }

template<typename F>
double timed(F &&f)
{
  auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds_since(t0);
}

std::string join(std::vector<std::string> const &xs)
{
  std::string out;
  for (auto const &x : xs)
    out += (out.empty() ? "" : "; ") + x;
  return out;
}

Outcome ac1()
{
  Outcome o;
  std::vector<VerdictRow> rows;
  double const t = timed([&] { rows = reproduce_genus3(1); });
  o.check(rows.size() == 11, std::to_string(rows.size()) + " rows");
  std::vector<std::pair<std::string, Verdict>> want{
      {"psl27", Verdict::non_bounding},     {"g96", Verdict::non_bounding},
      {"g48a", Verdict::non_bounding},      {"z2xs4", Verdict::bounds_geometrically},
      {"g32a", Verdict::non_bounding},      {"z2xd285", Verdict::non_bounding},
      {"sl23", Verdict::non_bounding},      {"d_2_12_5", Verdict::non_bounding},
      {"z2xa4", Verdict::bounds_by_restriction}, {"s4", Verdict::bounds_by_restriction},
      {"s4", Verdict::bounds_handlebody}};
  for (std::size_t i = 0; i < rows.size() && i < want.size(); ++i) {
    auto const &r = rows[i];
    o.check(r.expected.atlas == want[i].first && r.verdict == want[i].second && r.ok() && r.genus == 3,
            r.expected.atlas + " " + Signature::parse(r.expected.signature).pretty() + " " + to_string(r.verdict) +
                (r.ok() ? "" : " [" + join(r.mismatches) + "]"));
  }
  o.check(rows.size() > 3 && rows[3].no_handlebody, "(2,4,6) NoHandlebody");
  std::ostringstream os;
  os << "runtime " << t << "s";
  o.check(t < 300, os.str());
  return o;
}

Outcome ac2()
{
  Outcome o;
  std::map<std::string, std::pair<unsigned, std::string>> want{
      {"psl27", {7, "0:7,7,7"}},  {"g96", {8, "0:4,8,8"}},    {"g32a", {8, "0:4,8,8"}},
      {"z2xd285", {8, "0:4,8,8"}}, {"g48a", {4, "0:4,4,4,4"}}, {"sl23", {6, "0:2,3,3,6"}},
      {"d_2_12_5", {12, "0:2,12,12"}}};
  for (auto const &r : reproduce_genus3(1)) {
    auto it = want.find(r.expected.atlas);
    if (it == want.end())
      continue;
    auto const &[n, sig] = it->second;
    bool ok = r.witness && r.witness->cones.subgroup->order() == n &&
              r.witness->action.sorted_signature().to_string() == sig && r.witness->verdict.obstructed() &&
              verify_obstruction(r.witness->cones.cones, *r.witness->cones.subgroup,
                                 r.witness->verdict.obstruction());
    o.check(ok, r.expected.atlas + " " + Signature::parse(sig).pretty() + " -> Z" + std::to_string(n));
    want.erase(it);
  }
  o.check(want.empty(), "all seven non-bounding rows covered");
  return o;
}

Outcome ac3()
{
  Outcome o;
  struct Case
  {
    char const *group;
    unsigned n;
  };
  for (auto [name, n] : {Case{"psl27", 7}, {"g96", 8}, {"g48a", 4}, {"g32a", 8}, {"z2xd285", 8}, {"sl23", 6},
                         {"d_2_12_5", 12}}) {
    auto g = atlas_build(name);
    bool present = true;
    double t = timed([&] { present = has_dihedral(*g, n).has_value(); });
    std::ostringstream os;
    os << name << " no D" << n << " (" << t << "s)";
    o.check(!present && t < 1.0, os.str());
  }
  auto g = atlas_build("g48a");
  bool present = true;
  double t = timed([&] { present = has_polyhedral(*g, SphericalType::octahedral()).has_value(); });
  std::ostringstream os;
  os << "g48a no S4 (" << t << "s)";
  o.check(!present && t < 1.0, os.str());
  return o;
}

Outcome ac4()
{
  Outcome o;
  auto perm = [](char const *s) { return Permutation::from_cycles(s, 5); };
  o.check(perm("(12345)") * perm("(12)") == perm("(2345)"), "(12345)(12) = (2345)");
  o.check(perm("(12)(34)") * perm("(135)") == perm("(12345)"), "(12)(34)(135) = (12345)");

  struct Case
  {
    ExpectedRow row;
    unsigned genus;
    std::multiset<std::string> groups;
  };
  for (auto const &[row, genus, groups] :
       {Case{genus3_table()[3], 3, {"S4", "D6", "D3"}}, Case{genus4_table()[0], 4, {"S4", "A5", "D2"}}}) {
    auto g = atlas_build(row.atlas);
    auto v = detail::row_vector(row, g);
    auto const &tet = row.tet->tet;
    auto res = verify_tet_extension(tet, v, detail::parse_images(*g, *row.tet));
    std::string images;
    for (auto const &[e, cyc] : row.tet->images)
      images += (images.empty() ? "" : ", ") + cyc;
    o.check(bool(res), row.atlas + " listed images " + images + (res ? " accepted" : " rejected: " + res.failure));
    if (res) {
      auto const &c = *res.value;
      bool exact = true;
      auto types = tet_vertex_groups(tet);
      for (std::size_t vtx = 0; vtx < 4; ++vtx)
        if (types[vtx]) {
          auto es = tet.vertex_edges(vtx);
          exact = exact && c.group->generated_order({c.images[es[0]], c.images[es[1]], c.images[es[2]]}) ==
                               types[vtx]->group_order();
        }
      o.check(is_surface_kernel(c.boundary) && rh_genus(c.boundary.signature, g->order()) == genus && exact,
              row.atlas + " boundary, genus " + std::to_string(genus) + ", exact vertex groups");
    }
    auto gram = gram_check(tet, 1e-9);
    o.check(gram.accepted, row.atlas + " gram check" + (gram.accepted ? "" : ": " + gram.reason));
    std::multiset<std::string> got;
    for (auto const &t : tet_vertex_groups(tet))
      if (t)
        got.insert(t->name());
    o.check(got == groups, row.atlas + " vertex groups");
  }
  return o;
}

Outcome ac5()
{
  Outcome o;
  for (auto atlas : {"s4", "d3xd3"}) {
    auto v = first_vector(Signature::parse("0:2,2,2,3"), atlas_build(atlas));
    auto res = search_handlebody(*v);
    if (!res) {
      o.check(false, std::string(atlas) + ": " + res.failure);
      continue;
    }
    auto const &c = *res.value;
    auto chi = pattern_euler(c.pattern);
    o.check(verify_handlebody_cert(c) && c.pattern.vertices.size() <= 2 && chi == Rational(-1, 12) &&
                chi == orb_euler(c.boundary.signature) / 2,
            std::string(atlas) + " pattern " + c.pattern.describe() + ", euler " + to_string(chi));
  }
  return o;
}

Outcome ac6()
{
  Outcome o;
  auto v = make_vector(atlas_build("z2xs4"), Signature::parse("0:2,4,6"), {"(12)", "(1234)(56)", "(143)(56)"});
  std::multiset<std::string> got;
  for (auto const &ia : index2_restrictions(v))
    got.insert(ia.sorted_signature().pretty());
  std::string text;
  for (auto const &s : got)
    text += (text.empty() ? "" : " ") + s;
  o.check(got == std::multiset<std::string>{"(2,6,6)", "(3,4,4)", "(2,2,2,3)"}, "{" + text + "}");
  return o;
}

Outcome ac7()
{
  Outcome o;
  auto rows = reproduce_genus4(1);
  o.check(rows.size() == 2, std::to_string(rows.size()) + " rows");
  for (auto const &r : rows)
    o.check(r.ok() && r.genus == 4,
            r.expected.atlas + " " + to_string(r.verdict) + " genus " + std::to_string(r.genus) +
                (r.ok() ? "" : " [" + join(r.mismatches) + "]"));
  o.check(rows.size() == 2 && rows[0].verdict == Verdict::bounds_geometrically, "s5 BoundsGeometrically");
  o.check(rows.size() == 2 && rows[1].verdict == Verdict::bounds_handlebody && rows[1].group->order() == 36 &&
              36 == 12 * (rows[1].genus - 1),
          "d3xd3 BoundsHandlebody, order 36 = 12(g-1)");
  return o;
}

Outcome ac8()
{
  Outcome o;
  auto braid = oracle::braid_property(1000, 20240531);
  o.check(braid.empty(), "(a) 1000 braid sequences" + (braid.empty() ? "" : ": " + braid.front()));

  std::size_t pairs = 0;
  std::vector<std::string> bad;
  for (auto const &name : oracle::sweep_groups()) {
    auto res = oracle::search_sweep(name);
    pairs += res.pairs;
    bad.insert(bad.end(), res.mismatches.begin(), res.mismatches.end());
  }
  o.check(bad.empty(), "(b) " + std::to_string(pairs) + " (signature, group) pairs" +
                           (bad.empty() ? "" : ": " + bad.front()));

  std::size_t certs = 0;
  bool reverified = true, euler = true;
  std::vector<VerdictRow> rows = reproduce_genus3(1);
  for (auto &r : reproduce_genus4(1))
    rows.push_back(std::move(r));
  for (auto const &r : rows) {
    std::vector<json> docs;
    if (r.tet) {
      docs.push_back(to_json(*r.tet));
      euler = euler && pattern_euler(oracle::tet_pattern(r.tet->tet)) == orb_euler(r.tet->boundary.signature) / 2;
    }
    if (r.handlebody) {
      docs.push_back(to_json(*r.handlebody));
      euler = euler && pattern_euler(r.handlebody->pattern) == orb_euler(r.handlebody->boundary.signature) / 2;
    }
    if (r.restriction)
      docs.push_back(to_json(r.restriction->parent));
    for (auto const &d : docs) {
      reverified = reverified && verify_certificate_json(json::parse(d.dump()));
      ++certs;
    }
    if (r.vector && r.axis)
      reverified = reverified && verify_axis_json(json::parse(to_json(*r.axis, *r.group).dump()),
                                                  cone_data(*r.vector), *r.group);
  }
  o.check(reverified, "(c) " + std::to_string(certs) + " certificates and every axis verdict re-verify from JSON");
  o.check(euler, "(d) Euler identities");
  return o;
}

} // namespace

int main()
{
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},
      {"AC5", ac5}, {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}};
  bool all = true;
  for (auto const &[name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (std::exception const &e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << name << (o.pass ? " PASS: " + join(o.passed) : " FAIL: " + join(o.failed)) << "\n";
  }
  return all ? 0 : 1;
}
