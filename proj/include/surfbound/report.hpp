#ifndef SURFBOUND_REPORT_HPP
#define SURFBOUND_REPORT_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "atlas.hpp"
#include "bounding.hpp"
#include "handlebody.hpp"
#include "search.hpp"
#include "serialize.hpp"
#include "subactions.hpp"
#include "tetrahedron.hpp"

namespace surfbound
{

inline constexpr char tool_version[] = "1.0.0";

enum class Verdict { non_bounding, bounds_geometrically, bounds_handlebody, bounds_by_restriction, inconclusive };

inline std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::non_bounding: return "NonBounding";
  case Verdict::bounds_geometrically: return "BoundsGeometrically";
  case Verdict::bounds_handlebody: return "BoundsHandlebody";
  case Verdict::bounds_by_restriction: return "BoundsByRestriction";
  case Verdict::inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Explicit tetrahedron data for a geometric certificate.
struct TetData
{
  TruncatedTetrahedron tet;
  std::vector<std::pair<std::size_t, std::string>> images; ///< edge index, cycle notation
};

/// One row of a reproduction table: the action and what it must come out as.
struct ExpectedRow
{
  std::string atlas;
  std::string signature;
  Verdict verdict = Verdict::inconclusive;
  bool no_handlebody = false;
  std::vector<std::string> listed_vector;         ///< empty: use the first searched vector
  std::optional<std::pair<unsigned, std::string>> witness; ///< cyclic order, induced signature
  std::optional<TetData> tet;
  std::optional<std::size_t> restriction_parent;  ///< row index in the same table
  bool index2_restrictions = false;
  std::string annotation;
};

struct CyclicWitness
{
  Elem generator;
  InducedAction action;
  RestrictedCones cones;
  AxisVerdict verdict;
};

struct VerdictRow
{
  ExpectedRow expected;
  GroupPtr group;
  std::optional<GeneratingVector> vector;
  unsigned genus = 0;
  Verdict verdict = Verdict::inconclusive;
  bool no_handlebody = false;
  std::optional<AxisVerdict> axis;
  std::optional<CyclicWitness> witness;
  std::optional<TetExtensionCert> tet;
  std::optional<HandlebodyCert> handlebody;
  std::optional<RestrictionCert> restriction;
  std::vector<InducedAction> index2;
  std::vector<std::string> notes;
  std::vector<std::string> mismatches;

  bool ok() const
  { return mismatches.empty(); }
};

namespace detail
{

inline TetData z2xs4_tet()
{
  // truncated (2,4,6) vertex; the edge opposite the order-6 edge has order 3
  return {{0, {2, 4, 6, 3, 2, 2}}, {{1, "(1234)(56)"}, {2, "(143)(56)"}, {3, "(142)"}}};
}

inline TetData s5_tet()
{
  // truncated (2,4,5) vertex; the order-3 edge joins the far ends of the
  // order-4 and order-5 edges
  return {{0, {2, 4, 5, 2, 2, 3}}, {{1, "(2345)"}, {2, "(12345)"}, {5, "(135)"}}};
}

inline EdgeAssignment parse_images(FiniteGroup const &g, TetData const &d)
{
  EdgeAssignment out;
  for (auto const &[e, cyc] : d.images)
    out.emplace_back(e, g.parse(cyc));
  return out;
}

inline GeneratingVector row_vector(ExpectedRow const &e, GroupPtr const &g)
{
  auto sig = Signature::parse(e.signature);
  if (!e.listed_vector.empty()) {
    auto v = make_vector(g, sig, e.listed_vector);
    if (auto k = is_surface_kernel(v); !k)
      throw InconsistentGroup("listed vector for " + e.atlas + " is invalid: " + k.reason);
    return v;
  }
  auto v = first_vector(sig, g);
  if (!v)
    throw InconsistentGroup("no " + sig.pretty() + " vector in " + e.atlas);
  return *v;
}

/// Geometric certificate from explicit data; when the data is inconsistent,
/// retries with the images at the truncated vertex only and records why.
inline std::optional<TetExtensionCert> tet_certificate(ExpectedRow const &e, GeneratingVector const &v,
                                                       std::vector<std::string> &notes)
{
  auto const &g = *v.group;
  auto data = *e.tet;
  auto partial = parse_images(g, data);
  auto res = verify_tet_extension(data.tet, v, partial);
  if (res)
    return res.value;
  notes.push_back("listed edge images rejected: " + res.failure);
  auto const at_truncated = data.tet.vertex_edges(data.tet.truncated);
  EdgeAssignment kept;
  for (auto const &p : partial)
    if (std::find(at_truncated.begin(), at_truncated.end(), p.first) != at_truncated.end())
      kept.push_back(p);
  auto completed = complete_tet_extension(data.tet, v, kept);
  if (!completed) {
    notes.push_back("completion failed: " + completed.failure);
    return std::nullopt;
  }
  std::string imgs;
  for (std::size_t k = 0; k < 6; ++k)
    imgs += (k ? ", " : "") + std::to_string(tet_edges[k].first) + std::to_string(tet_edges[k].second) + "=" +
            g.format(completed.value->images[k]);
  notes.push_back("completed from the truncated-vertex images: " + imgs);
  return completed.value;
}

inline std::optional<CyclicWitness> find_cyclic_witness(GeneratingVector const &v, unsigned order,
                                                        Signature want)
{
  auto const &g = *v.group;
  std::sort(want.cone_orders.begin(), want.cone_orders.end());
  for (auto const &[x, h] : cyclic_subgroups(g, order)) {
    auto ia = induced_action(v, h);
    if (!(ia.sorted_signature() == want))
      continue;
    auto rc = restricted_cones(ia, "Z" + std::to_string(order));
    auto verdict = axis_closure_check(rc.cones, *rc.subgroup);
    if (verdict.obstructed())
      return CyclicWitness{x, std::move(ia), std::move(rc), std::move(verdict)};
  }
  return std::nullopt;
}

/// Index-2 subgroup of the parent isomorphic to the row group whose induced
/// action has the row's signature.
inline std::optional<RestrictionCert> restriction_certificate(TetExtensionCert const &parent,
                                                              FiniteGroup const &row_group,
                                                              Signature const &sig)
{
  auto const &pg = *parent.group;
  for (auto const &h : index2_subgroups(pg)) {
    if (h.size() != row_group.order())
      continue;
    auto ia = induced_action(parent.boundary, h);
    auto want = sig;
    std::sort(want.cone_orders.begin(), want.cone_orders.end());
    if (!(ia.sorted_signature() == want))
      continue;
    if (!isomorphic_2generated(*subgroup_group(pg, h, "H"), row_group))
      continue;
    auto r = bounds_by_restriction(ParentCertificate{parent}, h, sig);
    if (r)
      return r.value;
  }
  return std::nullopt;
}

} // namespace detail

/// Runs every check for one row of `table`.
inline VerdictRow compute_row(std::vector<ExpectedRow> const &table, std::size_t index)
{
  auto const &e = table.at(index);
  VerdictRow row;
  row.expected = e;
  row.group = atlas_build(e.atlas);
  auto const sig = Signature::parse(e.signature);
  row.genus = rh_genus(sig, row.group->order());
  row.no_handlebody = no_handlebody_rule(sig);
  try {
    row.vector = detail::row_vector(e, row.group);
  } catch (InconsistentGroup const &ex) {
    row.mismatches.push_back(ex.what());
    return row;
  }
  auto const &v = *row.vector;
  row.axis = axis_closure_check(v);

  if (row.axis->obstructed()) {
    row.verdict = Verdict::non_bounding;
    if (!verify_obstruction(cone_data(v), *row.group, row.axis->obstruction()))
      row.mismatches.push_back("obstruction failed independent re-verification");
    if (e.witness) {
      row.witness = detail::find_cyclic_witness(v, e.witness->first, Signature::parse(e.witness->second));
      if (!row.witness)
        row.mismatches.push_back("no obstructed cyclic subgroup of order " + std::to_string(e.witness->first) +
                                 " with induced signature " + Signature::parse(e.witness->second).pretty());
    }
  } else {
    if (!verify_plan(cone_data(v), *row.group, row.axis->plan()))
      row.mismatches.push_back("closure plan failed independent re-verification");
    if (e.tet) {
      row.tet = detail::tet_certificate(e, v, row.notes);
      if (row.tet)
        row.verdict = Verdict::bounds_geometrically;
    }
    if (e.restriction_parent) {
      auto const &pe = table.at(*e.restriction_parent);
      auto pg = atlas_build(pe.atlas);
      std::vector<std::string> parent_notes;
      auto parent = detail::tet_certificate(pe, detail::row_vector(pe, pg), parent_notes);
      if (parent)
        row.restriction = detail::restriction_certificate(*parent, *row.group, sig);
      if (row.restriction && row.verdict == Verdict::inconclusive)
        row.verdict = Verdict::bounds_by_restriction;
      if (!row.restriction)
        row.notes.push_back("no index-2 restriction of " + pe.atlas + " matches");
    }
    if (!row.no_handlebody) {
      auto hb = search_handlebody(v);
      if (hb) {
        row.handlebody = hb.value;
        row.verdict = Verdict::bounds_handlebody;
      } else
        row.notes.push_back("handlebody search: " + hb.failure);
    }
  }
  if (e.index2_restrictions)
    row.index2 = index2_restrictions(v);

  if (row.verdict != e.verdict)
    row.mismatches.push_back("verdict " + to_string(row.verdict) + ", expected " + to_string(e.verdict));
  if (row.no_handlebody != e.no_handlebody)
    row.mismatches.push_back(std::string("handlebody rule ") + (row.no_handlebody ? "applies" : "does not apply") +
                             " unexpectedly");
  return row;
}

/// Computes all rows, optionally on several threads; results keep table order.
inline std::vector<VerdictRow> compute_rows(std::vector<ExpectedRow> const &table, unsigned threads = 1)
{
  std::vector<VerdictRow> rows(table.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < table.size();)
      rows[i] = compute_row(table, i);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(table.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto &t : pool)
    t.join();
  return rows;
}

/// Genus 3 actions of order >= 24, in decreasing order.
inline std::vector<ExpectedRow> genus3_table()
{
  using V = Verdict;
  std::vector<ExpectedRow> t;
  t.push_back({"psl27", "0:2,3,7", V::non_bounding, true, {}, std::pair{7u, "0:7,7,7"}, {}, {}, false,
               "order 84(g-1)"});
  t.push_back({"g96", "0:2,3,8", V::non_bounding, true, {}, std::pair{8u, "0:4,8,8"}, {}, {}, false, ""});
  t.push_back({"g48a", "0:3,3,4", V::non_bounding, true, {}, std::pair{4u, "0:4,4,4,4"}, {}, {}, false, ""});
  t.push_back({"z2xs4", "0:2,4,6", V::bounds_geometrically, true, {"(12)", "(1234)(56)", "(143)(56)"}, {},
               detail::z2xs4_tet(), {}, true, "largest bounding action (annotation, not re-proved)"});
  t.push_back({"g32a", "0:2,4,8", V::non_bounding, true, {}, std::pair{8u, "0:4,8,8"}, {}, {}, false, ""});
  t.push_back({"z2xd285", "0:2,4,8", V::non_bounding, true, {}, std::pair{8u, "0:4,8,8"}, {}, {}, false, ""});
  t.push_back({"sl23", "0:3,3,6", V::non_bounding, true, {}, std::pair{6u, "0:2,3,3,6"}, {}, {}, false, ""});
  t.push_back({"d_2_12_5", "0:2,4,12", V::non_bounding, true, {}, std::pair{12u, "0:2,12,12"}, {}, {}, false, ""});
  t.push_back({"z2xa4", "0:2,6,6", V::bounds_by_restriction, true, {}, {}, {}, std::size_t{3}, false, ""});
  t.push_back({"s4", "0:3,4,4", V::bounds_by_restriction, true, {}, {}, {}, std::size_t{3}, false, ""});
  t.push_back({"s4", "0:2,2,2,3", V::bounds_handlebody, false, {}, {}, {}, std::size_t{3}, false,
               "maximal handlebody order 12(g-1) (annotation, not re-proved)"});
  return t;
}

/// Genus 4: the largest action and the handlebody action of order 12(g-1).
inline std::vector<ExpectedRow> genus4_table()
{
  using V = Verdict;
  std::vector<ExpectedRow> t;
  t.push_back({"s5", "0:2,4,5", V::bounds_geometrically, true, {"(12)", "(2543)", "(12345)"}, {}, detail::s5_tet(),
               {}, true, "largest action in genus 4 (annotation, not re-proved)"});
  t.push_back({"d3xd3", "0:2,2,2,3", V::bounds_handlebody, false, {}, {}, {}, {}, false, "order 12(g-1)"});
  return t;
}

inline std::vector<VerdictRow> reproduce_genus3(unsigned threads = 1)
{ return compute_rows(genus3_table(), threads); }

inline std::vector<VerdictRow> reproduce_genus4(unsigned threads = 1)
{
  auto rows = compute_rows(genus4_table(), threads);
  for (auto &r : rows) {
    if (r.genus != 4)
      r.mismatches.push_back("surface genus " + std::to_string(r.genus) + ", expected 4");
    if (r.verdict == Verdict::bounds_handlebody && r.group->order() != 12 * (r.genus - 1))
      r.mismatches.push_back("handlebody group order is not 12(g-1)");
  }
  return rows;
}

// --- output -----------------------------------------------------------------

inline std::string evidence_summary(VerdictRow const &r)
{
  std::vector<std::string> parts;
  if (r.witness) {
    auto const &w = *r.witness;
    parts.push_back(w.action.sorted_signature().pretty() + " -> Z" + std::to_string(w.action.subgroup.size()) +
                    " blocked at cone " + std::to_string(w.verdict.obstruction().blocking_index));
  }
  if (r.tet) {
    std::string t = "tet";
    for (auto const &type : tet_vertex_groups(r.tet->tet))
      if (type)
        t += " " + type->name();
    parts.push_back(t);
  }
  if (r.restriction)
    parts.push_back("restriction of " + parent_vector(r.restriction->parent).group->name());
  if (r.handlebody)
    parts.push_back("pattern " + r.handlebody->pattern.describe());
  std::string out;
  for (auto const &p : parts)
    out += (out.empty() ? "" : "; ") + p;
  return out;
}

inline std::string format_table(std::vector<VerdictRow> const &rows, unsigned genus)
{
  std::ostringstream os;
  os << "genus " << genus << "\n";
  os << std::left << std::setw(3) << "#" << std::setw(12) << "signature" << std::setw(10) << "group"
     << std::setw(7) << "order" << std::setw(22) << "verdict" << std::setw(14) << "handlebody"
     << "evidence\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto const &r = rows[i];
    std::string hb = r.no_handlebody ? "NoHandlebody" : r.handlebody ? "Handlebody" : "-";
    os << std::left << std::setw(3) << i + 1 << std::setw(12) << Signature::parse(r.expected.signature).pretty()
       << std::setw(10) << r.expected.atlas << std::setw(7) << r.group->order() << std::setw(22)
       << to_string(r.verdict) << std::setw(14) << hb << evidence_summary(r) << "\n";
    for (auto const &n : r.notes)
      os << "     note: " << n << "\n";
    for (auto const &m : r.mismatches)
      os << "     MISMATCH: " << m << "\n";
  }
  return os.str();
}

inline json to_json(VerdictRow const &r)
{
  auto const &g = *r.group;
  json j{{"atlas", r.expected.atlas},
         {"order", g.order()},
         {"signature", r.expected.signature},
         {"surface_genus", r.genus},
         {"verdict", to_string(r.verdict)},
         {"handlebody", r.no_handlebody ? "NoHandlebody" : r.handlebody ? "Handlebody" : "-"},
         {"ok", r.ok()}};
  if (r.vector)
    j["vector"] = to_json(*r.vector);
  if (r.axis)
    j["axis_closure"] = to_json(*r.axis, g);
  if (r.witness) {
    auto const &w = *r.witness;
    auto wj = to_json(w.action);
    wj["generator"] = g.format(w.generator);
    wj["axis_closure"] = to_json(w.verdict, *w.cones.subgroup);
    j["cyclic_witness"] = wj;
  }
  json certs = json::array();
  if (r.tet)
    certs.push_back(to_json(*r.tet));
  if (r.handlebody)
    certs.push_back(to_json(*r.handlebody));
  j["certificates"] = certs;
  if (r.restriction) {
    auto const &rc = *r.restriction;
    auto const &pg = *parent_vector(rc.parent).group;
    j["restriction"] = {{"parent", to_json(rc.parent)},
                        {"subgroup_order", rc.subgroup.size()},
                        {"subgroup", detail::cycles_of(pg, rc.subgroup.sorted())},
                        {"induced_signature", rc.induced.to_string()}};
  }
  if (!r.index2.empty()) {
    json ind = json::array();
    for (auto const &ia : r.index2)
      ind.push_back(to_json(ia));
    j["index2_restrictions"] = ind;
  }
  if (!r.expected.annotation.empty())
    j["annotation"] = r.expected.annotation;
  j["notes"] = r.notes;
  j["mismatches"] = r.mismatches;
  return j;
}

inline json report_json(std::vector<VerdictRow> const &rows, unsigned genus)
{
  json out{{"genus", genus}, {"rows", json::array()}, {"tool_version", tool_version}};
  for (auto const &r : rows)
    out["rows"].push_back(to_json(r));
  return out;
}

} // namespace surfbound

#endif // SURFBOUND_REPORT_HPP
