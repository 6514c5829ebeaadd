#ifndef SURFBOUND_SERIALIZE_HPP
#define SURFBOUND_SERIALIZE_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "atlas.hpp"
#include "bounding.hpp"
#include "error.hpp"
#include "generating_vector.hpp"
#include "handlebody.hpp"
#include "subactions.hpp"
#include "tetrahedron.hpp"

namespace surfbound
{

using nlohmann::json;

namespace detail
{

template<typename T>
T field(json const &j, char const *key)
{
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (json::exception const &e) {
    throw InputError(std::string("bad field '") + key + "': " + e.what());
  }
}

inline std::string edge_name(std::size_t e)
{ return std::to_string(tet_edges[e].first) + std::to_string(tet_edges[e].second); }

inline std::size_t edge_from_name(std::string const &s)
{
  for (std::size_t e = 0; e < 6; ++e)
    if (edge_name(e) == s)
      return e;
  throw InputError("unknown tetrahedron edge '" + s + "'");
}

inline json cycles_of(FiniteGroup const &g, std::vector<Elem> const &xs)
{
  json out = json::array();
  for (Elem x : xs)
    out.push_back(g.format(x));
  return out;
}

inline std::vector<Elem> parse_list(FiniteGroup const &g, json const &j)
{
  if (!j.is_array())
    throw InputError("expected an array of permutations");
  std::vector<Elem> out;
  for (auto const &s : j) {
    if (!s.is_string())
      throw InputError("permutations must be strings in cycle notation");
    out.push_back(g.parse(s.get<std::string>()));
  }
  return out;
}

inline std::string endpoint_name(PatternEndpoint const &p)
{ return p.boundary ? "boundary" : "v" + std::to_string(p.vertex); }

inline PatternEndpoint endpoint_from_name(std::string const &s)
{
  if (s == "boundary")
    return PatternEndpoint::on_boundary();
  if (s.size() > 1 && s[0] == 'v') {
    auto v = parse_suffix(std::string_view(s).substr(1));
    if (v)
      return PatternEndpoint::at(*v);
  }
  throw InputError("bad pattern endpoint '" + s + "'");
}

} // namespace detail

// --- vectors ----------------------------------------------------------------

inline json to_json(GeneratingVector const &v)
{
  auto const &g = *v.group;
  json pairs = json::array();
  for (auto [a, b] : v.hyperbolic_pairs)
    pairs.push_back({g.format(a), g.format(b)});
  return {{"atlas", g.name()},
          {"signature", v.signature.to_string()},
          {"hyperbolic_pairs", pairs},
          {"cones", detail::cycles_of(g, v.cones)}};
}

/// Rebuilds a vector in a group, or in the named atlas group when none is
/// supplied.
inline GeneratingVector vector_from_json(json const &j, GroupPtr group = nullptr)
{
  if (!group)
    group = atlas_build(detail::field<std::string>(j, "atlas"));
  GeneratingVector v{group, Signature::parse(detail::field<std::string>(j, "signature")), {}, {}};
  v.cones = detail::parse_list(*group, j.contains("cones") ? j.at("cones") : json::array());
  if (j.contains("hyperbolic_pairs"))
    for (auto const &p : j.at("hyperbolic_pairs")) {
      auto ab = detail::parse_list(*group, p);
      if (ab.size() != 2)
        throw InputError("hyperbolic pair must have two entries");
      v.hyperbolic_pairs.emplace_back(ab[0], ab[1]);
    }
  if (v.cones.size() != v.signature.cone_count() || v.hyperbolic_pairs.size() != v.signature.genus)
    throw InputError("vector shape does not match its signature");
  return v;
}

// --- axis-closure verdicts --------------------------------------------------

inline json to_json(AxisVerdict const &a, FiniteGroup const &g)
{
  if (a.obstructed()) {
    auto const &o = a.obstruction();
    json diags = json::array();
    for (auto const &d : o.diagnostics) {
      json poly = json::array();
      for (auto t : d.polyhedral_absent)
        poly.push_back(t.name());
      diags.push_back({{"cone", d.index},
                       {"order", d.order},
                       {"partners", d.partners},
                       {"inverting_involution_absent", d.inverting_involution_absent},
                       {"polyhedral_absent", poly}});
    }
    return {{"status", "Obstruction"}, {"blocking_cone", o.blocking_index}, {"diagnostics", diags}};
  }
  auto const &p = a.plan();
  json pairs = json::array(), terms = json::array();
  for (auto const &pr : p.pairs)
    pairs.push_back({{"cones", {pr.first, pr.second}}, {"conjugator", g.format(pr.conjugator)}});
  for (auto const &[i, w] : p.terminations) {
    json t{{"cone", i}};
    switch (w.kind) {
    case TerminationWitness::Kind::unconstrained: t["ending"] = "Unconstrained"; break;
    case TerminationWitness::Kind::dihedral:
      t["ending"] = "Dihedral";
      t["involution"] = g.format(w.involution);
      break;
    case TerminationWitness::Kind::polyhedral:
      t["ending"] = "Polyhedral";
      t["type"] = w.type.name();
      t["subgroup"] = detail::cycles_of(g, w.subgroup);
      break;
    }
    terms.push_back(t);
  }
  return {{"status", "NoObstruction"}, {"pairs", pairs}, {"terminations", terms}};
}

inline AxisVerdict axis_from_json(json const &j, FiniteGroup const &g)
{
  auto const status = detail::field<std::string>(j, "status");
  if (status == "Obstruction") {
    BoundingObstruction o{detail::field<std::size_t>(j, "blocking_cone"), {}};
    for (auto const &d : detail::field<json>(j, "diagnostics")) {
      ConeDiagnostic cd;
      cd.index = detail::field<std::size_t>(d, "cone");
      cd.order = detail::field<unsigned>(d, "order");
      cd.partners = detail::field<std::vector<std::size_t>>(d, "partners");
      cd.inverting_involution_absent = detail::field<bool>(d, "inverting_involution_absent");
      for (auto const &t : detail::field<std::vector<std::string>>(d, "polyhedral_absent"))
        cd.polyhedral_absent.push_back(SphericalType::parse(t));
      o.diagnostics.push_back(std::move(cd));
    }
    return {o};
  }
  if (status != "NoObstruction")
    throw InputError("unknown axis verdict status '" + status + "'");
  ClosurePlan p;
  for (auto const &pr : detail::field<json>(j, "pairs")) {
    auto cones = detail::field<std::vector<std::size_t>>(pr, "cones");
    if (cones.size() != 2)
      throw InputError("a pair names two cones");
    p.pairs.push_back({cones[0], cones[1], g.parse(detail::field<std::string>(pr, "conjugator"))});
  }
  for (auto const &t : detail::field<json>(j, "terminations")) {
    TerminationWitness w;
    auto const ending = detail::field<std::string>(t, "ending");
    if (ending == "Dihedral") {
      w.kind = TerminationWitness::Kind::dihedral;
      w.involution = g.parse(detail::field<std::string>(t, "involution"));
    } else if (ending == "Polyhedral") {
      w.kind = TerminationWitness::Kind::polyhedral;
      w.type = SphericalType::parse(detail::field<std::string>(t, "type"));
      w.subgroup = detail::parse_list(g, detail::field<json>(t, "subgroup"));
    } else if (ending != "Unconstrained")
      throw InputError("unknown axis ending '" + ending + "'");
    p.terminations.emplace_back(detail::field<std::size_t>(t, "cone"), std::move(w));
  }
  return {p};
}

/// Re-checks a serialized verdict against the cone data it claims to cover.
inline bool verify_axis_json(json const &j, std::vector<ConeDatum> const &cones, FiniteGroup const &g)
{
  auto a = axis_from_json(j, g);
  return a.obstructed() ? verify_obstruction(cones, g, a.obstruction()) : verify_plan(cones, g, a.plan());
}

// --- certificates -----------------------------------------------------------

inline json to_json(TetExtensionCert const &c)
{
  auto const &g = *c.group;
  json assignments = json::object(), orders = json::object(), inverted = json::array();
  for (std::size_t e = 0; e < 6; ++e) {
    assignments[detail::edge_name(e)] = g.format(c.images[e]);
    orders[detail::edge_name(e)] = c.tet.edge_orders[e];
    if (c.flip[e])
      inverted.push_back(detail::edge_name(e));
  }
  return {{"kind", "tet"},
          {"atlas", g.name()},
          {"signature", c.boundary.signature.to_string()},
          {"boundary", detail::cycles_of(g, c.boundary.cones)},
          {"assignments", assignments},
          {"convention",
           {{"truncated_vertex", c.tet.truncated},
            {"edge_orders", orders},
            {"relation", "r_ij r_jk = r_ik for faces i<j<k; face i opposite vertex i"},
            {"inverted", inverted},
            {"boundary_rotation", c.boundary_rotation},
            {"boundary_conjugator", g.format(c.boundary_conjugator)}}},
          {"euler", to_string(orb_euler(c.boundary.signature) / 2)}};
}

inline json to_json(HandlebodyCert const &c)
{
  auto const &g = *c.group;
  json vertices = json::array(), edges = json::array(), rotation = json::array();
  for (auto const &v : c.pattern.vertices)
    vertices.push_back(v.name());
  for (auto const &e : c.pattern.edges)
    edges.push_back({{"order", e.order}, {"from", detail::endpoint_name(e.a)}, {"to", detail::endpoint_name(e.b)}});
  for (auto const &r : c.pattern.rotation)
    rotation.push_back({r[0], r[1], r[2]});
  return {{"kind", "handlebody"},
          {"atlas", g.name()},
          {"signature", c.boundary.signature.to_string()},
          {"boundary", detail::cycles_of(g, c.boundary.cones)},
          {"assignments", detail::cycles_of(g, c.edge_images)},
          {"convention",
           {{"vertices", vertices},
            {"edges", edges},
            {"rotation", rotation},
            {"image_direction", "outward from 'from'"}}},
          {"euler", to_string(pattern_euler(c.pattern))}};
}

inline json to_json(ParentCertificate const &p)
{ return std::visit([](auto const &c) { return to_json(c); }, p); }

namespace detail
{

inline GeneratingVector boundary_from_json(json const &j, GroupPtr const &g)
{
  json v{{"signature", field<std::string>(j, "signature")}, {"cones", field<json>(j, "boundary")}};
  return vector_from_json(v, g);
}

inline TruncatedTetrahedron tet_from_json(json const &conv)
{
  TruncatedTetrahedron t;
  t.truncated = field<std::size_t>(conv, "truncated_vertex");
  auto orders = field<json>(conv, "edge_orders");
  if (!orders.is_object() || orders.size() != 6)
    throw InputError("edge_orders must name all six edges");
  for (auto const &[name, n] : orders.items()) {
    if (!n.is_number_unsigned())
      throw InputError("edge order for '" + name + "' must be a positive integer");
    t.edge_orders[edge_from_name(name)] = n.get<unsigned>();
  }
  return t;
}

} // namespace detail

/// Partial or complete tet data: `assignments` may name any subset of the
/// edges. The inversion record is advisory; verification searches it again.
inline Checked<TetExtensionCert> verify_tet_json(json const &j)
{
  if (detail::field<std::string>(j, "kind") != "tet")
    throw InputError("not a tet certificate");
  auto g = atlas_build(detail::field<std::string>(j, "atlas"));
  auto boundary = detail::boundary_from_json(j, g);
  auto tet = detail::tet_from_json(detail::field<json>(j, "convention"));
  EdgeAssignment partial;
  auto const assignments = detail::field<json>(j, "assignments");
  if (!assignments.is_object())
    throw InputError("assignments must map edge names to permutations");
  for (auto const &[name, cyc] : assignments.items()) {
    if (!cyc.is_string())
      throw InputError("image of edge '" + name + "' must be a permutation string");
    partial.emplace_back(detail::edge_from_name(name), g->parse(cyc.get<std::string>()));
  }
  auto res = verify_tet_extension(tet, boundary, partial);
  if (res && j.contains("euler") &&
      parse_rational(detail::field<std::string>(j, "euler")) != orb_euler(boundary.signature) / 2)
    return Checked<TetExtensionCert>::fail("recorded Euler characteristic is wrong");
  return res;
}

inline HandlebodyCert handlebody_from_json(json const &j)
{
  if (detail::field<std::string>(j, "kind") != "handlebody")
    throw InputError("not a handlebody certificate");
  auto g = atlas_build(detail::field<std::string>(j, "atlas"));
  HandlebodyCert c{{}, g, {}, detail::boundary_from_json(j, g)};
  auto conv = detail::field<json>(j, "convention");
  for (auto const &v : detail::field<std::vector<std::string>>(conv, "vertices"))
    c.pattern.vertices.push_back(SphericalType::parse(v));
  for (auto const &e : detail::field<json>(conv, "edges"))
    c.pattern.edges.push_back({detail::field<unsigned>(e, "order"),
                               detail::endpoint_from_name(detail::field<std::string>(e, "from")),
                               detail::endpoint_from_name(detail::field<std::string>(e, "to"))});
  for (auto const &r : detail::field<std::vector<std::vector<std::size_t>>>(conv, "rotation")) {
    if (r.size() != 3)
      throw InputError("rotation entries list three edges");
    c.pattern.rotation.push_back({r[0], r[1], r[2]});
  }
  c.edge_images = detail::parse_list(*g, detail::field<json>(j, "assignments"));
  return c;
}

/// Verifies any serialized certificate from its JSON alone. Throws
/// InputError on malformed input.
inline KernelCheck verify_certificate_json(json const &j)
{
  auto const kind = detail::field<std::string>(j, "kind");
  if (kind == "tet") {
    auto r = verify_tet_json(j);
    return r ? KernelCheck{} : KernelCheck{false, r.failure};
  }
  if (kind == "handlebody") {
    auto c = handlebody_from_json(j);
    auto k = verify_handlebody_cert(c);
    if (k && j.contains("euler") && parse_rational(detail::field<std::string>(j, "euler")) != pattern_euler(c.pattern))
      return {false, "recorded Euler characteristic is wrong"};
    return k;
  }
  throw InputError("unknown certificate kind '" + kind + "'");
}

// --- induced actions --------------------------------------------------------

inline json to_json(InducedAction const &ia)
{
  auto const &g = *ia.group;
  json cones = json::array();
  for (auto const &c : ia.cones)
    cones.push_back({{"source_cone", c.source_index},
                     {"coset_rep", g.format(c.coset_rep)},
                     {"order", c.order},
                     {"generator", g.format(c.generator)}});
  return {{"subgroup_order", ia.subgroup.size()},
          {"signature", ia.signature().to_string()},
          {"surface_genus", ia.surface_genus},
          {"cones", cones}};
}

} // namespace surfbound

#endif // SURFBOUND_SERIALIZE_HPP
