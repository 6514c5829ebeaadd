#ifndef SURFBOUND_HANDLEBODY_HPP
#define SURFBOUND_HANDLEBODY_HPP

// A handlebody pattern is a ball containing a forest of singular edges whose
// trivalent vertices carry spherical stabilisers. Its orbifold group is the
// free product of the trees of groups, so a surjection onto G that is
// injective on every vertex and edge group has a free kernel, and the
// corresponding cover is a handlebody bounded by the cover of the boundary.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "generating_vector.hpp"
#include "group.hpp"
#include "search.hpp"
#include "signature.hpp"
#include "subgroups.hpp"
#include "tetrahedron.hpp"

namespace surfbound
{

struct PatternEndpoint
{
  bool boundary = true;
  std::size_t vertex = 0; ///< meaningful only when !boundary

  static PatternEndpoint on_boundary()
  { return {true, 0}; }
  static PatternEndpoint at(std::size_t v)
  { return {false, v}; }

  friend bool operator==(PatternEndpoint const &, PatternEndpoint const &) = default;
};

struct PatternEdge
{
  unsigned order = 2;
  PatternEndpoint a, b;
};

struct HandlebodyPattern
{
  std::vector<SphericalType> vertices;
  std::vector<PatternEdge> edges;
  /// Cyclic order of the incident edges at each vertex.
  std::vector<std::array<std::size_t, 3>> rotation;

  std::size_t internal_endpoints(std::size_t e) const
  { return std::size_t{!edges[e].a.boundary} + std::size_t{!edges[e].b.boundary}; }

  std::string describe() const
  {
    std::string out;
    for (std::size_t v = 0; v < vertices.size(); ++v)
      out += (v ? " " : "") + vertices[v].name();
    std::size_t arcs = 0;
    for (std::size_t e = 0; e < edges.size(); ++e)
      arcs += internal_endpoints(e) == 0;
    if (arcs)
      out += (out.empty() ? "" : " + ") + std::to_string(arcs) + " arc" + (arcs > 1 ? "s" : "");
    return out;
  }
};

/// 1 - sum_v (1 - 1/|G_v|) - sum_e (1 - 1/n_e)(1 - #internal endpoints of e).
inline Rational pattern_euler(HandlebodyPattern const &p)
{
  Rational chi = 1;
  for (auto const &v : p.vertices)
    chi -= 1 - Rational(1, static_cast<std::int64_t>(v.group_order()));
  for (std::size_t e = 0; e < p.edges.size(); ++e)
    chi -= (1 - Rational(1, p.edges[e].order)) * (1 - static_cast<std::int64_t>(p.internal_endpoints(e)));
  return chi;
}

/// Triangle signatures never bound handlebodies: the pattern would be a
/// single vertex, whose group is finite.
inline bool no_handlebody_rule(Signature const &s)
{ return s.is_triangle(); }

struct HandlebodyCert
{
  HandlebodyPattern pattern;
  GroupPtr group;
  std::vector<Elem> edge_images; ///< image of edge e seen outward from endpoint a
  GeneratingVector boundary;     ///< the action being extended
};

namespace detail
{

inline Elem outward(HandlebodyCert const &c, std::size_t e, std::size_t v)
{
  auto const &edge = c.pattern.edges[e];
  bool const from_a = !edge.a.boundary && edge.a.vertex == v;
  return from_a ? c.edge_images[e] : c.group->inv(c.edge_images[e]);
}

inline std::optional<PatternEndpoint> far_end(PatternEdge const &edge, std::size_t v)
{
  if (!edge.a.boundary && edge.a.vertex == v)
    return edge.b;
  if (!edge.b.boundary && edge.b.vertex == v)
    return edge.a;
  return std::nullopt;
}

/// Checks shape: trivalent vertices matching their spherical types,
/// consistent rotations, no cycles.
inline KernelCheck check_pattern_shape(HandlebodyPattern const &p)
{
  std::size_t const nv = p.vertices.size();
  if (p.rotation.size() != nv)
    return {false, "one rotation per vertex required"};
  std::vector<std::size_t> degree(nv, 0);
  for (auto const &e : p.edges) {
    if (e.order < 2)
      return {false, "edge orders must be >= 2"};
    for (auto const *end : {&e.a, &e.b})
      if (!end->boundary) {
        if (end->vertex >= nv)
          return {false, "edge endpoint names a missing vertex"};
        ++degree[end->vertex];
      }
    if (!e.a.boundary && !e.b.boundary && e.a.vertex == e.b.vertex)
      return {false, "loop edge"};
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (degree[v] != 3)
      return {false, "vertex " + std::to_string(v) + " is not trivalent"};
    auto rot = p.rotation[v];
    std::array<unsigned, 3> orders{};
    for (std::size_t k = 0; k < 3; ++k) {
      if (rot[k] >= p.edges.size() || !far_end(p.edges[rot[k]], v))
        return {false, "rotation at vertex " + std::to_string(v) + " lists a non-incident edge"};
      orders[k] = p.edges[rot[k]].order;
    }
    if (rot[0] == rot[1] || rot[1] == rot[2] || rot[0] == rot[2])
      return {false, "rotation at vertex " + std::to_string(v) + " repeats an edge"};
    auto type = SphericalType::from_triple(orders);
    if (!type || !(*type == p.vertices[v]))
      return {false, "vertex " + std::to_string(v) + " edge orders do not match " + p.vertices[v].name()};
  }
  // forest: edges between vertices must not close a cycle
  std::vector<std::size_t> parent(nv);
  for (std::size_t v = 0; v < nv; ++v)
    parent[v] = v;
  auto root = [&](std::size_t v) {
    while (parent[v] != v)
      v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto const &e : p.edges)
    if (!e.a.boundary && !e.b.boundary) {
      auto ra = root(e.a.vertex), rb = root(e.b.vertex);
      if (ra == rb)
        return {false, "singular set contains a cycle"};
      parent[ra] = rb;
    }
  return {};
}

inline void walk_tree(HandlebodyCert const &c, std::size_t v, std::optional<std::size_t> incoming,
                      std::vector<Elem> &out)
{
  auto const &rot = c.pattern.rotation[v];
  std::size_t start = 0;
  if (incoming)
    start = static_cast<std::size_t>(std::find(rot.begin(), rot.end(), *incoming) - rot.begin()) + 1;
  std::size_t const count = incoming ? 2 : 3;
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t const e = rot[(start + k) % 3];
    auto other = far_end(c.pattern.edges[e], v);
    if (other->boundary)
      out.push_back(outward(c, e, v));
    else
      walk_tree(c, other->vertex, e, out);
  }
}

} // namespace detail

/// Boundary generators in tree-walk order: components by lowest edge index,
/// each tree walked from its lowest vertex following the rotations; an arc
/// contributes (g^-1, g).
inline std::vector<Elem> pattern_boundary(HandlebodyCert const &c)
{
  auto const &p = c.pattern;
  std::vector<Elem> out;
  std::vector<bool> seen_vertex(p.vertices.size(), false);
  std::vector<std::size_t> comp_root(p.vertices.size());
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    comp_root[v] = v;
  // lowest vertex of each tree
  for (bool changed = true; changed;) {
    changed = false;
    for (auto const &e : p.edges)
      if (!e.a.boundary && !e.b.boundary) {
        auto m = std::min(comp_root[e.a.vertex], comp_root[e.b.vertex]);
        if (comp_root[e.a.vertex] != m || comp_root[e.b.vertex] != m) {
          comp_root[e.a.vertex] = comp_root[e.b.vertex] = m;
          changed = true;
        }
      }
  }
  for (std::size_t e = 0; e < p.edges.size(); ++e) {
    auto const &edge = p.edges[e];
    if (edge.a.boundary && edge.b.boundary) {
      out.push_back(c.group->inv(c.edge_images[e]));
      out.push_back(c.edge_images[e]);
      continue;
    }
    std::size_t const v = comp_root[edge.a.boundary ? edge.b.vertex : edge.a.vertex];
    if (seen_vertex[v])
      continue;
    for (std::size_t w = 0; w < p.vertices.size(); ++w)
      if (comp_root[w] == v)
        seen_vertex[w] = true;
    detail::walk_tree(c, v, std::nullopt, out);
  }
  return out;
}

/// Checks a handlebody certificate from its data alone. The orbit cap bounds
/// the braid-orbit search used to match the boundary vector.
inline KernelCheck verify_handlebody_cert(HandlebodyCert const &c, std::size_t orbit_cap = default_orbit_cap)
{
  auto const &g = *c.group;
  auto const &sig = c.boundary.signature;
  if (no_handlebody_rule(sig))
    return {false, "triangle signatures admit no handlebody extension"};
  if (sig.genus != 0)
    return {false, "quotient genus must be 0"};
  if (c.boundary.group != c.group)
    return {false, "boundary vector lives in a different group"};
  if (auto k = is_surface_kernel(c.boundary); !k)
    return {false, "boundary vector: " + k.reason};
  if (auto k = detail::check_pattern_shape(c.pattern); !k)
    return k;
  if (c.edge_images.size() != c.pattern.edges.size())
    return {false, "one image per edge required"};

  for (std::size_t e = 0; e < c.edge_images.size(); ++e)
    if (g.element_order(c.edge_images[e]) != c.pattern.edges[e].order)
      return {false, "edge " + std::to_string(e) + " image " + g.format(c.edge_images[e]) + " has order " +
                       std::to_string(g.element_order(c.edge_images[e])) + ", expected " +
                       std::to_string(c.pattern.edges[e].order)};
  for (std::size_t v = 0; v < c.pattern.vertices.size(); ++v) {
    auto const &rot = c.pattern.rotation[v];
    Elem const x = detail::outward(c, rot[0], v), y = detail::outward(c, rot[1], v),
               z = detail::outward(c, rot[2], v);
    if (g.mul({x, y, z}) != g.identity())
      return {false, "vertex relation fails at vertex " + std::to_string(v)};
    auto const n = g.generated_order({x, y});
    if (n != c.pattern.vertices[v].group_order())
      return {false, "vertex " + std::to_string(v) + " group has order " + std::to_string(n) + ", expected " +
                       std::to_string(c.pattern.vertices[v].group_order())};
  }
  if (!g.generates(c.edge_images))
    return {false, "edge images do not generate the group"};

  Rational const want = orb_euler(sig) / 2;
  if (pattern_euler(c.pattern) != want)
    return {false, "pattern Euler characteristic " + to_string(pattern_euler(c.pattern)) + " != " +
                     to_string(want)};

  auto leaves = pattern_boundary(c);
  if (leaves.size() != c.boundary.cones.size())
    return {false, "pattern has " + std::to_string(leaves.size()) + " boundary points, signature has " +
                     std::to_string(c.boundary.cones.size())};
  GeneratingVector walked = c.boundary;
  walked.cones = leaves;
  for (std::size_t k = 0; k < leaves.size(); ++k)
    walked.signature.cone_orders[k] = g.element_order(leaves[k]);
  auto target = detail::state_key(c.boundary);
  auto orbit = braid_orbit(walked, true, orbit_cap);
  for (auto const &w : orbit.states)
    if (detail::state_key(w) == target)
      return {};
  return {false, orbit.complete ? "pattern boundary is not braid-equivalent to the action"
                                : "braid orbit exceeded the cap before matching"};
}

namespace detail
{

/// One component of a pattern with its boundary orders in leaf order.
struct ComponentShape
{
  enum class Kind { arc, tripod, two_vertex };
  Kind kind;
  std::vector<unsigned> leaves; ///< arc: {n}; tripod: 3; two_vertex: 4
  unsigned inner = 0;           ///< internal edge order (two_vertex)
};

inline std::size_t shape_vertices(ComponentShape const &s)
{ return s.kind == ComponentShape::Kind::arc ? 0 : s.kind == ComponentShape::Kind::tripod ? 1 : 2; }

inline std::size_t shape_edges(ComponentShape const &s)
{ return s.kind == ComponentShape::Kind::arc ? 1 : s.kind == ComponentShape::Kind::tripod ? 3 : 5; }

/// All ways to cover the multiset of cone orders by components using at most
/// max_vertices internal vertices and max_edges edges.
inline void enumerate_shapes(std::vector<unsigned> remaining, std::vector<ComponentShape> &cur,
                             std::size_t vertices, std::size_t edges, std::size_t max_vertices,
                             std::size_t max_edges, std::vector<unsigned> const &inner_orders,
                             std::vector<std::vector<ComponentShape>> &out)
{
  if (remaining.empty()) {
    out.push_back(cur);
    return;
  }
  // the first remaining order is always consumed by the next component
  unsigned const first = remaining.front();
  auto without = [&](std::vector<std::size_t> idx) {
    std::vector<unsigned> rest;
    for (std::size_t k = 0; k < remaining.size(); ++k)
      if (std::find(idx.begin(), idx.end(), k) == idx.end())
        rest.push_back(remaining[k]);
    return rest;
  };
  auto recurse = [&](ComponentShape s, std::vector<std::size_t> idx) {
    std::size_t const nv = vertices + shape_vertices(s), ne = edges + shape_edges(s);
    if (nv > max_vertices || ne > max_edges)
      return;
    cur.push_back(std::move(s));
    enumerate_shapes(without(std::move(idx)), cur, nv, ne, max_vertices, max_edges, inner_orders, out);
    cur.pop_back();
  };
  std::size_t const r = remaining.size();
  for (std::size_t i = 1; i < r; ++i)
    if (remaining[i] == first && (i == 1 || remaining[i - 1] != first))
      recurse({ComponentShape::Kind::arc, {first}, 0}, {0, i});
  for (std::size_t i = 1; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (SphericalType::from_triple({first, remaining[i], remaining[j]}))
        recurse({ComponentShape::Kind::tripod, {first, remaining[i], remaining[j]}, 0}, {0, i, j});
  for (std::size_t i = 1; i < r; ++i)
    for (std::size_t j = 1; j < r; ++j)
      for (std::size_t k = j + 1; k < r; ++k) {
        if (j == i || k == i)
          continue;
        for (unsigned e : inner_orders)
          if (SphericalType::from_triple({first, remaining[i], e}) &&
              SphericalType::from_triple({e, remaining[j], remaining[k]}))
            recurse({ComponentShape::Kind::two_vertex, {first, remaining[i], remaining[j], remaining[k]}, e},
                    {0, i, j, k});
      }
}

/// Images for one component: edge images in component edge order.
using ComponentImages = std::vector<Elem>;

inline std::vector<ComponentImages> component_candidates(FiniteGroup const &g, ComponentShape const &s,
                                                         bool first_component)
{
  std::vector<ComponentImages> out;
  auto of_order = [&](unsigned n) {
    std::vector<Elem> xs;
    auto pool = first_component ? g.class_representatives() : g.elements();
    for (Elem x : pool)
      if (g.element_order(x) == n)
        xs.push_back(x);
    return xs;
  };
  auto all_of_order = [&](unsigned n) {
    std::vector<Elem> xs;
    for (Elem x : g.elements())
      if (g.element_order(x) == n)
        xs.push_back(x);
    return xs;
  };
  auto vertex_ok = [&](Elem x, Elem y, std::array<unsigned, 3> orders) {
    auto type = SphericalType::from_triple(orders);
    return type && g.generated_order({x, y}) == type->group_order();
  };
  switch (s.kind) {
  case ComponentShape::Kind::arc:
    for (Elem x : of_order(s.leaves[0]))
      out.push_back({x});
    break;
  case ComponentShape::Kind::tripod: {
    // both orientations: leaf orders in the given order and with the last two swapped
    std::vector<std::array<unsigned, 3>> perms{{s.leaves[0], s.leaves[1], s.leaves[2]}};
    if (s.leaves[1] != s.leaves[2])
      perms.push_back({s.leaves[0], s.leaves[2], s.leaves[1]});
    for (auto o : perms)
      for (Elem x : of_order(o[0]))
        for (Elem y : all_of_order(o[1])) {
          Elem z = g.inv(g.mul(x, y));
          if (g.element_order(z) == o[2] && vertex_ok(x, y, o))
            out.push_back({x, y, z});
        }
    break;
  }
  case ComponentShape::Kind::two_vertex: {
    unsigned const e = s.inner;
    std::vector<std::array<unsigned, 2>> left{{s.leaves[0], s.leaves[1]}}, right{{s.leaves[2], s.leaves[3]}};
    if (s.leaves[0] != s.leaves[1])
      left.push_back({s.leaves[1], s.leaves[0]});
    if (s.leaves[2] != s.leaves[3])
      right.push_back({s.leaves[3], s.leaves[2]});
    for (auto lo : left)
      for (Elem x : of_order(lo[0]))
        for (Elem y : all_of_order(lo[1])) {
          Elem const eu = g.inv(g.mul(x, y)); // outward from the first vertex
          if (g.element_order(eu) != e || !vertex_ok(x, y, {lo[0], lo[1], e}))
            continue;
          Elem const ev = g.inv(eu);
          for (auto ro : right)
            for (Elem z : all_of_order(ro[0])) {
              Elem const w = g.inv(g.mul(ev, z));
              if (g.element_order(w) == ro[1] && vertex_ok(ev, z, {e, ro[0], ro[1]}))
                out.push_back({x, y, eu, z, w});
            }
        }
    break;
  }
  }
  return out;
}

/// Appends the component's vertices and edges to the pattern.
inline void append_component(HandlebodyPattern &p, std::vector<unsigned> const &edge_orders,
                             ComponentShape::Kind kind)
{
  auto const B = PatternEndpoint::on_boundary();
  std::size_t const e0 = p.edges.size(), v0 = p.vertices.size();
  switch (kind) {
  case ComponentShape::Kind::arc:
    p.edges.push_back({edge_orders[0], B, B});
    break;
  case ComponentShape::Kind::tripod:
    for (std::size_t k = 0; k < 3; ++k)
      p.edges.push_back({edge_orders[k], PatternEndpoint::at(v0), B});
    p.vertices.push_back(*SphericalType::from_triple({edge_orders[0], edge_orders[1], edge_orders[2]}));
    p.rotation.push_back({e0, e0 + 1, e0 + 2});
    break;
  case ComponentShape::Kind::two_vertex:
    p.edges.push_back({edge_orders[0], PatternEndpoint::at(v0), B});
    p.edges.push_back({edge_orders[1], PatternEndpoint::at(v0), B});
    p.edges.push_back({edge_orders[2], PatternEndpoint::at(v0), PatternEndpoint::at(v0 + 1)});
    p.edges.push_back({edge_orders[3], PatternEndpoint::at(v0 + 1), B});
    p.edges.push_back({edge_orders[4], PatternEndpoint::at(v0 + 1), B});
    p.vertices.push_back(*SphericalType::from_triple({edge_orders[0], edge_orders[1], edge_orders[2]}));
    p.vertices.push_back(*SphericalType::from_triple({edge_orders[2], edge_orders[3], edge_orders[4]}));
    p.rotation.push_back({e0, e0 + 1, e0 + 2});
    p.rotation.push_back({e0 + 2, e0 + 3, e0 + 4});
    break;
  }
}

} // namespace detail

struct HandlebodySearchOptions
{
  std::size_t max_vertices = 2;
  std::size_t max_edges = 6;
  std::size_t orbit_cap = default_orbit_cap;
};

/// Searches patterns (arcs, tripods and two-vertex trees within the bounds)
/// and edge images whose boundary is braid-equivalent to v.
inline Checked<HandlebodyCert> search_handlebody(GeneratingVector const &v, HandlebodySearchOptions const &opts = {})
{
  using Result = Checked<HandlebodyCert>;
  if (no_handlebody_rule(v.signature))
    return Result::fail("triangle signatures admit no handlebody extension");
  if (v.signature.genus != 0)
    return Result::fail("quotient genus must be 0");
  if (auto k = is_surface_kernel(v); !k)
    return Result::fail("not a surface-kernel vector: " + k.reason);
  auto const &g = *v.group;

  auto orbit = braid_orbit(v, true, opts.orbit_cap);
  detail::StateSet targets;
  for (auto const &w : orbit.states)
    targets.insert(detail::state_key(w));

  std::vector<unsigned> inner_orders;
  for (unsigned n = 2; n <= g.order(); ++n)
    for (Elem x : g.elements())
      if (g.element_order(x) == n) {
        inner_orders.push_back(n);
        break;
      }

  std::vector<std::vector<detail::ComponentShape>> shapes;
  std::vector<detail::ComponentShape> cur;
  auto orders = v.signature.cone_orders;
  std::sort(orders.begin(), orders.end());
  detail::enumerate_shapes(orders, cur, 0, 0, opts.max_vertices, opts.max_edges, inner_orders, shapes);

  for (auto const &shape : shapes) {
    std::vector<std::vector<detail::ComponentImages>> cands;
    for (std::size_t k = 0; k < shape.size(); ++k)
      cands.push_back(detail::component_candidates(g, shape[k], k == 0));

    std::vector<std::size_t> pick(shape.size(), 0);
    bool empty = std::any_of(cands.begin(), cands.end(), [](auto const &c) { return c.empty(); });
    while (!empty) {
      HandlebodyCert cert{{}, v.group, {}, v};
      for (std::size_t k = 0; k < shape.size(); ++k) {
        auto const &imgs = cands[k][pick[k]];
        std::vector<unsigned> eo;
        for (Elem x : imgs)
          eo.push_back(static_cast<unsigned>(g.element_order(x)));
        detail::append_component(cert.pattern, eo, shape[k].kind);
        cert.edge_images.insert(cert.edge_images.end(), imgs.begin(), imgs.end());
      }
      if (g.generates(cert.edge_images)) {
        GeneratingVector walked = v;
        walked.cones = pattern_boundary(cert);
        for (std::size_t k = 0; k < walked.cones.size(); ++k)
          walked.signature.cone_orders[k] = g.element_order(walked.cones[k]);
        if (targets.contains(detail::state_key(walked)) && verify_handlebody_cert(cert, opts.orbit_cap))
          return {cert, {}};
      }
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == cands[k].size())
        pick[k++] = 0;
      if (k == pick.size())
        break;
    }
  }
  return Result::fail(orbit.complete ? "no handlebody pattern within the bounds"
                                     : "no pattern found; braid orbit was truncated at the cap");
}

} // namespace surfbound

#endif // SURFBOUND_HANDLEBODY_HPP
