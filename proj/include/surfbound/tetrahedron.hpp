#ifndef SURFBOUND_TETRAHEDRON_HPP
#define SURFBOUND_TETRAHEDRON_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "generating_vector.hpp"
#include "group.hpp"
#include "subgroups.hpp"

namespace surfbound
{

/// Compact result type: a value, or the reason there is none.
template<typename T>
struct Checked
{
  std::optional<T> value;
  std::string failure;

  static Checked fail(std::string why)
  { return {std::nullopt, std::move(why)}; }

  explicit operator bool() const
  { return value.has_value(); }
};

/// Edge (a, b) of the tetrahedron, a < b. Edges are numbered
/// 01, 02, 03, 12, 13, 23.
inline constexpr std::array<std::pair<std::size_t, std::size_t>, 6> tet_edges{
  {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline std::size_t tet_edge_index(std::size_t a, std::size_t b)
{
  if (a > b)
    std::swap(a, b);
  for (std::size_t e = 0; e < tet_edges.size(); ++e)
    if (tet_edges[e] == std::pair{a, b})
      return e;
  throw InputError("not a tetrahedron edge: " + std::to_string(a) + "," + std::to_string(b));
}

/// Face i is opposite vertex i, so edge (a, b) lies on the two faces not
/// indexed by a or b.
inline std::pair<std::size_t, std::size_t> tet_edge_faces(std::size_t e)
{
  auto [a, b] = tet_edges[e];
  std::array<std::size_t, 2> f{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i)
    if (i != a && i != b)
      f[k++] = i;
  return {f[0], f[1]};
}

inline std::size_t tet_face_edge(std::size_t i, std::size_t j)
{
  for (std::size_t e = 0; e < 6; ++e) {
    auto [f, g] = tet_edge_faces(e);
    if ((f == i && g == j) || (f == j && g == i))
      return e;
  }
  throw InputError("faces must differ");
}

/// Tetrahedron with dihedral angles pi/n_e, one vertex truncated by an
/// orthogonal plane.
struct TruncatedTetrahedron
{
  std::size_t truncated = 0;
  std::array<unsigned, 6> edge_orders{2, 2, 2, 2, 2, 2};

  unsigned order(std::size_t a, std::size_t b) const
  { return edge_orders[tet_edge_index(a, b)]; }

  /// Edges at vertex v, ordered by the other endpoint.
  std::array<std::size_t, 3> vertex_edges(std::size_t v) const
  {
    std::array<std::size_t, 3> out{};
    std::size_t k = 0;
    for (std::size_t w = 0; w < 4; ++w)
      if (w != v)
        out[k++] = tet_edge_index(v, w);
    return out;
  }

  std::array<unsigned, 3> vertex_triple(std::size_t v) const
  {
    auto es = vertex_edges(v);
    return {edge_orders[es[0]], edge_orders[es[1]], edge_orders[es[2]]};
  }
};

namespace detail
{

inline Rational triple_excess(std::array<unsigned, 3> t)
{ return Rational(1, t[0]) + Rational(1, t[1]) + Rational(1, t[2]) - 1; }

} // namespace detail

/// Incident edge-order triple of every vertex. Throws InputError when an
/// internal vertex is not spherical or the truncated vertex is not
/// hyperbolic.
inline std::array<std::array<unsigned, 3>, 4> tet_vertex_types(TruncatedTetrahedron const &t)
{
  if (t.truncated > 3)
    throw InputError("truncated vertex index out of range");
  for (unsigned n : t.edge_orders)
    if (n < 2)
      throw InputError("edge orders must be >= 2");
  std::array<std::array<unsigned, 3>, 4> out{};
  for (std::size_t v = 0; v < 4; ++v) {
    out[v] = t.vertex_triple(v);
    auto const excess = detail::triple_excess(out[v]);
    if (v == t.truncated && excess >= 0)
      throw InputError("truncated vertex " + std::to_string(v) + " is not hyperbolic");
    if (v != t.truncated && excess <= 0)
      throw InputError("vertex " + std::to_string(v) + " is not spherical");
  }
  return out;
}

/// Spherical type of each internal vertex (nullopt at the truncated one).
inline std::array<std::optional<SphericalType>, 4> tet_vertex_groups(TruncatedTetrahedron const &t)
{
  auto triples = tet_vertex_types(t);
  std::array<std::optional<SphericalType>, 4> out;
  for (std::size_t v = 0; v < 4; ++v)
    if (v != t.truncated)
      out[v] = SphericalType::from_triple(triples[v]);
  return out;
}

// --- Gram matrix ----------------------------------------------------------

template<std::size_t N>
using SymMatrix = std::array<std::array<double, N>, N>;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
template<std::size_t N>
std::array<double, N> symmetric_eigenvalues(SymMatrix<N> a)
{
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q)
        off += a[p][q] * a[p][q];
    if (off < 1e-30)
      break;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) {
        if (std::abs(a[p][q]) < 1e-300)
          continue;
        double const theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double const t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double const c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < N; ++k) {
          double const akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < N; ++k) {
          double const apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::array<double, N> ev{};
  for (std::size_t i = 0; i < N; ++i)
    ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Gram matrix of the face normals: 1 on the diagonal, -cos(pi/n_e) for the
/// two faces meeting along edge e.
inline SymMatrix<4> gram_matrix(TruncatedTetrahedron const &t)
{
  SymMatrix<4> g{};
  for (std::size_t i = 0; i < 4; ++i)
    g[i][i] = 1;
  for (std::size_t e = 0; e < 6; ++e) {
    auto [i, j] = tet_edge_faces(e);
    g[i][j] = g[j][i] = -std::cos(std::numbers::pi / t.edge_orders[e]);
  }
  return g;
}

/// Principal 3x3 block of the faces through vertex v (all faces but v).
inline SymMatrix<3> vertex_block(SymMatrix<4> const &g, std::size_t v)
{
  SymMatrix<3> b{};
  std::array<std::size_t, 3> idx{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i)
    if (i != v)
      idx[k++] = i;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      b[r][c] = g[idx[r]][idx[c]];
  return b;
}

struct GramDiagnostic
{
  bool accepted = false;
  std::array<double, 4> eigenvalues{};
  std::array<std::array<double, 3>, 4> vertex_eigenvalues{};
  std::string reason;
};

/// Accepts iff the Gram matrix has signature (3,1), the block at the
/// truncated vertex is indefinite (the vertex lies beyond the absolute) and
/// the blocks at the other vertices are positive definite (finite vertices).
/// Throws NumericalError when a 4x4 eigenvalue is within tol of zero.
inline GramDiagnostic gram_check(TruncatedTetrahedron const &t, double tol = 1e-9)
{
  if (!(tol > 0))
    throw InputError("tolerance must be positive");
  GramDiagnostic d;
  auto const g = gram_matrix(t);
  d.eigenvalues = symmetric_eigenvalues<4>(g);
  int pos = 0, neg = 0;
  for (double ev : d.eigenvalues) {
    if (std::abs(ev) <= tol)
      throw NumericalError("Gram eigenvalue " + std::to_string(ev) + " within tolerance of zero");
    (ev > 0 ? pos : neg)++;
  }
  for (std::size_t v = 0; v < 4; ++v)
    d.vertex_eigenvalues[v] = symmetric_eigenvalues<3>(vertex_block(g, v));

  if (pos != 3 || neg != 1) {
    d.reason = "signature (" + std::to_string(pos) + "," + std::to_string(neg) + "), expected (3,1)";
    return d;
  }
  auto const &tv = d.vertex_eigenvalues[t.truncated];
  if (!(tv.front() < -tol && tv.back() > tol)) {
    d.reason = "block at truncated vertex is not indefinite";
    return d;
  }
  for (std::size_t v = 0; v < 4; ++v)
    if (v != t.truncated && !(d.vertex_eigenvalues[v].front() > tol)) {
      d.reason = "block at vertex " + std::to_string(v) + " is not positive definite";
      return d;
    }
  d.accepted = true;
  return d;
}

// --- extension certificates -----------------------------------------------

/// A surjection from the rotation group of the truncated tetrahedron onto G.
///
/// images[e] is the image of the rotation R_i R_j about edge e, where faces
/// i < j meet along e. At the vertex whose faces are i < j < k the relation
/// r_ij r_jk r_ik^-1 = 1 holds. flip[e] records whether the image supplied
/// for e was inverted to fit this convention.
struct TetExtensionCert
{
  TruncatedTetrahedron tet;
  GroupPtr group;
  std::array<Elem, 6> images{};
  std::array<bool, 6> flip{};
  GeneratingVector boundary;
  std::size_t boundary_rotation = 0; ///< cyclic shift of the truncated-vertex triple
  Elem boundary_conjugator;          ///< g with g t_{k+rot} g^-1 = c_k
};

namespace detail
{

/// (r_ij, r_jk, r_ik) edges for the vertex with faces i < j < k.
inline std::array<std::size_t, 3> vertex_relation_edges(std::size_t v)
{
  std::array<std::size_t, 3> f{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i)
    if (i != v)
      f[k++] = i;
  return {tet_face_edge(f[0], f[1]), tet_face_edge(f[1], f[2]), tet_face_edge(f[0], f[2])};
}

/// Fills unknown edges from vertex relations with two known edges.
inline void propagate(FiniteGroup const &g, std::array<std::optional<Elem>, 6> &img)
{
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < 4; ++v) {
      auto [ab, bc, ac] = vertex_relation_edges(v);
      int unknown = !img[ab] + !img[bc] + !img[ac];
      if (unknown != 1)
        continue;
      // r_ab r_bc = r_ac
      if (!img[ab])
        img[ab] = g.mul(*img[ac], g.inv(*img[bc]));
      else if (!img[bc])
        img[bc] = g.mul(g.inv(*img[ab]), *img[ac]);
      else
        img[ac] = g.mul(*img[ab], *img[bc]);
      changed = true;
    }
  }
}

inline std::array<Elem, 3> boundary_triple(TetExtensionCert const &c)
{
  auto [ab, bc, ac] = vertex_relation_edges(c.tet.truncated);
  auto const &g = *c.group;
  return {c.images[ab], c.images[bc], g.inv(c.images[ac])};
}

inline bool match_boundary(TetExtensionCert &c)
{
  auto const &g = *c.group;
  auto const t = boundary_triple(c);
  auto const &cones = c.boundary.cones;
  if (cones.size() != 3)
    return false;
  for (std::size_t rot = 0; rot < 3; ++rot)
    for (Elem x : g.elements()) {
      bool ok = true;
      for (std::size_t k = 0; k < 3 && ok; ++k)
        ok = g.conj(x, t[(k + rot) % 3]) == cones[k];
      if (ok) {
        c.boundary_rotation = rot;
        c.boundary_conjugator = x;
        return true;
      }
    }
  return false;
}

} // namespace detail

/// Checks every certificate invariant from the stored images alone.
inline KernelCheck check_tet_cert(TetExtensionCert const &c)
{
  auto const &g = *c.group;
  std::array<std::array<unsigned, 3>, 4> triples;
  try {
    triples = tet_vertex_types(c.tet);
  } catch (InputError const &e) {
    return {false, e.what()};
  }
  if (c.boundary.group != c.group)
    return {false, "boundary vector lives in a different group"};
  if (!c.boundary.signature.is_triangle())
    return {false, "boundary signature is not a triangle signature"};
  if (auto k = is_surface_kernel(c.boundary); !k)
    return {false, "boundary vector: " + k.reason};

  for (std::size_t e = 0; e < 6; ++e)
    if (g.element_order(c.images[e]) != c.tet.edge_orders[e])
      return {false, "edge " + std::to_string(tet_edges[e].first) + std::to_string(tet_edges[e].second) +
                       " image " + g.format(c.images[e]) + " has order " +
                       std::to_string(g.element_order(c.images[e])) + ", expected " +
                       std::to_string(c.tet.edge_orders[e])};
  for (std::size_t v = 0; v < 4; ++v) {
    auto [ab, bc, ac] = detail::vertex_relation_edges(v);
    if (g.mul(c.images[ab], c.images[bc]) != c.images[ac])
      return {false, "vertex relation fails at vertex " + std::to_string(v)};
    if (v == c.tet.truncated)
      continue;
    auto type = SphericalType::from_triple(triples[v]);
    auto const n = g.generated_order({c.images[ab], c.images[bc]});
    if (!type || n != type->group_order())
      return {false, "vertex " + std::to_string(v) + " group has order " + std::to_string(n) +
                       ", expected " + std::to_string(type ? type->group_order() : 0)};
  }
  auto const t = detail::boundary_triple(c);
  if (c.boundary_rotation > 2)
    return {false, "boundary rotation out of range"};
  for (std::size_t k = 0; k < 3; ++k)
    if (g.conj(c.boundary_conjugator, t[(k + c.boundary_rotation) % 3]) != c.boundary.cones[k])
      return {false, "truncated-vertex rotations do not reproduce the boundary vector"};
  if (!g.generates({c.images.begin(), c.images.end()}))
    return {false, "edge images do not generate the group"};
  return {};
}

using EdgeAssignment = std::vector<std::pair<std::size_t, Elem>>;

/// Extends the given edge images (each may be inverted; all 2^k choices are
/// tried in binary order) to the whole tetrahedron via the vertex relations
/// and returns the first assignment passing check_tet_cert.
inline Checked<TetExtensionCert> verify_tet_extension(TruncatedTetrahedron const &tet,
                                                      GeneratingVector const &boundary,
                                                      EdgeAssignment const &partial)
{
  try {
    tet_vertex_types(tet);
  } catch (InputError const &e) {
    return Checked<TetExtensionCert>::fail(e.what());
  }
  if (partial.size() > 6)
    return Checked<TetExtensionCert>::fail("more than six edge images");
  auto const &g = *boundary.group;
  std::string first_failure;
  for (std::uint32_t mask = 0; mask < (1u << partial.size()); ++mask) {
    std::array<std::optional<Elem>, 6> img{};
    std::array<bool, 6> flip{};
    bool clash = false;
    for (std::size_t k = 0; k < partial.size(); ++k) {
      auto [e, x] = partial[k];
      if (e >= 6)
        return Checked<TetExtensionCert>::fail("edge index out of range");
      bool const inv = (mask >> k) & 1u;
      Elem const y = inv ? g.inv(x) : x;
      if (img[e] && *img[e] != y)
        clash = true;
      img[e] = y;
      flip[e] = inv;
    }
    if (clash)
      continue;
    detail::propagate(g, img);
    TetExtensionCert cert{tet, boundary.group, {}, flip, boundary, 0, g.identity()};
    bool complete = true;
    for (std::size_t e = 0; e < 6; ++e) {
      complete = complete && img[e].has_value();
      if (img[e])
        cert.images[e] = *img[e];
    }
    std::string why;
    if (!complete)
      why = "edge images are underdetermined by the vertex relations";
    else if (!detail::match_boundary(cert))
      why = "truncated-vertex rotations do not reproduce the boundary vector";
    else if (auto k = check_tet_cert(cert); !k)
      why = k.reason;
    else
      return {cert, {}};
    if (first_failure.empty())
      first_failure = why;
  }
  return Checked<TetExtensionCert>::fail("no orientation convention works (first: " + first_failure + ")");
}

/// Like verify_tet_extension, but when the given images leave edges
/// undetermined, branches over elements of the required order for the
/// lowest undetermined edge (in element order).
inline Checked<TetExtensionCert> complete_tet_extension(TruncatedTetrahedron const &tet,
                                                        GeneratingVector const &boundary,
                                                        EdgeAssignment const &partial)
{
  auto direct = verify_tet_extension(tet, boundary, partial);
  if (direct)
    return direct;
  std::vector<bool> given(6, false);
  for (auto [e, _] : partial)
    given[e] = true;
  auto const &g = *boundary.group;
  for (std::size_t e = 0; e < 6; ++e) {
    if (given[e])
      continue;
    for (Elem x : g.elements()) {
      if (g.element_order(x) != tet.edge_orders[e])
        continue;
      auto extended = partial;
      extended.emplace_back(e, x);
      auto res = verify_tet_extension(tet, boundary, extended);
      if (res)
        return res;
    }
  }
  return Checked<TetExtensionCert>::fail("no completion of the given edge images exists");
}

} // namespace surfbound

#endif // SURFBOUND_TETRAHEDRON_HPP
