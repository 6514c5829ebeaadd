#ifndef SURFBOUND_ATLAS_HPP
#define SURFBOUND_ATLAS_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "permutation.hpp"
#include "search.hpp"
#include "signature.hpp"

namespace surfbound
{

struct AtlasEntry
{
  std::string name;
  std::size_t order;
  std::string description;
};

/// The fixed atlas names. Zn and Dn are parametric (z<n>, d<n>), as is the
/// metacyclic family d_<m>_<n>_<k>.
inline std::vector<AtlasEntry> const &atlas_entries()
{
  static std::vector<AtlasEntry> const entries{
    {"psl27", 168, "PSL(2,7) on the projective line over F7"},
    {"g96", 96, "(Z4 x Z4) x| S3, S3 acting on Z4^3/diagonal"},
    {"g48a", 48, "(Z4 x Z4) x| Z3, index-2 subgroup of g96"},
    {"z2xs4", 48, "Z2 x S4, c = (56)"},
    {"g32a", 32, "Z2 x| (Z2 x Z8), involutive action selected by (2,4,8) search"},
    {"z2xd285", 32, "Z2 x| D_{2,8,5}, involutive action selected by (2,4,8) search"},
    {"sl23", 24, "SL(2,3) on the nonzero vectors of F3^2"},
    {"d_2_12_5", 24, "D_{2,12,5} = <x,y | x^2 = y^12 = 1, x y x^-1 = y^5>"},
    {"z2xa4", 24, "Z2 x A4, c = (56)"},
    {"s4", 24, "symmetric group S4"},
    {"d_2_8_5", 16, "D_{2,8,5} = <x,y | x^2 = y^8 = 1, x y x^-1 = y^5>"},
    {"a4", 12, "alternating group A4"},
    {"s5", 120, "symmetric group S5"},
    {"a5", 60, "alternating group A5"},
    {"d3xd3", 36, "D3 x D3"},
    {"z<n>", 0, "cyclic group Z_n (e.g. z7)"},
    {"d<n>", 0, "dihedral group D_n of order 2n (e.g. d4; d2 is the Klein group)"},
    {"d_<m>_<n>_<k>", 0, "metacyclic <x,y | x^m = y^n = 1, x y x^-1 = y^k>"},
  };
  return entries;
}

namespace detail
{

inline Permutation perm_from_map(std::size_t degree, std::function<std::size_t(std::size_t)> const &f)
{
  std::vector<Point> img(degree);
  for (std::size_t i = 0; i < degree; ++i)
    img[i] = static_cast<Point>(f(i));
  return Permutation(std::move(img));
}

inline Permutation cycles(std::string_view text, std::size_t degree)
{ return Permutation::from_cycles(text, degree); }

/// Disjoint union of two permutation actions.
inline Permutation shifted(Permutation const &p, std::size_t offset, std::size_t degree)
{
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  for (std::size_t i = 0; i < p.degree(); ++i)
    img[i + offset] = static_cast<Point>(p[static_cast<Point>(i)] + offset);
  return Permutation(std::move(img));
}

inline GroupPtr direct_product(std::string name,
                               std::size_t deg1, std::vector<Permutation> const &gens1,
                               std::size_t deg2, std::vector<Permutation> const &gens2)
{
  std::size_t const deg = deg1 + deg2;
  std::vector<Permutation> gens;
  for (auto const &p : gens1)
    gens.push_back(shifted(p, 0, deg));
  for (auto const &p : gens2)
    gens.push_back(shifted(p, deg1, deg));
  return std::make_shared<FiniteGroup const>(FiniteGroup::from_generators(std::move(name), deg, gens));
}

inline GroupPtr make(std::string name, std::size_t degree, std::vector<Permutation> const &gens)
{ return std::make_shared<FiniteGroup const>(FiniteGroup::from_generators(std::move(name), degree, gens)); }

inline std::vector<Permutation> s4_gens()
{ return {cycles("(1234)", 4), cycles("(12)", 4)}; }

inline std::vector<Permutation> a4_gens()
{ return {cycles("(123)", 4), cycles("(12)(34)", 4)}; }

inline std::vector<Permutation> dihedral_gens(unsigned n)
{
  if (n == 2)
    return {cycles("(12)(34)", 4), cycles("(13)(24)", 4)};
  return {perm_from_map(n, [n](std::size_t i) { return (i + 1) % n; }),
          perm_from_map(n, [n](std::size_t i) { return (n - i) % n; })};
}

inline std::size_t dihedral_degree(unsigned n)
{ return n == 2 ? 4 : n; }

/// Affine maps x -> A x + v on Z_n1 x Z_n2, point (u, w) indexed u * n2 + w.
/// Each linear map is given on coordinates and must be an automorphism.
using LinearMap = std::function<std::pair<unsigned, unsigned>(unsigned, unsigned)>;

inline GroupPtr affine_group(std::string name, unsigned n1, unsigned n2, std::vector<LinearMap> const &linear)
{
  std::size_t const deg = std::size_t{n1} * n2;
  auto point = [n2](unsigned u, unsigned w) { return std::size_t{u} * n2 + w; };
  std::vector<Permutation> gens{
    perm_from_map(deg, [&](std::size_t p) { return point((p / n2 + 1) % n1, p % n2); }),
    perm_from_map(deg, [&](std::size_t p) { return point(p / n2, (p % n2 + 1) % n2); }),
  };
  for (auto const &a : linear)
    gens.push_back(perm_from_map(deg, [&](std::size_t p) {
      auto [u, w] = a(static_cast<unsigned>(p / n2), static_cast<unsigned>(p % n2));
      return point(u % n1, w % n2);
    }));
  return make(std::move(name), deg, gens);
}

inline unsigned mod(long long a, unsigned n)
{
  long long r = a % static_cast<long long>(n);
  return static_cast<unsigned>(r < 0 ? r + n : r);
}

/// <x, y | x^m = y^n = 1, x y x^-1 = y^k> acting on Z_n (y: t -> t+1,
/// x: t -> k^-1 t) together with an m-cycle for x, which makes the action
/// faithful of order m n. Under left-to-right composition x y x^-1 = y^k.
inline std::vector<Permutation> metacyclic_gens(unsigned m, unsigned n, unsigned k)
{
  if (m < 1 || n < 1)
    throw InconsistentGroup("metacyclic parameters must be positive");
  unsigned long long km = 1;
  for (unsigned i = 0; i < m; ++i)
    km = km * k % n;
  if (km % n != 1 % n)
    throw InconsistentGroup("metacyclic D_{" + std::to_string(m) + "," + std::to_string(n) + "," +
                            std::to_string(k) + "}: k^m != 1 mod n");
  unsigned kinv = 0;
  for (unsigned c = 0; c < n; ++c)
    if ((std::size_t{c} * k) % n == 1 % n) {
      kinv = c;
      break;
    }
  std::size_t const deg = std::size_t{n} + m;
  auto x = perm_from_map(deg, [&](std::size_t p) -> std::size_t {
    if (p < n)
      return (p * kinv) % n;
    return n + (p - n + 1) % m;
  });
  auto y = perm_from_map(deg, [&](std::size_t p) -> std::size_t {
    if (p < n)
      return (p + 1) % n;
    return p;
  });
  return {x, y};
}

inline GroupPtr metacyclic(std::string name, unsigned m, unsigned n, unsigned k)
{
  auto gens = metacyclic_gens(m, n, k);
  auto g = make(std::move(name), std::size_t{n} + m, gens);
  if (g->order() != std::size_t{m} * n)
    throw InconsistentGroup(g->name() + ": expected order " + std::to_string(m * n) + ", got " +
                            std::to_string(g->order()));
  return g;
}

inline GroupPtr psl27()
{
  // z -> z + 1 and z -> -1/z on P^1(F7); point 7 is infinity
  auto inv = [](std::size_t z) -> std::size_t {
    if (z == 7)
      return 0;
    if (z == 0)
      return 7;
    for (std::size_t w = 1; w < 7; ++w)
      if ((z * w) % 7 == 6)
        return w;
    return 0;
  };
  return make("psl27", 8,
              {perm_from_map(8, [](std::size_t z) { return z == 7 ? 7 : (z + 1) % 7; }),
               perm_from_map(8, inv)});
}

inline GroupPtr sl23()
{
  // nonzero vectors (a, b) of F3^2, point 3a + b - 1
  auto act = [](int m00, int m01, int m10, int m11) {
    return perm_from_map(8, [=](std::size_t p) {
      int a = static_cast<int>((p + 1) / 3), b = static_cast<int>((p + 1) % 3);
      int u = mod(m00 * a + m01 * b, 3), w = mod(m10 * a + m11 * b, 3);
      return static_cast<std::size_t>(3 * u + w - 1);
    });
  };
  return make("sl23", 8, {act(1, 1, 0, 1), act(0, 2, 1, 0)});
}

/// G96 / G48a: 3-cycle -> [[0,-1],[1,-1]], transposition -> [[0,1],[1,0]].
inline GroupPtr fermat_group(bool with_transposition)
{
  std::vector<LinearMap> lin{[](unsigned u, unsigned w) {
    return std::pair{mod(-static_cast<long long>(w), 4), mod(static_cast<long long>(u) - w, 4)};
  }};
  if (with_transposition)
    lin.push_back([](unsigned u, unsigned w) { return std::pair{w, u}; });
  return affine_group(with_transposition ? "g96" : "g48a", 4, 4, lin);
}

/// Literal direct product Z2 x D_{2,8,5}. Its abelianisation needs three
/// generators, so it is not a quotient of any triangle group.
inline GroupPtr z2_times_d285(std::string name)
{ return direct_product(std::move(name), 2, {cycles("(12)", 2)}, 10, metacyclic_gens(2, 8, 5)); }

/// Extends generator images to a map G -> H. Empty if not a homomorphism.
inline std::vector<Elem> extend_hom(FiniteGroup const &src,
                                    std::vector<Elem> const &gens,
                                    FiniteGroup const &dst,
                                    std::vector<Elem> const &images)
{
  constexpr std::uint16_t unset = 0xffff;
  std::vector<std::uint16_t> map(src.order(), unset);
  map[0] = 0;
  std::vector<Elem> queue{src.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elem y = src.mul(queue[i], gens[k]);
      Elem iy = dst.mul(Elem{map[queue[i].id]}, images[k]);
      if (map[y.id] == unset) {
        map[y.id] = iy.id;
        queue.push_back(y);
      } else if (map[y.id] != iy.id)
        return {};
    }
  if (queue.size() != src.order())
    return {};
  std::vector<Elem> out;
  for (auto v : map)
    out.push_back(Elem{v});
  return out;
}

inline bool is_bijection(std::vector<Elem> const &map)
{
  std::vector<bool> hit(map.size(), false);
  for (Elem e : map) {
    if (e.id >= map.size() || hit[e.id])
      return false;
    hit[e.id] = true;
  }
  return true;
}

/// Brute-force isomorphism test for 2-generated groups (used only to keep
/// the two order-32 atlas groups apart).
inline bool isomorphic_2generated(FiniteGroup const &a, FiniteGroup const &b)
{
  if (a.order() != b.order() || a.order_histogram() != b.order_histogram())
    return false;
  std::vector<Elem> pair;
  for (Elem x : a.elements()) {
    for (Elem y : a.elements())
      if (a.generates({x, y})) {
        pair = {x, y};
        break;
      }
    if (!pair.empty())
      break;
  }
  if (pair.empty())
    throw InconsistentGroup(a.name() + " is not 2-generated");
  for (Elem x : b.elements())
    for (Elem y : b.elements()) {
      if (b.element_order(x) != a.element_order(pair[0]) || b.element_order(y) != a.element_order(pair[1]))
        continue;
      auto m = extend_hom(a, pair, b, {x, y});
      if (!m.empty() && is_bijection(m))
        return true;
    }
  return false;
}

/// Z2 x| N for an involutive automorphism phi of N, as the right regular
/// permutation action on pairs (n, e) indexed n + e |N|.
inline GroupPtr semidirect_z2(std::string name, FiniteGroup const &base, std::vector<Elem> const &phi)
{
  std::size_t const n = base.order(), deg = 2 * n;
  auto mul = [&](std::size_t a, std::size_t b) -> std::size_t {
    auto n1 = Elem{static_cast<std::uint16_t>(a % n)}, n2 = Elem{static_cast<std::uint16_t>(b % n)};
    Elem twisted = a / n ? phi[n2.id] : n2;
    return base.mul(n1, twisted).id + ((a / n + b / n) % 2) * n;
  };
  auto right_mult = [&](std::size_t g) { return perm_from_map(deg, [&](std::size_t x) { return mul(x, g); }); };
  std::vector<Permutation> gens;
  for (Elem g : base.generators())
    gens.push_back(right_mult(g.id));
  gens.push_back(right_mult(n));
  return make(std::move(name), deg, gens);
}

/// Involutive automorphisms of Z2 x Z8, as images (p,q) of (1,0) and (s,t)
/// of (0,1), in lexicographic order.
inline std::vector<std::array<unsigned, 4>> z2xz8_involutions()
{
  std::vector<std::array<unsigned, 4>> out;
  for (unsigned p = 0; p < 2; ++p)
    for (unsigned q : {0u, 4u})
      for (unsigned s = 0; s < 2; ++s)
        for (unsigned t = 0; t < 8; ++t) {
          auto phi = [&](unsigned u, unsigned w) { return std::pair{(u * p + w * s) % 2, (u * q + w * t) % 8}; };
          std::vector<bool> hit(16, false);
          bool bijective = true, involutive = true, identity = true;
          for (unsigned u = 0; u < 2; ++u)
            for (unsigned w = 0; w < 8; ++w) {
              auto [a, b] = phi(u, w);
              bijective = bijective && !hit[a * 8 + b];
              hit[a * 8 + b] = true;
              auto [c, d] = phi(a, b);
              involutive = involutive && c == u && d == w;
              identity = identity && a == u && b == w;
            }
          if (bijective && involutive && !identity)
            out.push_back({p, q, s, t});
        }
  return out;
}

inline GroupPtr z2xz8_semidirect(std::array<unsigned, 4> a)
{
  return affine_group("g32a", 2, 8, {[a](unsigned u, unsigned w) {
                        return std::pair{(u * a[0] + w * a[2]) % 2, (u * a[1] + w * a[3]) % 8};
                      }});
}

struct G32aSelection
{
  GroupPtr group;
  std::array<unsigned, 4> action;
};

/// First involutive action (lexicographic) whose semidirect product admits a
/// genus-3 (2,4,8) surface-kernel vector.
inline G32aSelection select_g32a()
{
  auto const sig = Signature::parse("0:2,4,8");
  for (auto a : z2xz8_involutions()) {
    auto g = z2xz8_semidirect(a);
    if (first_vector(sig, g))
      return {g, a};
  }
  throw InconsistentGroup("g32a: no involutive action of Z2 on Z2 x Z8 admits a (2,4,8) vector");
}

struct Z2xD285Selection
{
  GroupPtr group;
  std::string x_image, y_image;
};

/// First involutive automorphism of D_{2,8,5} (lexicographic in the images
/// of x, y) whose semidirect product with Z2 admits a (2,4,8) vector and is
/// not isomorphic to g32a.
inline Z2xD285Selection select_z2xd285()
{
  auto base = metacyclic("d_2_8_5", 2, 8, 5);
  auto const g32a = select_g32a().group;
  auto const sig = Signature::parse("0:2,4,8");
  for (Elem x : base->elements())
    for (Elem y : base->elements()) {
      auto phi = extend_hom(*base, base->generators(), *base, {x, y});
      if (phi.empty() || !is_bijection(phi))
        continue;
      bool involutive = true, identity = true;
      for (Elem e : base->elements()) {
        involutive = involutive && phi[phi[e.id].id] == e;
        identity = identity && phi[e.id] == e;
      }
      if (!involutive || identity)
        continue;
      auto g = semidirect_z2("z2xd285", *base, phi);
      if (first_vector(sig, g) && !isomorphic_2generated(*g, *g32a))
        return {g, base->format(x), base->format(y)};
    }
  throw InconsistentGroup("z2xd285: no involutive action on D_{2,8,5} admits a (2,4,8) vector");
}

inline void require_vector(GroupPtr const &g, std::string const &sig_text, unsigned genus)
{
  auto sig = Signature::parse(sig_text);
  if (!first_vector(sig, g) || rh_genus(sig, g->order()) != genus)
    throw InconsistentGroup(g->name() + ": chosen semidirect action admits no genus-" +
                            std::to_string(genus) + " " + sig.pretty() + " vector");
}

inline std::optional<unsigned> parse_suffix(std::string_view s)
{
  if (s.empty() || s.size() > 4)
    return std::nullopt;
  unsigned v = 0;
  for (char c : s) {
    if (c < '0' || c > '9')
      return std::nullopt;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

} // namespace detail

/// The g32a action as images of the generators (1,0) and (0,1) of Z2 x Z8.
inline std::array<unsigned, 4> g32a_action()
{ return detail::select_g32a().action; }

/// Builds an atlas group by its stable name. Throws UnknownAtlasName.
inline GroupPtr atlas_build(std::string const &name)
{
  using namespace detail;
  GroupPtr g;
  if (name == "psl27")
    g = psl27();
  else if (name == "g96") {
    g = fermat_group(true);
    require_vector(g, "0:2,3,8", 3);
  } else if (name == "g48a") {
    g = fermat_group(false);
    require_vector(g, "0:3,3,4", 3);
  } else if (name == "g32a")
    g = select_g32a().group;
  else if (name == "z2xs4")
    g = direct_product(name, 4, s4_gens(), 2, {cycles("(12)", 2)});
  else if (name == "z2xa4")
    g = direct_product(name, 4, a4_gens(), 2, {cycles("(12)", 2)});
  else if (name == "z2xd285")
    g = select_z2xd285().group;
  else if (name == "sl23")
    g = sl23();
  else if (name == "s4")
    g = make(name, 4, s4_gens());
  else if (name == "a4")
    g = make(name, 4, a4_gens());
  else if (name == "s5")
    g = make(name, 5, {cycles("(12345)", 5), cycles("(12)", 5)});
  else if (name == "a5")
    g = make(name, 5, {cycles("(12345)", 5), cycles("(123)", 5)});
  else if (name == "d3xd3")
    g = direct_product(name, 3, dihedral_gens(3), 3, dihedral_gens(3));
  else if (name.starts_with("d_")) {
    std::vector<unsigned> params;
    std::string_view rest = std::string_view(name).substr(2);
    while (true) {
      auto us = rest.find('_');
      auto v = parse_suffix(rest.substr(0, us));
      if (!v)
        throw UnknownAtlasName(name);
      params.push_back(*v);
      if (us == std::string_view::npos)
        break;
      rest = rest.substr(us + 1);
    }
    if (params.size() != 3)
      throw UnknownAtlasName(name);
    g = metacyclic(name, params[0], params[1], params[2]);
  } else if (name.size() > 1 && name[0] == 'z') {
    auto n = parse_suffix(std::string_view(name).substr(1));
    if (!n || *n < 1 || *n > max_group_order)
      throw UnknownAtlasName(name);
    g = make(name, *n, {perm_from_map(*n, [m = *n](std::size_t i) { return (i + 1) % m; })});
  } else if (name.size() > 1 && name[0] == 'd') {
    auto n = parse_suffix(std::string_view(name).substr(1));
    if (!n || *n < 2 || 2 * *n > max_group_order)
      throw UnknownAtlasName(name);
    g = make(name, dihedral_degree(*n), dihedral_gens(*n));
  } else
    throw UnknownAtlasName(name);

  for (auto const &e : atlas_entries())
    if (e.name == name && e.order != g->order())
      throw InconsistentGroup(name + ": built order " + std::to_string(g->order()) +
                              " differs from atlas order " + std::to_string(e.order));
  return g;
}

} // namespace surfbound

#endif // SURFBOUND_ATLAS_HPP
