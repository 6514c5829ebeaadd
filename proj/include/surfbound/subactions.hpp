#ifndef SURFBOUND_SUBACTIONS_HPP
#define SURFBOUND_SUBACTIONS_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bounding.hpp"
#include "error.hpp"
#include "generating_vector.hpp"
#include "group.hpp"
#include "handlebody.hpp"
#include "signature.hpp"
#include "subgroups.hpp"
#include "tetrahedron.hpp"

namespace surfbound
{

/// A cone point of S/H lying over cone i of S/G.
struct InducedCone
{
  std::size_t source_index = 0;
  Elem coset_rep;  ///< g with the cone stabiliser H ∩ g<c_i>g^-1
  unsigned order = 1;
  Elem generator;  ///< (g c_i g^-1)^(m/m')
};

/// The action of a subgroup H on the same surface.
struct InducedAction
{
  GroupPtr group;
  ElementSet subgroup;
  std::vector<InducedCone> cones; ///< cone points of order >= 2, by source cone then coset
  unsigned quotient_genus = 0;
  unsigned surface_genus = 0;

  Signature signature() const
  {
    Signature s{quotient_genus, {}};
    for (auto const &c : cones)
      s.cone_orders.push_back(c.order);
    return s;
  }

  /// Signature with sorted cone orders, for multiset comparison.
  Signature sorted_signature() const
  {
    auto s = signature();
    std::sort(s.cone_orders.begin(), s.cone_orders.end());
    return s;
  }

  std::vector<Elem> cone_generators() const
  {
    std::vector<Elem> out;
    for (auto const &c : cones)
      out.push_back(c.generator);
    return out;
  }
};

/// Signature of S/H from the double cosets H \ G / <c_i>. The quotient genus
/// is solved from chi(S/H) = [G:H] chi(S/G).
inline InducedAction induced_action(GeneratingVector const &v, ElementSet const &h)
{
  auto const &g = *v.group;
  if (h.size() == 0 || g.order() % h.size() != 0)
    throw InputError("subgroup order must divide the group order");
  if (!g.is_subgroup(h))
    throw InputError("element set is not a subgroup");
  InducedAction out{v.group, h, {}, 0, rh_genus(v.signature, g.order())};
  std::int64_t const index = static_cast<std::int64_t>(g.order() / h.size());
  Rational cone_defect = 0;

  for (std::size_t i = 0; i < v.cones.size(); ++i) {
    Elem const c = v.cones[i];
    unsigned const m = g.element_order(c);
    std::vector<Elem> powers;
    for (unsigned k = 0; k < m; ++k)
      powers.push_back(g.pow(c, k));
    ElementSet covered(g.order());
    std::size_t points = 0; // sum over double cosets of |H| / m'
    for (Elem x : g.elements()) {
      if (covered.contains(x))
        continue;
      for (Elem a : h.elements())
        for (Elem p : powers)
          covered.insert(g.mul({a, x, p}));
      unsigned mp = 0;
      for (Elem p : powers)
        mp += h.contains(g.conj(x, p));
      points += h.size() / mp;
      if (mp >= 2) {
        out.cones.push_back({i, x, mp, g.pow(g.conj(x, c), m / mp)});
        cone_defect += 1 - Rational(1, mp);
      }
    }
    if (points != g.order() / m)
      throw InconsistentGroup("double coset count mismatch over cone " + std::to_string(i));
  }
  // 2 - 2h' - sum (1 - 1/m') = [G:H] chi
  Rational const two_h = 2 - cone_defect - index * orb_euler(v.signature);
  if (two_h.denominator() != 1 || two_h.numerator() % 2 != 0 || two_h < 0)
    throw NonIntegralGenus("NonIntegralGenus: induced quotient genus is not a non-negative integer");
  out.quotient_genus = static_cast<unsigned>(two_h.numerator() / 2);
  return out;
}

/// H as a standalone permutation group, generated greedily by its smallest
/// elements.
inline GroupPtr subgroup_group(FiniteGroup const &g, ElementSet const &h, std::string name)
{
  std::vector<Elem> gens;
  ElementSet span = g.subgroup_generated({});
  for (Elem x : h.sorted())
    if (!span.contains(x)) {
      gens.push_back(x);
      span = g.subgroup_generated(gens);
    }
  std::vector<Permutation> perms;
  for (Elem x : gens)
    perms.push_back(g.perm(x));
  return std::make_shared<FiniteGroup const>(FiniteGroup::from_generators(std::move(name), g.degree(), perms));
}

/// Cone data of an induced action, expressed inside H itself so that
/// axis-closure witnesses are searched in H rather than in G.
struct RestrictedCones
{
  GroupPtr subgroup;
  std::vector<ConeDatum> cones;
};

inline RestrictedCones restricted_cones(InducedAction const &ia, std::string name)
{
  auto const &g = *ia.group;
  RestrictedCones out{subgroup_group(g, ia.subgroup, std::move(name)), {}};
  for (std::size_t k = 0; k < ia.cones.size(); ++k) {
    auto x = out.subgroup->find(g.perm(ia.cones[k].generator));
    if (!x)
      throw InconsistentGroup("cone generator outside the subgroup");
    out.cones.push_back({k, ia.cones[k].order, *x});
  }
  return out;
}

/// Induced actions of all index-2 subgroups.
inline std::vector<InducedAction> index2_restrictions(GeneratingVector const &v)
{
  std::vector<InducedAction> out;
  for (auto const &h : index2_subgroups(*v.group))
    out.push_back(induced_action(v, h));
  return out;
}

using ParentCertificate = std::variant<TetExtensionCert, HandlebodyCert>;

/// The restriction of a verified extension of G to a subgroup H extends over
/// the same 3-manifold.
struct RestrictionCert
{
  ParentCertificate parent;
  ElementSet subgroup;
  Signature induced; ///< sorted induced signature
  unsigned surface_genus = 0;

  bool geometric() const
  { return std::holds_alternative<TetExtensionCert>(parent); }
};

inline GeneratingVector const &parent_vector(ParentCertificate const &p)
{
  return std::visit([](auto const &c) -> GeneratingVector const & { return c.boundary; }, p);
}

inline KernelCheck check_parent(ParentCertificate const &p)
{
  if (auto const *t = std::get_if<TetExtensionCert>(&p))
    return check_tet_cert(*t);
  return verify_handlebody_cert(std::get<HandlebodyCert>(p));
}

/// Re-verifies the parent, then checks that H is a proper subgroup and that
/// its induced signature equals `expected` as a multiset.
inline Checked<RestrictionCert> bounds_by_restriction(ParentCertificate const &parent,
                                                      ElementSet const &h,
                                                      Signature const &expected)
{
  using Result = Checked<RestrictionCert>;
  if (auto k = check_parent(parent); !k)
    return Result::fail("parent certificate: " + k.reason);
  auto const &v = parent_vector(parent);
  if (!v.group->is_subgroup(h) || h.size() == v.group->order())
    return Result::fail("not a proper subgroup");
  auto ind = induced_action(v, h);
  auto want = expected;
  std::sort(want.cone_orders.begin(), want.cone_orders.end());
  if (!(ind.sorted_signature() == want))
    return Result::fail("induced signature " + ind.sorted_signature().pretty() + " differs from " +
                        want.pretty());
  return {RestrictionCert{parent, h, ind.sorted_signature(), ind.surface_genus}, {}};
}

} // namespace surfbound

#endif // SURFBOUND_SUBACTIONS_HPP
