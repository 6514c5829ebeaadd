#ifndef SURFBOUND_GENERATING_VECTOR_HPP
#define SURFBOUND_GENERATING_VECTOR_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "signature.hpp"

namespace surfbound
{

/// Images of the canonical generators of a Fuchsian group in G:
/// hyperbolic pairs (a_i, b_i) followed by elliptic images c_j, subject to
/// prod [a_i, b_i] * prod c_j = 1.
struct GeneratingVector
{
  GroupPtr group;
  Signature signature;
  std::vector<std::pair<Elem, Elem>> hyperbolic_pairs;
  std::vector<Elem> cones;

  std::vector<Elem> all_images() const
  {
    std::vector<Elem> out;
    for (auto [a, b] : hyperbolic_pairs) {
      out.push_back(a);
      out.push_back(b);
    }
    out.insert(out.end(), cones.begin(), cones.end());
    return out;
  }

  /// Product of the long relation; the identity for a valid vector.
  Elem relation_product() const
  {
    auto const &g = *group;
    Elem acc = g.identity();
    for (auto [a, b] : hyperbolic_pairs)
      acc = g.mul({acc, a, b, g.inv(a), g.inv(b)});
    for (Elem c : cones)
      acc = g.mul(acc, c);
    return acc;
  }

  std::vector<std::string> cone_cycles() const
  {
    std::vector<std::string> out;
    for (Elem c : cones)
      out.push_back(group->format(c));
    return out;
  }

  friend bool operator==(GeneratingVector const &a, GeneratingVector const &b)
  {
    return a.group == b.group && a.signature == b.signature &&
           a.hyperbolic_pairs == b.hyperbolic_pairs && a.cones == b.cones;
  }
};

/// Result of is_surface_kernel: ok, or which invariant failed.
struct KernelCheck
{
  bool ok = true;
  std::string reason;

  explicit operator bool() const
  { return ok; }
};

/// Checks shape, the long relation, exact cone orders (torsion-free kernel)
/// and surjectivity, in that order.
inline KernelCheck is_surface_kernel(GeneratingVector const &v)
{
  auto const &g = *v.group;
  if (v.hyperbolic_pairs.size() != v.signature.genus ||
      v.cones.size() != v.signature.cone_count())
    return {false, "shape: vector does not match signature " + v.signature.to_string()};
  for (Elem x : v.all_images())
    if (x.id >= g.order())
      return {false, "element outside group"};
  if (v.relation_product() != g.identity())
    return {false, "long relation: product is " + g.format(v.relation_product())};
  for (std::size_t j = 0; j < v.cones.size(); ++j)
    if (g.element_order(v.cones[j]) != v.signature.cone_orders[j])
      return {false, "torsion: cone " + std::to_string(j) + " has order " +
                       std::to_string(g.element_order(v.cones[j])) + ", expected " +
                       std::to_string(v.signature.cone_orders[j])};
  if (!g.generates(v.all_images()))
    return {false, "surjectivity: images generate a proper subgroup of order " +
                     std::to_string(g.generated_order(v.all_images()))};
  return {};
}

/// Builds a genus-0 vector from cycle strings; no validity check.
inline GeneratingVector make_vector(GroupPtr group,
                                    Signature sig,
                                    std::vector<std::string> const &cone_cycles)
{
  GeneratingVector v{std::move(group), std::move(sig), {}, {}};
  for (auto const &c : cone_cycles)
    v.cones.push_back(v.group->parse(c));
  return v;
}

/// A searched or explicitly listed action together with its surface genus.
struct ActionRecord
{
  enum class Provenance { searched, listed };

  GeneratingVector vector;
  unsigned surface_genus = 0;
  Provenance provenance = Provenance::searched;

  static ActionRecord make(GeneratingVector v, Provenance p)
  {
    auto g = rh_genus(v.signature, v.group->order());
    return ActionRecord{std::move(v), g, p};
  }
};

/// Braid move at position i (0-based, i + 1 < r):
/// (c_i, c_{i+1}) -> (c_i c_{i+1} c_i^-1, c_i). Cone orders move with their
/// elements, so the signature's order list is permuted accordingly.
inline GeneratingVector braid_move(GeneratingVector v, std::size_t i)
{
  if (i + 1 >= v.cones.size())
    throw InputError("braid index " + std::to_string(i) + " out of range for " +
                     std::to_string(v.cones.size()) + " cones");
  auto const &g = *v.group;
  Elem const a = v.cones[i], b = v.cones[i + 1];
  v.cones[i] = g.conj(a, b);
  v.cones[i + 1] = a;
  std::swap(v.signature.cone_orders[i], v.signature.cone_orders[i + 1]);
  return v;
}

/// Inverse of braid_move: (c_i, c_{i+1}) -> (c_{i+1}, c_{i+1}^-1 c_i c_{i+1}).
inline GeneratingVector inverse_braid_move(GeneratingVector v, std::size_t i)
{
  if (i + 1 >= v.cones.size())
    throw InputError("braid index " + std::to_string(i) + " out of range for " +
                     std::to_string(v.cones.size()) + " cones");
  auto const &g = *v.group;
  Elem const a = v.cones[i], b = v.cones[i + 1];
  v.cones[i] = b;
  v.cones[i + 1] = g.conj(g.inv(b), a);
  std::swap(v.signature.cone_orders[i], v.signature.cone_orders[i + 1]);
  return v;
}

/// Simultaneous conjugation of every image by g.
inline GeneratingVector conjugate_vector(GeneratingVector v, Elem g)
{
  auto const &grp = *v.group;
  for (auto &[a, b] : v.hyperbolic_pairs) {
    a = grp.conj(g, a);
    b = grp.conj(g, b);
  }
  for (Elem &c : v.cones)
    c = grp.conj(g, c);
  return v;
}

} // namespace surfbound

#endif // SURFBOUND_GENERATING_VECTOR_HPP
