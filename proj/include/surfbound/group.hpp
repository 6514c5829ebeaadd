#ifndef SURFBOUND_GROUP_HPP
#define SURFBOUND_GROUP_HPP

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "permutation.hpp"

namespace surfbound
{

/// Index of an element inside one FiniteGroup. Indices follow the
/// lexicographic order of the permutation image arrays, so the identity is
/// always element 0 and comparisons of Elem values are canonical.
struct Elem
{
  std::uint16_t id = 0;

  friend bool operator==(Elem, Elem) = default;
  friend auto operator<=>(Elem, Elem) = default;
};

inline constexpr std::size_t max_group_order = 1000;

/// Set of elements of one group: discovery order plus a membership mask.
class ElementSet
{
public:
  ElementSet() = default;

  explicit ElementSet(std::size_t group_order)
  : mask_(group_order, false)
  {}

  bool insert(Elem x)
  {
    if (mask_[x.id])
      return false;
    mask_[x.id] = true;
    elems_.push_back(x);
    return true;
  }

  bool contains(Elem x) const
  { return x.id < mask_.size() && mask_[x.id]; }

  std::size_t size() const
  { return elems_.size(); }

  std::vector<Elem> const &elements() const
  { return elems_; }

  /// Elements in canonical (index) order.
  std::vector<Elem> sorted() const
  {
    std::vector<Elem> out;
    out.reserve(elems_.size());
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i])
        out.push_back(Elem{static_cast<std::uint16_t>(i)});
    return out;
  }

  friend bool operator==(ElementSet const &a, ElementSet const &b)
  { return a.mask_ == b.mask_; }

private:
  std::vector<bool> mask_;
  std::vector<Elem> elems_;
};

/// An explicit finite group realised as a permutation group, with its full
/// multiplication table. Immutable after construction.
class FiniteGroup
{
public:
  /// Closes the generators under multiplication. Throws if the group is
  /// larger than max_group_order.
  static FiniteGroup from_generators(std::string name,
                                     std::size_t degree,
                                     std::vector<Permutation> const &gens)
  {
    FiniteGroup g;
    g.name_ = std::move(name);
    g.degree_ = degree;

    std::map<Permutation, std::size_t> seen;
    std::vector<Permutation> found{Permutation(degree)};
    seen.emplace(found.front(), 0);
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (auto const &s : gens) {
        if (s.degree() != degree)
          throw InputError("generator degree mismatch in " + g.name_);
        auto p = found[i] * s;
        if (seen.emplace(p, found.size()).second) {
          found.push_back(std::move(p));
          if (found.size() > max_group_order)
            throw InconsistentGroup(g.name_ + ": group order exceeds " +
                                    std::to_string(max_group_order));
        }
      }
    }

    // canonical order: lexicographic image arrays (std::map order)
    g.perms_.reserve(found.size());
    std::size_t idx = 0;
    for (auto &[perm, _] : seen) {
      g.index_.emplace(perm, idx++);
      g.perms_.push_back(perm);
    }

    std::size_t const n = g.perms_.size();
    g.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        g.table_[a * n + b] = static_cast<std::uint16_t>(g.index_.at(g.perms_[a] * g.perms_[b]));

    g.inverse_.resize(n);
    g.order_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b)
        if (g.table_[a * n + b] == 0) {
          g.inverse_[a] = static_cast<std::uint16_t>(b);
          break;
        }
      unsigned k = 1;
      std::size_t x = a;
      while (x != 0) {
        x = g.table_[x * n + a];
        ++k;
      }
      g.order_[a] = k;
    }

    for (auto const &s : gens)
      g.generators_.push_back(Elem{static_cast<std::uint16_t>(g.index_.at(s))});

    g.compute_classes();
    return g;
  }

  std::string const &name() const
  { return name_; }

  std::size_t order() const
  { return perms_.size(); }

  std::size_t degree() const
  { return degree_; }

  Elem identity() const
  { return Elem{0}; }

  std::vector<Elem> const &generators() const
  { return generators_; }

  std::vector<Elem> elements() const
  {
    std::vector<Elem> out(order());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = Elem{static_cast<std::uint16_t>(i)};
    return out;
  }

  Elem mul(Elem a, Elem b) const
  { return Elem{table_[std::size_t{a.id} * order() + b.id]}; }

  Elem mul(std::initializer_list<Elem> xs) const
  {
    Elem acc = identity();
    for (Elem x : xs)
      acc = mul(acc, x);
    return acc;
  }

  Elem inv(Elem a) const
  { return Elem{inverse_[a.id]}; }

  /// g x g^-1
  Elem conj(Elem g, Elem x) const
  { return mul(mul(g, x), inv(g)); }

  Elem pow(Elem a, long long k) const
  {
    long long const m = order_[a.id];
    k %= m;
    if (k < 0)
      k += m;
    Elem acc = identity();
    for (long long i = 0; i < k; ++i)
      acc = mul(acc, a);
    return acc;
  }

  /// Smallest k >= 1 with x^k = 1.
  unsigned element_order(Elem x) const
  { return order_[x.id]; }

  Permutation const &perm(Elem x) const
  { return perms_[x.id]; }

  std::optional<Elem> find(Permutation const &p) const
  {
    auto it = index_.find(p);
    if (it == index_.end())
      return std::nullopt;
    return Elem{static_cast<std::uint16_t>(it->second)};
  }

  /// Element from cycle notation; throws InputError if it is not in the group.
  Elem parse(std::string_view cycles) const
  {
    auto e = find(Permutation::from_cycles(cycles, degree_));
    if (!e)
      throw InputError("'" + std::string(cycles) + "' is not an element of " + name_);
    return *e;
  }

  std::string format(Elem x) const
  { return perms_[x.id].to_cycles(); }

  std::size_t class_index(Elem x) const
  { return class_of_[x.id]; }

  /// Smallest element of each conjugacy class, in increasing order.
  std::vector<Elem> const &class_representatives() const
  { return class_reps_; }

  bool conjugate(Elem x, Elem y) const
  { return class_of_[x.id] == class_of_[y.id]; }

  /// Closure of gens under multiplication (and hence inversion), in BFS
  /// discovery order starting from the identity.
  ElementSet subgroup_generated(std::vector<Elem> const &gens) const
  {
    ElementSet set(order());
    set.insert(identity());
    for (std::size_t i = 0; i < set.size(); ++i) {
      Elem x = set.elements()[i];
      for (Elem s : gens)
        set.insert(mul(x, s));
    }
    return set;
  }

  /// Order of <gens> without materialising discovery order.
  std::size_t generated_order(std::vector<Elem> const &gens) const
  { return subgroup_generated(gens).size(); }

  bool generates(std::vector<Elem> const &gens) const
  { return generated_order(gens) == order(); }

  bool is_subgroup(ElementSet const &h) const
  {
    if (!h.contains(identity()))
      return false;
    for (Elem a : h.elements())
      for (Elem b : h.elements())
        if (!h.contains(mul(a, b)))
          return false;
    return true;
  }

  /// Histogram of element orders: hist[k] = number of elements of order k.
  std::vector<std::size_t> order_histogram() const
  {
    std::vector<std::size_t> hist(order() + 1, 0);
    for (unsigned o : order_)
      ++hist[o];
    return hist;
  }

  std::vector<std::size_t> order_histogram(ElementSet const &h) const
  {
    std::vector<std::size_t> hist(order() + 1, 0);
    for (Elem x : h.elements())
      ++hist[order_[x.id]];
    return hist;
  }

  /// Exhaustive associativity check over the multiplication table.
  bool check_associative() const
  {
    auto const n = order();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto const ab = table_[a * n + b];
        for (std::size_t c = 0; c < n; ++c)
          if (table_[std::size_t{ab} * n + c] != table_[a * n + table_[b * n + c]])
            return false;
      }
    return true;
  }

private:
  std::string name_;
  std::size_t degree_ = 0;
  std::vector<Permutation> perms_;
  std::map<Permutation, std::size_t> index_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint16_t> inverse_;
  std::vector<unsigned> order_;
  std::vector<Elem> generators_;
  std::vector<std::size_t> class_of_;
  std::vector<Elem> class_reps_;

  void compute_classes()
  {
    auto const n = order();
    constexpr auto unset = static_cast<std::size_t>(-1);
    class_of_.assign(n, unset);
    for (std::size_t x = 0; x < n; ++x) {
      if (class_of_[x] != unset)
        continue;
      auto const cls = class_reps_.size();
      class_reps_.push_back(Elem{static_cast<std::uint16_t>(x)});
      class_of_[x] = cls;
      std::vector<Elem> queue{Elem{static_cast<std::uint16_t>(x)}};
      for (std::size_t i = 0; i < queue.size(); ++i)
        for (Elem g : generators_) {
          Elem y = conj(g, queue[i]);
          if (class_of_[y.id] == unset) {
            class_of_[y.id] = cls;
            queue.push_back(y);
          }
        }
    }
  }
};

using GroupPtr = std::shared_ptr<FiniteGroup const>;

} // namespace surfbound

#endif // SURFBOUND_GROUP_HPP
