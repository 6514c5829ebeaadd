#ifndef SURFBOUND_PERMUTATION_HPP
#define SURFBOUND_PERMUTATION_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace surfbound
{

using Point = std::uint16_t;

/// Permutation of {0, ..., degree-1}, stored as its image array.
///
/// Products compose LEFT-TO-RIGHT: (a * b)(x) = b(a(x)), i.e. the left
/// factor is applied first. With this convention (12345)(12) = (2345).
class Permutation
{
public:
  Permutation() = default;

  explicit Permutation(std::size_t degree)
  : images_(degree)
  { std::iota(images_.begin(), images_.end(), Point{0}); }

  explicit Permutation(std::vector<Point> images)
  : images_(std::move(images))
  {
    std::vector<bool> seen(images_.size(), false);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p])
        throw InputError("image array is not a permutation");
      seen[p] = true;
    }
  }

  std::size_t degree() const
  { return images_.size(); }

  Point operator[](Point x) const
  { return images_[x]; }

  std::vector<Point> const &images() const
  { return images_; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Permutation inverse() const
  {
    std::vector<Point> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i)
      inv[images_[i]] = static_cast<Point>(i);
    return Permutation(std::move(inv));
  }

  friend Permutation operator*(Permutation const &lhs, Permutation const &rhs)
  {
    if (lhs.degree() != rhs.degree())
      throw InputError("permutation degrees differ");
    std::vector<Point> out(lhs.degree());
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = rhs.images_[lhs.images_[i]];
    Permutation res;
    res.images_ = std::move(out);
    return res;
  }

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend auto operator<=>(Permutation const &, Permutation const &) = default;

  /// Disjoint cycle notation with 1-based points. Degrees below 10 use the
  /// compact form "(1234)(56)", larger degrees separate points with commas.
  std::string to_cycles() const
  {
    bool const compact = images_.size() < 10;
    std::string out;
    std::vector<bool> done(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (done[start] || images_[start] == start)
        continue;
      out += '(';
      std::size_t x = start;
      bool first = true;
      while (!done[x]) {
        done[x] = true;
        if (!first && !compact)
          out += ',';
        out += std::to_string(x + 1);
        first = false;
        x = images_[x];
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  /// Parses disjoint or non-disjoint cycle products such as "(1234)(56)",
  /// "(1,2,10)" or "()". Cycles are multiplied left to right.
  static Permutation from_cycles(std::string_view text, std::size_t degree)
  {
    Permutation result(degree);
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t'))
        ++pos;
    };
    skip_ws();
    if (pos == text.size())
      throw InputError("empty cycle notation");
    while (pos < text.size()) {
      if (text[pos] != '(')
        throw InputError("expected '(' in cycle notation: " + std::string(text));
      auto close = text.find(')', pos);
      if (close == std::string_view::npos)
        throw InputError("unbalanced '(' in cycle notation: " + std::string(text));
      auto body = text.substr(pos + 1, close - pos - 1);
      result = result * cycle(parse_points(body, degree), degree);
      pos = close + 1;
      skip_ws();
    }
    return result;
  }

private:
  std::vector<Point> images_;

  static std::vector<Point> parse_points(std::string_view body, std::size_t degree)
  {
    std::vector<Point> pts;
    bool const separated =
      body.find(',') != std::string_view::npos || body.find(' ') != std::string_view::npos;
    auto push = [&](unsigned long v) {
      if (v < 1 || v > degree)
        throw InputError("point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      pts.push_back(static_cast<Point>(v - 1));
    };
    if (separated) {
      std::size_t i = 0;
      while (i < body.size()) {
        while (i < body.size() && (body[i] == ',' || body[i] == ' '))
          ++i;
        if (i == body.size())
          break;
        std::size_t j = i;
        while (j < body.size() && body[j] >= '0' && body[j] <= '9')
          ++j;
        if (j == i)
          throw InputError("bad character in cycle: " + std::string(body));
        push(std::stoul(std::string(body.substr(i, j - i))));
        i = j;
      }
    } else {
      for (char ch : body) {
        if (ch < '0' || ch > '9')
          throw InputError("bad character in cycle: " + std::string(body));
        push(static_cast<unsigned long>(ch - '0'));
      }
    }
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InputError("repeated point in cycle: " + std::string(body));
    return pts;
  }

  static Permutation cycle(std::vector<Point> const &pts, std::size_t degree)
  {
    Permutation p(degree);
    for (std::size_t i = 0; i < pts.size(); ++i)
      p.images_[pts[i]] = pts[(i + 1) % pts.size()];
    return p;
  }
};

} // namespace surfbound

#endif // SURFBOUND_PERMUTATION_HPP
