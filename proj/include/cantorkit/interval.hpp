#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cantorkit/rational.hpp"

namespace cantorkit {

/// Closed interval [lo, hi]; point intervals are allowed.
struct Interval {
  Rational lo;
  Rational hi;

  Interval() = default;
  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw std::invalid_argument("malformed interval [" + lo.str() + "," + hi.str() + "]");
  }

  [[nodiscard]] Rational length() const { return hi - lo; }
  [[nodiscard]] bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  [[nodiscard]] bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  /// Closed-interval overlap; a shared endpoint counts.
  [[nodiscard]] bool meets(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  [[nodiscard]] std::string str() const { return "[" + lo.str() + "," + hi.str() + "]"; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite union of closed intervals kept sorted, pairwise disjoint and with touching
/// neighbours merged, so intervals()[i].hi < intervals()[i+1].lo always holds.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  /// Builds the minimal sorted representation of the union of `raw`.
  static IntervalUnion normalize(std::vector<Interval> raw) {
    std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
      if (a.lo != b.lo) return a.lo < b.lo;
      return a.hi < b.hi;
    });
    IntervalUnion u;
    for (auto& iv : raw) {
      if (!u.parts_.empty() && iv.lo <= u.parts_.back().hi) {
        if (u.parts_.back().hi < iv.hi) u.parts_.back().hi = std::move(iv.hi);
      } else {
        u.parts_.push_back(std::move(iv));
      }
    }
    return u;
  }

  [[nodiscard]] const std::vector<Interval>& intervals() const { return parts_; }
  [[nodiscard]] std::size_t size() const { return parts_.size(); }
  [[nodiscard]] bool empty() const { return parts_.empty(); }
  [[nodiscard]] const Interval& operator[](std::size_t i) const { return parts_[i]; }

  [[nodiscard]] Rational total_length() const {
    Rational s;
    for (const auto& iv : parts_) s += iv.length();
    return s;
  }

  /// True when `iv` lies inside a single component.
  [[nodiscard]] bool covers(const Interval& iv) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), iv.lo,
                               [](const Rational& x, const Interval& p) { return x < p.lo; });
    if (it == parts_.begin()) return false;
    return std::prev(it)->contains(iv);
  }
  [[nodiscard]] bool contains(const Rational& x) const { return covers(Interval(x, x)); }

  [[nodiscard]] bool is_subset_of(const IntervalUnion& other) const {
    return std::all_of(parts_.begin(), parts_.end(),
                       [&](const Interval& iv) { return other.covers(iv); });
  }

  /// Exact intersection (linear merge).
  [[nodiscard]] IntervalUnion intersect(const IntervalUnion& other) const {
    std::vector<Interval> out;
    std::size_t i = 0;
    std::size_t j = 0;
    const auto& a = parts_;
    const auto& b = other.parts_;
    while (i < a.size() && j < b.size()) {
      Rational lo = max(a[i].lo, b[j].lo);
      Rational hi = min(a[i].hi, b[j].hi);
      if (lo <= hi) out.emplace_back(std::move(lo), std::move(hi));
      if (a[i].hi < b[j].hi) ++i; else ++j;
    }
    return normalize(std::move(out));
  }

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<Interval> parts_;
};

/// Minimal sorted disjoint representation of the union; touching intervals merge.
inline IntervalUnion normalize_union(std::vector<Interval> raw) {
  return IntervalUnion::normalize(std::move(raw));
}

}  // namespace cantorkit
