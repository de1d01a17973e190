#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cantorkit/interval.hpp"
#include "cantorkit/rational.hpp"

namespace cantorkit {

/// x ↦ t + lambda·x with lambda ≠ 0.
struct AffineMap1D {
  Rational t;
  Rational lambda{1};

  AffineMap1D() = default;
  AffineMap1D(Rational shift, Rational scale) : t(std::move(shift)), lambda(std::move(scale)) {
    if (lambda.is_zero()) throw std::invalid_argument("affine map with lambda = 0");
  }

  [[nodiscard]] Rational operator()(const Rational& x) const { return t + lambda * x; }
  [[nodiscard]] Interval operator()(const Interval& iv) const {
    Rational a = (*this)(iv.lo);
    Rational b = (*this)(iv.hi);
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
  }
  /// (*this) ∘ inner
  [[nodiscard]] AffineMap1D after(const AffineMap1D& inner) const {
    return {t + lambda * inner.t, lambda * inner.lambda};
  }
  [[nodiscard]] AffineMap1D inverse() const { return {-t / lambda, Rational(1) / lambda}; }

  friend bool operator==(const AffineMap1D&, const AffineMap1D&) = default;
};

/// Similarity x ↦ rho·x + b.
struct ContractionMap {
  Rational rho;
  Rational b;
  friend bool operator==(const ContractionMap&, const ContractionMap&) = default;
};

/// Rotation-free iterated function system on the line with ratios in (0,1).
class IFS1D {
 public:
  explicit IFS1D(std::vector<ContractionMap> maps) : maps_(std::move(maps)) {
    for (std::size_t i = 0; i < maps_.size(); ++i) {
      const auto& m = maps_[i];
      if (m.rho.sign() <= 0 || m.rho >= Rational(1))
        throw std::invalid_argument("maps[" + std::to_string(i) + "].rho: rho out of (0,1)");
    }
    if (maps_.size() < 2) throw std::invalid_argument("maps: an IFS needs at least 2 maps");
  }

  [[nodiscard]] const std::vector<ContractionMap>& maps() const { return maps_; }
  [[nodiscard]] Rational fixed_point(std::size_t i) const {
    return maps_.at(i).b / (Rational(1) - maps_.at(i).rho);
  }

  friend bool operator==(const IFS1D&, const IFS1D&) = default;

 private:
  std::vector<ContractionMap> maps_;
};

struct DigitLevel {
  int base = 2;
  std::vector<int> digits;  // sorted, unique
  friend bool operator==(const DigitLevel&, const DigitLevel&) = default;
};

/// Digit-expansion Cantor set  { Σ d_j / (N_1⋯N_j) : d_j ∈ D_j }.
/// The level list repeats cyclically; a fixed-base set has a single level.
class DigitSetPresentation {
 public:
  explicit DigitSetPresentation(std::vector<DigitLevel> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw std::invalid_argument("digit set needs at least one level");
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      auto& lv = levels_[j];
      const std::string where = "levels[" + std::to_string(j) + "]";
      if (lv.base < 2) throw std::invalid_argument(where + ".base: base must be >= 2");
      std::sort(lv.digits.begin(), lv.digits.end());
      lv.digits.erase(std::unique(lv.digits.begin(), lv.digits.end()), lv.digits.end());
      for (int d : lv.digits)
        if (d < 0 || d >= lv.base)
          throw std::invalid_argument(where + ".digits: digit " + std::to_string(d) +
                                      " out of range for base " + std::to_string(lv.base));
      if (lv.digits.size() < 2) throw std::invalid_argument(where + ".digits: need at least 2 digits");
    }
  }

  static DigitSetPresentation fixed_base(int base, std::vector<int> digits) {
    return DigitSetPresentation({DigitLevel{base, std::move(digits)}});
  }
  /// {0,…,N−1} \ {j}
  static DigitSetPresentation omitting(int base, int omitted) {
    if (omitted < 0 || omitted >= base)
      throw std::invalid_argument("omitted digit " + std::to_string(omitted) + " out of range for base " +
                                  std::to_string(base));
    std::vector<int> d;
    for (int i = 0; i < base; ++i)
      if (i != omitted) d.push_back(i);
    return fixed_base(base, std::move(d));
  }

  [[nodiscard]] const std::vector<DigitLevel>& levels() const { return levels_; }
  [[nodiscard]] const DigitLevel& level(std::size_t depth) const { return levels_[depth % levels_.size()]; }
  [[nodiscard]] bool is_fixed_base() const { return levels_.size() == 1; }

  friend bool operator==(const DigitSetPresentation&, const DigitSetPresentation&) = default;

 private:
  std::vector<DigitLevel> levels_;
};

/// A finitely presented Cantor set: generator plus optional affine post-map.
class CantorPresentation {
 public:
  using Generator = std::variant<IFS1D, DigitSetPresentation>;

  CantorPresentation(Generator gen, std::optional<AffineMap1D> post = std::nullopt)  // NOLINT
      : gen_(std::move(gen)), post_(std::move(post)) {}
  CantorPresentation(IFS1D ifs) : gen_(std::move(ifs)) {}                  // NOLINT
  CantorPresentation(DigitSetPresentation ds) : gen_(std::move(ds)) {}     // NOLINT

  [[nodiscard]] const Generator& generator() const { return gen_; }
  [[nodiscard]] const std::optional<AffineMap1D>& post_map() const { return post_; }
  [[nodiscard]] AffineMap1D effective_post_map() const { return post_.value_or(AffineMap1D{}); }
  [[nodiscard]] bool is_ifs() const { return std::holds_alternative<IFS1D>(gen_); }
  [[nodiscard]] bool is_digits() const { return std::holds_alternative<DigitSetPresentation>(gen_); }

  friend bool operator==(const CantorPresentation&, const CantorPresentation&) = default;

 private:
  Generator gen_;
  std::optional<AffineMap1D> post_;
};

/// A generation-`depth` cylinder: the image of the phase hull under x ↦ offset + scale·x,
/// already in world coordinates (post-map included, so scale may be negative).
struct Cylinder {
  Rational offset;
  Rational scale;
  std::size_t depth = 0;
};

/// Level-indexed contraction system shared by IFS and digit presentations.
/// Level s (mod period) maps are applied to generation-s cylinders to obtain generation s+1.
class CylinderSystem {
 public:
  explicit CylinderSystem(const CantorPresentation& set) : post_(set.effective_post_map()) {
    if (const auto* ifs = std::get_if<IFS1D>(&set.generator())) {
      levels_.push_back(ifs->maps());
      Rational lo = ifs->fixed_point(0);
      Rational hi = lo;
      for (std::size_t i = 1; i < ifs->maps().size(); ++i) {
        Rational p = ifs->fixed_point(i);
        lo = min(lo, p);
        hi = max(hi, p);
      }
      hulls_.emplace_back(lo, hi);
      return;
    }
    const auto& ds = std::get<DigitSetPresentation>(set.generator());
    for (const auto& lv : ds.levels()) {
      std::vector<ContractionMap> maps;
      Rational rho(mpz_class(1), mpz_class(lv.base));
      for (int d : lv.digits) maps.push_back({rho, Rational(d) * rho});
      levels_.push_back(std::move(maps));
    }
    // Hull endpoints solve L_s = (min D_s + L_{s+1}) / N_s around the cycle.
    auto endpoints = [&](bool use_min) {
      const std::size_t p = ds.levels().size();
      // Compose A_0 ∘ A_1 ∘ … ∘ A_{p−1} as x ↦ a·x + c.
      Rational a(1);
      Rational c(0);
      for (std::size_t s = p; s-- > 0;) {
        const auto& lv = ds.levels()[s];
        Rational inv(mpz_class(1), mpz_class(lv.base));
        Rational dig(use_min ? lv.digits.front() : lv.digits.back());
        // A_s(a x + c) = (dig + a x + c) / N
        c = (dig + c) * inv;
        a = a * inv;
      }
      std::vector<Rational> pts(p);
      pts[0] = c / (Rational(1) - a);
      for (std::size_t s = p; s-- > 1;) {
        // L_s from L_{s+1 mod p}; walk backwards from L_0 = L_p.
        const auto& lv = ds.levels()[s];
        const Rational& next = (s + 1 == p) ? pts[0] : pts[s + 1];
        Rational dig(use_min ? lv.digits.front() : lv.digits.back());
        pts[s] = (dig + next) / Rational(lv.base);
      }
      return pts;
    };
    auto lows = endpoints(true);
    auto highs = endpoints(false);
    for (std::size_t s = 0; s < lows.size(); ++s) hulls_.emplace_back(lows[s], highs[s]);
  }

  [[nodiscard]] std::size_t period() const { return levels_.size(); }
  [[nodiscard]] const std::vector<ContractionMap>& level_maps(std::size_t depth) const {
    return levels_[depth % levels_.size()];
  }
  [[nodiscard]] const Interval& phase_hull(std::size_t depth) const { return hulls_[depth % hulls_.size()]; }

  [[nodiscard]] Cylinder root() const { return {post_.t, post_.lambda, 0}; }

  [[nodiscard]] Interval interval(const Cylinder& c) const {
    const Interval& h = phase_hull(c.depth);
    Rational a = c.offset + c.scale * h.lo;
    Rational b = c.offset + c.scale * h.hi;
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
  }

  [[nodiscard]] std::vector<Cylinder> children(const Cylinder& c) const {
    std::vector<Cylinder> out;
    const auto& maps = level_maps(c.depth);
    out.reserve(maps.size());
    for (const auto& m : maps) out.push_back({c.offset + c.scale * m.b, c.scale * m.rho, c.depth + 1});
    return out;
  }

  /// All distinct generation-k cylinders. Cylinders with equal (offset, scale) have identical
  /// subtrees, so duplicates are dropped at every generation.
  [[nodiscard]] std::vector<Cylinder> generation(std::size_t k) const {
    std::vector<Cylinder> cur{root()};
    for (std::size_t d = 0; d < k; ++d) cur = next_generation(cur);
    return cur;
  }

  [[nodiscard]] std::vector<Cylinder> next_generation(const std::vector<Cylinder>& cur) const {
    std::vector<Cylinder> next;
    for (const auto& c : cur)
      for (auto& ch : children(c)) next.push_back(std::move(ch));
    std::sort(next.begin(), next.end(), [](const Cylinder& a, const Cylinder& b) {
      if (a.offset != b.offset) return a.offset < b.offset;
      return a.scale < b.scale;
    });
    next.erase(std::unique(next.begin(), next.end(),
                           [](const Cylinder& a, const Cylinder& b) {
                             return a.offset == b.offset && a.scale == b.scale;
                           }),
               next.end());
    return next;
  }

  [[nodiscard]] IntervalUnion cover_of(const std::vector<Cylinder>& cyls) const {
    std::vector<Interval> raw;
    raw.reserve(cyls.size());
    for (const auto& c : cyls) raw.push_back(interval(c));
    return normalize_union(std::move(raw));
  }

 private:
  AffineMap1D post_;
  std::vector<std::vector<ContractionMap>> levels_;
  std::vector<Interval> hulls_;
};

inline Interval convex_hull(const CantorPresentation& set) {
  CylinderSystem sys(set);
  return sys.interval(sys.root());
}

/// Union of the generation-k cylinders; depth 0 is the convex hull.
inline IntervalUnion depth_cover(const CantorPresentation& set, std::size_t k) {
  CylinderSystem sys(set);
  return sys.cover_of(sys.generation(k));
}

/// depth_cover for every depth 0..k, sharing the cylinder enumeration.
inline std::vector<IntervalUnion> depth_covers(const CantorPresentation& set, std::size_t k) {
  CylinderSystem sys(set);
  std::vector<IntervalUnion> out;
  std::vector<Cylinder> cur{sys.root()};
  out.push_back(sys.cover_of(cur));
  for (std::size_t d = 0; d < k; ++d) {
    cur = sys.next_generation(cur);
    out.push_back(sys.cover_of(cur));
  }
  return out;
}

inline CantorPresentation affine_image(const CantorPresentation& set, const AffineMap1D& map) {
  if (map.lambda.is_zero()) throw std::invalid_argument("affine map with lambda = 0");
  return {set.generator(), map.after(set.effective_post_map())};
}

/// One digit set per base, or a single digit set shared by every level.
inline CantorPresentation digit_presentation(const std::vector<int>& bases,
                                             const std::vector<std::vector<int>>& digit_sets) {
  if (bases.empty()) throw std::invalid_argument("digit presentation needs at least one base");
  if (digit_sets.size() != bases.size() && digit_sets.size() != 1)
    throw std::invalid_argument("digit presentation: " + std::to_string(digit_sets.size()) +
                                " digit sets for " + std::to_string(bases.size()) + " bases");
  std::vector<DigitLevel> levels;
  for (std::size_t j = 0; j < bases.size(); ++j)
    levels.push_back({bases[j], digit_sets.size() == 1 ? digit_sets[0] : digit_sets[j]});
  return DigitSetPresentation(std::move(levels));
}

/// (N, j) when the set is, up to its post-map, the base-N set omitting the single digit j
/// with 1 ≤ j ≤ N−2. IFS presentations with maps x/N + d/N are recognised as well.
inline std::optional<std::pair<int, int>> omitted_digit_parameters(const CantorPresentation& set) {
  int base = 0;
  std::vector<int> digits;
  if (const auto* ds = std::get_if<DigitSetPresentation>(&set.generator())) {
    if (!ds->is_fixed_base()) return std::nullopt;
    base = ds->levels()[0].base;
    digits = ds->levels()[0].digits;
  } else {
    const auto& maps = std::get<IFS1D>(set.generator()).maps();
    const Rational rho = maps[0].rho;
    if (rho.numerator() != 1 || !rho.denominator().fits_sint_p()) return std::nullopt;
    base = static_cast<int>(rho.denominator().get_si());
    std::set<int> seen;
    for (const auto& m : maps) {
      if (m.rho != rho) return std::nullopt;
      Rational d = m.b / rho;
      if (!d.is_integer() || d.sign() < 0 || d >= Rational(base)) return std::nullopt;
      seen.insert(static_cast<int>(d.numerator().get_si()));
    }
    if (seen.size() != maps.size()) return std::nullopt;
    digits.assign(seen.begin(), seen.end());
  }
  if (static_cast<int>(digits.size()) != base - 1) return std::nullopt;
  int j = 0;
  while (j < static_cast<int>(digits.size()) && digits[j] == j) ++j;
  if (j < 1 || j > base - 2) return std::nullopt;
  return std::pair{base, j};
}

/// Total length of depth_cover(set, k). Digit sets use count × cylinder length (cylinders of
/// one generation have disjoint interiors), so large k stays cheap; IFS sets are enumerated.
inline Rational cover_measure(const CantorPresentation& set, std::size_t k) {
  if (const auto* ds = std::get_if<DigitSetPresentation>(&set.generator())) {
    CylinderSystem sys(set);
    Rational scale = abs(set.effective_post_map().lambda);
    for (std::size_t d = 0; d < k; ++d) {
      const auto& lv = ds->level(d);
      scale *= Rational(mpz_class(static_cast<long>(lv.digits.size())), mpz_class(lv.base));
    }
    return scale * sys.phase_hull(k).length();
  }
  return depth_cover(set, k).total_length();
}

}  // namespace cantorkit
