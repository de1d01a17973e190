#pragma once

// Slow, independent reference computations used only by the tests. Nothing here calls the
// cylinder machinery, the bridge stacks or the certificates of the library.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "cantorkit/cantorset.hpp"
#include "cantorkit/highdim.hpp"

namespace oracle {

using cantorkit::Rational;
using Seg = std::pair<Rational, Rational>;

inline std::vector<Seg> merge(std::vector<Seg> v) {
  std::sort(v.begin(), v.end());
  std::vector<Seg> out;
  for (auto& s : v) {
    if (!out.empty() && s.first <= out.back().second) {
      if (s.second > out.back().second) out.back().second = s.second;
    } else {
      out.push_back(s);
    }
  }
  return out;
}

inline Seg apply_post(const cantorkit::CantorPresentation& set, const Seg& s) {
  const auto m = set.effective_post_map();
  Rational a = m.t + m.lambda * s.first;
  Rational b = m.t + m.lambda * s.second;
  if (b < a) std::swap(a, b);
  return {a, b};
}

/// Hull of the digit set started at phase `phase`: geometric series of min / max digits.
inline Seg digit_phase_hull(const cantorkit::DigitSetPresentation& ds, std::size_t phase) {
  const std::size_t p = ds.levels().size();
  Rational lo, hi, scale(1);
  for (std::size_t j = 0; j < p; ++j) {
    const auto& lv = ds.levels()[(phase + j) % p];
    scale /= Rational(lv.base);
    lo += Rational(lv.digits.front()) * scale;
    hi += Rational(lv.digits.back()) * scale;
  }
  // the tail repeats with factor `scale`
  return {lo / (Rational(1) - scale), hi / (Rational(1) - scale)};
}

/// Depth-k cover by enumerating every word.
inline std::vector<Seg> cover(const cantorkit::CantorPresentation& set, std::size_t k) {
  std::vector<Seg> pieces;
  if (const auto* ifs = std::get_if<cantorkit::IFS1D>(&set.generator())) {
    Rational lo, hi;
    bool first = true;
    for (const auto& m : ifs->maps()) {
      Rational fp = m.b / (Rational(1) - m.rho);
      if (first || fp < lo) lo = fp;
      if (first || fp > hi) hi = fp;
      first = false;
    }
    pieces.push_back({lo, hi});
    for (std::size_t d = 0; d < k; ++d) {
      std::vector<Seg> next;
      for (const auto& s : pieces)
        for (const auto& m : ifs->maps()) next.push_back({m.rho * s.first + m.b, m.rho * s.second + m.b});
      pieces = std::move(next);
    }
  } else {
    const auto& ds = std::get<cantorkit::DigitSetPresentation>(set.generator());
    std::vector<Rational> starts{Rational(0)};
    Rational scale(1);
    for (std::size_t d = 0; d < k; ++d) {
      const auto& lv = ds.level(d);
      scale /= Rational(lv.base);
      std::vector<Rational> next;
      for (const auto& x : starts)
        for (int dig : lv.digits) next.push_back(x + Rational(dig) * scale);
      starts = std::move(next);
    }
    const Seg ph = digit_phase_hull(ds, k % ds.levels().size());
    for (const auto& x : starts) pieces.push_back({x + ph.first * scale, x + ph.second * scale});
  }
  for (auto& s : pieces) s = apply_post(set, s);
  return merge(std::move(pieces));
}

inline std::vector<Seg> gaps(const std::vector<Seg>& cov) {
  std::vector<Seg> g;
  for (std::size_t i = 0; i + 1 < cov.size(); ++i) g.push_back({cov[i].second, cov[i + 1].first});
  return g;
}

struct Bridges {
  Rational left;
  Rational right;
};

/// Walk outward from each gap until a gap at least as long, or the hull end.
inline std::vector<Bridges> bridges(const std::vector<Seg>& cov) {
  const auto g = gaps(cov);
  std::vector<Bridges> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Rational len = g[i].second - g[i].first;
    Rational left_end = cov.front().first;
    for (std::size_t j = i; j-- > 0;)
      if (g[j].second - g[j].first >= len) {
        left_end = g[j].second;
        break;
      }
    Rational right_end = cov.back().second;
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (g[j].second - g[j].first >= len) {
        right_end = g[j].first;
        break;
      }
    out.push_back({g[i].first - left_end, right_end - g[i].second});
  }
  return out;
}

/// min over gaps of min(|left|,|right|)/|gap|; nullopt when there is no gap.
inline std::optional<Rational> thickness(const std::vector<Seg>& cov) {
  const auto g = gaps(cov);
  const auto b = bridges(cov);
  std::optional<Rational> best;
  for (std::size_t i = 0; i < g.size(); ++i) {
    Rational r = std::min(b[i].left, b[i].right) / (g[i].second - g[i].first);
    if (!best || r < *best) best = r;
  }
  return best;
}

/// Largest c with B(y, c·r) ⊂ conv(B(x,r) ∩ cover) for some y, using the open window.
inline Rational feng_wu(const std::vector<Seg>& cov, const Rational& x, const Rational& r) {
  const Rational a = x - r;
  const Rational b = x + r;
  std::optional<Rational> lo, hi;
  for (const auto& s : cov) {
    if (s.second <= a || s.first >= b) continue;
    Rational l = std::max(s.first, a);
    Rational h = std::min(s.second, b);
    if (!lo || l < *lo) lo = l;
    if (!hi || h > *hi) hi = h;
  }
  if (!lo) return Rational(0);
  return (*hi - *lo) / (Rational(2) * r);
}

/// First depth at which the two covers are disjoint, or nullopt if they meet at every depth ≤ k_max.
inline std::optional<std::size_t> first_disjoint_depth(const cantorkit::CantorPresentation& a,
                                                       const cantorkit::CantorPresentation& b, std::size_t k_max) {
  for (std::size_t d = 0; d <= k_max; ++d) {
    const auto ca = cover(a, d);
    const auto cb = cover(b, d);
    bool meet = false;
    for (const auto& x : ca)
      for (const auto& y : cb)
        if (x.first <= y.second && y.first <= x.second) meet = true;
    if (!meet) return d;
  }
  return std::nullopt;
}

/// x₁-shadow of the depth-k cells of a planar IFS whose hull is the unit square, after T.
inline std::vector<Seg> projected_cells(const cantorkit::IFSdD& ifs, const cantorkit::LinearMapD& T, std::size_t k) {
  struct Cell {
    Rational x, y, side;
  };
  std::vector<Cell> cells{{Rational(0), Rational(0), Rational(1)}};
  for (std::size_t d = 0; d < k; ++d) {
    std::vector<Cell> next;
    for (const auto& c : cells)
      for (const auto& m : ifs.maps()) next.push_back({m.rho * c.x + m.b[0], m.rho * c.y + m.b[1], m.rho * c.side});
    cells = std::move(next);
  }
  std::vector<Seg> out;
  for (const auto& c : cells) {
    std::vector<Rational> xs;
    for (int dx = 0; dx < 2; ++dx)
      for (int dy = 0; dy < 2; ++dy) {
        Rational px = c.x + Rational(dx) * c.side;
        Rational py = c.y + Rational(dy) * c.side;
        xs.push_back(T(0, 0) * px + T(0, 1) * py);
      }
    out.push_back({*std::min_element(xs.begin(), xs.end()), *std::max_element(xs.begin(), xs.end())});
  }
  return merge(std::move(out));
}

inline std::vector<Seg> segs(const cantorkit::IntervalUnion& u) {
  std::vector<Seg> out;
  for (const auto& iv : u.intervals()) out.push_back({iv.lo, iv.hi});
  return out;
}

/// Random rational p/q with |p| ≤ pmax, 1 ≤ q ≤ qmax.
inline Rational random_rational(std::mt19937_64& rng, long pmax, long qmax) {
  std::uniform_int_distribution<long> p(-pmax, pmax);
  std::uniform_int_distribution<long> q(1, qmax);
  return Rational(p(rng), q(rng));
}

}  // namespace oracle
