#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "cantorkit/cantorset.hpp"
#include "cantorkit/interval.hpp"
#include "cantorkit/rational.hpp"

namespace cantorkit {

/// Bounded gap (lo, hi) of the set, first visible at generation `birth_depth`.
struct GapRecord {
  Rational lo;
  Rational hi;
  std::size_t birth_depth = 0;

  [[nodiscard]] Rational length() const { return hi - lo; }
  friend bool operator==(const GapRecord&, const GapRecord&) = default;
};

enum class Side { Left, Right };

inline const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

struct BridgeRecord {
  GapRecord gap;
  Rational boundary_point;
  Side side = Side::Right;
  Interval bridge;

  [[nodiscard]] Rational ratio() const { return bridge.length() / gap.length(); }
};

/// A bridge of zero length; only possible when a gap abuts the hull or another larger gap.
class DegenerateBridge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thickness value: a nonnegative rational or +∞.
struct ThicknessValue {
  bool infinite = false;
  Rational value;

  static ThicknessValue infinity() { return {true, Rational(0)}; }
  [[nodiscard]] std::string str() const { return infinite ? "INFINITE" : value.str(); }
  friend bool operator==(const ThicknessValue&, const ThicknessValue&) = default;
};

inline ThicknessValue operator*(const ThicknessValue& a, const ThicknessValue& b) {
  if (a.infinite || b.infinite) {
    // ∞·0 does not arise for presented sets; treat it as 0 so no certificate is issued from it.
    if ((!a.infinite && a.value.is_zero()) || (!b.infinite && b.value.is_zero())) return {false, Rational(0)};
    return ThicknessValue::infinity();
  }
  return {false, a.value * b.value};
}

enum class ThicknessCertificate { None, ClosedForm, Stabilized, IntervalComponent };

inline const char* to_string(ThicknessCertificate c) {
  switch (c) {
    case ThicknessCertificate::ClosedForm: return "closed_form";
    case ThicknessCertificate::Stabilized: return "stabilized";
    case ThicknessCertificate::IntervalComponent: return "interval_component";
    case ThicknessCertificate::None: break;
  }
  return "none";
}

struct ThicknessReport {
  ThicknessValue tau;
  std::size_t depth_used = 0;
  bool exact = false;
  ThicknessCertificate certificate = ThicknessCertificate::None;
  std::optional<BridgeRecord> witness;
};

namespace detail {

inline std::vector<GapRecord> gaps_in(const IntervalUnion& cover, std::size_t depth) {
  std::vector<GapRecord> out;
  const auto& iv = cover.intervals();
  for (std::size_t i = 1; i < iv.size(); ++i) out.push_back({iv[i - 1].hi, iv[i].lo, depth});
  return out;
}

/// Gaps of covers.back(), with births resolved against the earlier covers.
inline std::vector<GapRecord> gaps_with_births(const std::vector<IntervalUnion>& covers) {
  std::vector<GapRecord> prev;
  for (std::size_t d = 1; d < covers.size(); ++d) {
    auto cur = gaps_in(covers[d], d);
    std::size_t p = 0;
    for (auto& g : cur) {
      while (p < prev.size() && prev[p].lo < g.lo) ++p;
      if (p < prev.size() && prev[p].lo == g.lo && prev[p].hi == g.hi) g.birth_depth = prev[p].birth_depth;
    }
    prev = std::move(cur);
  }
  return prev;
}

/// Left and right bridges of every gap (gaps sorted by position), via next-greater-or-equal scans.
inline std::vector<std::pair<Interval, Interval>> all_bridges(const std::vector<GapRecord>& gaps,
                                                              const Interval& hull) {
  const std::size_t m = gaps.size();
  std::vector<Rational> right_end(m, hull.hi);
  std::vector<Rational> left_end(m, hull.lo);
  std::vector<std::size_t> stack;
  for (std::size_t i = m; i-- > 0;) {
    while (!stack.empty() && gaps[stack.back()].length() < gaps[i].length()) stack.pop_back();
    if (!stack.empty()) right_end[i] = gaps[stack.back()].lo;
    stack.push_back(i);
  }
  stack.clear();
  for (std::size_t i = 0; i < m; ++i) {
    while (!stack.empty() && gaps[stack.back()].length() < gaps[i].length()) stack.pop_back();
    if (!stack.empty()) left_end[i] = gaps[stack.back()].hi;
    stack.push_back(i);
  }
  std::vector<std::pair<Interval, Interval>> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    out.emplace_back(Interval(left_end[i], gaps[i].lo), Interval(gaps[i].hi, right_end[i]));
  return out;
}

struct GapBridgeTable {
  std::vector<GapRecord> gaps;
  std::vector<std::pair<Interval, Interval>> bridges;
};

inline GapBridgeTable table_at(const std::vector<IntervalUnion>& covers, std::size_t depth) {
  std::vector<IntervalUnion> prefix(covers.begin(), covers.begin() + static_cast<std::ptrdiff_t>(depth + 1));
  GapBridgeTable t;
  t.gaps = gaps_with_births(prefix);
  t.bridges = all_bridges(t.gaps, covers[0][0]);
  return t;
}

/// Minimum |C|/|U| over both sides of every gap; nullopt when there are no gaps.
inline std::optional<BridgeRecord> thinnest(const GapBridgeTable& t) {
  std::optional<BridgeRecord> best;
  for (std::size_t i = 0; i < t.gaps.size(); ++i) {
    const auto& g = t.gaps[i];
    for (Side s : {Side::Left, Side::Right}) {
      const Interval& br = s == Side::Left ? t.bridges[i].first : t.bridges[i].second;
      BridgeRecord rec{g, s == Side::Left ? g.lo : g.hi, s, br};
      if (br.length().is_zero())
        throw DegenerateBridge("zero-length bridge at " + rec.boundary_point.str() + " of gap (" + g.lo.str() +
                               "," + g.hi.str() + ")");
      if (!best || rec.ratio() < best->ratio()) best = rec;
    }
  }
  return best;
}

}  // namespace detail

/// Bounded components of hull \ depth_cover(k), sorted by position, each with its birth depth.
inline std::vector<GapRecord> extract_gaps(const CantorPresentation& set, std::size_t k) {
  return detail::gaps_with_births(depth_covers(set, k));
}

/// Longest bounded gap length at depth k (0 when there is none).
inline Rational longest_gap(const CantorPresentation& set, std::size_t k) {
  Rational best;
  for (const auto& g : detail::gaps_in(depth_cover(set, k), k)) best = max(best, g.length());
  return best;
}

/// Bridge of `gap` on the given side at working depth k: the maximal closed interval from the
/// gap's boundary point that meets no depth-≤k gap at least as long, clipped to the hull.
inline BridgeRecord bridge_at(const CantorPresentation& set, const GapRecord& gap, Side side, std::size_t k) {
  auto covers = depth_covers(set, k);
  auto gaps = detail::gaps_with_births(covers);
  auto it = std::find_if(gaps.begin(), gaps.end(),
                         [&](const GapRecord& g) { return g.lo == gap.lo && g.hi == gap.hi; });
  if (it == gaps.end())
    throw std::invalid_argument("(" + gap.lo.str() + "," + gap.hi.str() + ") is not a depth-" + std::to_string(k) +
                                " gap");
  const Interval hull = covers[0][0];
  const Rational len = it->length();
  BridgeRecord rec{*it, side == Side::Right ? it->hi : it->lo, side, {}};
  if (side == Side::Right) {
    Rational end = hull.hi;
    for (auto j = std::next(it); j != gaps.end(); ++j)
      if (j->length() >= len) {
        end = j->lo;
        break;
      }
    rec.bridge = Interval(it->hi, end);
  } else {
    Rational start = hull.lo;
    for (auto j = it; j != gaps.begin();) {
      --j;
      if (j->length() >= len) {
        start = j->hi;
        break;
      }
    }
    rec.bridge = Interval(start, it->lo);
  }
  if (rec.bridge.length().is_zero())
    throw DegenerateBridge("zero-length bridge at " + rec.boundary_point.str());
  return rec;
}

/// Newhouse thickness over the gaps visible at depth k.
///
/// `exact` is set when the closed form min{j, N−j−1} applies to a base-N omitted-digit set (and
/// agrees with the computed value), when the gap/bridge pattern is certified to repeat under the
/// branch ratios, or when the cover is stationary (the set is an interval, τ = ∞).
inline ThicknessReport newhouse_thickness(const CantorPresentation& set, std::size_t k) {
  if (k == 0) throw std::invalid_argument("newhouse_thickness needs depth >= 1 (no gaps at depth 0)");
  ThicknessReport rep;
  rep.depth_used = k;

  if (auto params = omitted_digit_parameters(set)) {
    auto covers = depth_covers(set, k);
    auto table = detail::table_at(covers, k);
    rep.witness = detail::thinnest(table);
    rep.tau = {false, rep.witness->ratio()};
    const auto [n, j] = *params;
    rep.exact = rep.tau.value == Rational(std::min(j, n - j - 1));
    if (rep.exact) rep.certificate = ThicknessCertificate::ClosedForm;
    return rep;
  }

  CylinderSystem sys(set);
  const std::size_t p = sys.period();
  const std::size_t work = k + 2 * p - 1;
  auto covers = depth_covers(set, work);

  // Interval component: a depth-k cover interval survives refinement unchanged.
  const auto& next = covers[k + 1].intervals();
  for (const auto& iv : covers[k].intervals()) {
    auto hit = std::lower_bound(next.begin(), next.end(), iv,
                                [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    if (hit != next.end() && *hit == iv) {
      rep.tau = ThicknessValue::infinity();
      rep.exact = k % p == 0 && covers[k] == covers[k + p];
      if (rep.exact) rep.certificate = ThicknessCertificate::IntervalComponent;
      return rep;
    }
  }

  auto table_k = detail::table_at(covers, k);
  rep.witness = detail::thinnest(table_k);
  if (!rep.witness) {
    rep.tau = ThicknessValue::infinity();
    return rep;
  }
  rep.tau = {false, rep.witness->ratio()};

  // Stabilization, per phase d in [k, k+p): triples born at depth d+p are the depth-d triples
  // scaled by every branch word of length p.
  auto table_w = detail::table_at(covers, work);
  auto best_w = detail::thinnest(table_w);
  if (!best_w || best_w->ratio() != rep.tau.value) return rep;
  using Triple = std::tuple<Rational, Rational, Rational>;
  bool any = false;
  for (std::size_t d = k; d < k + p; ++d) {
    std::vector<Triple> born_d;
    std::vector<Triple> born_dp;
    for (std::size_t i = 0; i < table_w.gaps.size(); ++i) {
      const auto& g = table_w.gaps[i];
      Triple t{g.length(), table_w.bridges[i].first.length(), table_w.bridges[i].second.length()};
      if (g.birth_depth == d) born_d.push_back(t);
      if (g.birth_depth == d + p) born_dp.push_back(t);
    }
    any = any || !born_d.empty();
    std::vector<Rational> word_scales{Rational(1)};
    for (std::size_t e = d; e < d + p; ++e) {
      std::vector<Rational> next;
      for (const auto& s : word_scales)
        for (const auto& m : sys.level_maps(e)) next.push_back(s * m.rho);
      word_scales = std::move(next);
    }
    std::vector<Triple> predicted;
    for (const auto& s : word_scales)
      for (const auto& [g, l, r] : born_d) predicted.emplace_back(g * s, l * s, r * s);
    std::sort(predicted.begin(), predicted.end());
    std::sort(born_dp.begin(), born_dp.end());
    if (predicted != born_dp) return rep;
  }
  if (any) {
    rep.exact = true;
    rep.certificate = ThicknessCertificate::Stabilized;
  }
  return rep;
}

enum class ProbeKind { BeyondBridge, InBridge, Grid };

inline const char* to_string(ProbeKind k) {
  switch (k) {
    case ProbeKind::BeyondBridge: return "beyond_bridge";
    case ProbeKind::InBridge: return "in_bridge";
    case ProbeKind::Grid: break;
  }
  return "grid";
}

struct ProbePoint {
  Rational x;
  Rational r;
};

/// One evaluation of sup{c : conv(B(x,r) ∩ E) ⊇ B(y, c·r)} with B the open ball.
struct FengWuProbe {
  Rational x;
  Rational r;
  Rational value;
  bool exact = false;
  ProbeKind kind = ProbeKind::Grid;
  std::optional<BridgeRecord> bridge;  // critical probes only
  bool claim_holds = true;              // τ(E,u) = 2·value (beyond) or τ(E,u) ≥ 1 (in bridge)
};

struct FengWuReport {
  Rational tau_upper;  // infimum over probes: an upper estimate of τ_FW
  std::optional<std::size_t> witness;
  std::vector<FengWuProbe> probes;
  bool newhouse_infinite = false;
  std::size_t depth_used = 0;

  [[nodiscard]] bool claim_holds() const {
    return std::all_of(probes.begin(), probes.end(), [](const FengWuProbe& p) { return p.claim_holds; });
  }
};

namespace detail {

/// conv(cover ∩ (x−r, x+r)) half-length over r. Exact when both ends of the hull are set points
/// (cover-interval endpoints) or the cover is known to be the set itself.
inline std::pair<Rational, bool> feng_wu_value(const IntervalUnion& cover, const Rational& x, const Rational& r,
                                               bool cover_is_set) {
  const Rational a = x - r;
  const Rational b = x + r;
  const Interval* first = nullptr;
  const Interval* last = nullptr;
  for (const auto& iv : cover.intervals()) {
    if (iv.hi > a && iv.lo < b) {
      if (!first) first = &iv;
      last = &iv;
    }
  }
  if (!first) return {Rational(0), cover_is_set};
  // A cover endpoint inside the closed window is a set point approached from within the window.
  const bool exact = cover_is_set || (first->lo >= a && last->hi <= b);
  const Rational lo = max(first->lo, a);
  const Rational hi = min(last->hi, b);
  return {(hi - lo) / (Rational(2) * r), exact};
}

}  // namespace detail

/// Feng–Wu thickness probes at depth k: the critical probes (u, |U|) at every bounded-gap boundary
/// on its bridge side, plus `extra` user probes. Reports the infimum as an upper estimate.
inline FengWuReport feng_wu_thickness(const CantorPresentation& set, std::size_t k,
                                      const std::vector<ProbePoint>& extra = {}) {
  if (k == 0) throw std::invalid_argument("feng_wu_thickness needs depth >= 1");
  FengWuReport rep;
  rep.depth_used = k;
  auto covers = depth_covers(set, k + 1);
  const IntervalUnion& cover = covers[k];
  const Interval hull = covers[0][0];
  rep.newhouse_infinite = newhouse_thickness(set, k).tau.infinite;
  const bool cover_is_set = rep.newhouse_infinite && covers[k] == covers[k + 1];

  auto table = detail::table_at(covers, k);
  for (std::size_t i = 0; i < table.gaps.size(); ++i) {
    const auto& g = table.gaps[i];
    for (Side s : {Side::Left, Side::Right}) {
      const Interval& br = s == Side::Left ? table.bridges[i].first : table.bridges[i].second;
      BridgeRecord rec{g, s == Side::Left ? g.lo : g.hi, s, br};
      FengWuProbe probe;
      probe.x = rec.boundary_point;
      probe.r = g.length();
      auto [v, ex] = detail::feng_wu_value(cover, probe.x, probe.r, cover_is_set);
      probe.value = v;
      probe.exact = ex;
      probe.kind = br.length() < g.length() ? ProbeKind::BeyondBridge : ProbeKind::InBridge;
      probe.claim_holds = probe.kind == ProbeKind::BeyondBridge ? rec.ratio() == Rational(2) * v
                                                                : rec.ratio() >= Rational(1);
      probe.bridge = rec;
      rep.probes.push_back(std::move(probe));
    }
  }
  std::vector<ProbePoint> grid = extra;
  if (rep.probes.empty() && grid.empty())
    grid.push_back({(hull.lo + hull.hi) / Rational(2), hull.length() / Rational(2)});
  for (const auto& pp : grid) {
    if (!cover.contains(pp.x))
      throw std::invalid_argument("probe centre " + pp.x.str() + " is outside the depth-" + std::to_string(k) +
                                  " cover");
    if (pp.r.sign() <= 0 || pp.r > hull.length())
      throw std::invalid_argument("probe radius " + pp.r.str() + " outside (0, |E|]");
    FengWuProbe probe;
    probe.x = pp.x;
    probe.r = pp.r;
    auto [v, ex] = detail::feng_wu_value(cover, pp.x, pp.r, cover_is_set);
    probe.value = v;
    probe.exact = ex;
    rep.probes.push_back(std::move(probe));
  }
  for (std::size_t i = 0; i < rep.probes.size(); ++i)
    if (!rep.witness || rep.probes[i].value < rep.probes[*rep.witness].value) rep.witness = i;
  rep.tau_upper = rep.probes[*rep.witness].value;
  return rep;
}

}  // namespace cantorkit
