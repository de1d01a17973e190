#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cantorkit/cantorset.hpp"
#include "cantorkit/highdim.hpp"
#include "cantorkit/rational.hpp"

namespace cantorkit {

struct Breakpoint {
  Rational x;
  Rational y;
  friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

/// Continuous nondecreasing piecewise-linear gauge on [0, x_max] with h(0) = 0 and x_max ≤ 1.
class GaugeFn {
 public:
  explicit GaugeFn(std::vector<Breakpoint> pts) : pts_(std::move(pts)) {
    if (pts_.size() < 2) throw std::invalid_argument("gauge needs at least 2 breakpoints");
    if (!pts_[0].x.is_zero() || !pts_[0].y.is_zero()) throw std::invalid_argument("gauge must start at (0,0)");
    for (std::size_t i = 1; i < pts_.size(); ++i) {
      const std::string where = "breakpoints[" + std::to_string(i) + "]";
      if (pts_[i].x <= pts_[i - 1].x) throw std::invalid_argument(where + ": x must be strictly increasing");
      if (pts_[i].y < pts_[i - 1].y) throw std::invalid_argument(where + ": gauge must be nondecreasing");
    }
    if (pts_.back().x > Rational(1)) throw std::invalid_argument("gauge domain exceeds [0,1]");
  }

  static GaugeFn identity() { return GaugeFn({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}}); }

  [[nodiscard]] const std::vector<Breakpoint>& breakpoints() const { return pts_; }
  [[nodiscard]] const Rational& domain_end() const { return pts_.back().x; }
  [[nodiscard]] const Rational& max_value() const { return pts_.back().y; }

  [[nodiscard]] Rational operator()(const Rational& x) const {
    if (x.sign() < 0 || x > domain_end())
      throw std::domain_error("gauge argument " + x.str() + " outside [0," + domain_end().str() + "]");
    for (std::size_t i = 1; i < pts_.size(); ++i) {
      if (x <= pts_[i].x) {
        const auto& a = pts_[i - 1];
        const auto& b = pts_[i];
        return a.y + (x - a.x) * (b.y - a.y) / (b.x - a.x);
      }
    }
    return pts_.back().y;
  }

  friend bool operator==(const GaugeFn&, const GaugeFn&) = default;

 private:
  std::vector<Breakpoint> pts_;
};

/// W(s) = sup{t : h(t) ≤ s}; the right end of any plateau at height s.
inline Rational pseudo_inverse_W(const GaugeFn& h, const Rational& s) {
  if (s.sign() < 0) throw std::domain_error("W(s) needs s >= 0, got " + s.str());
  if (s > h.max_value())
    throw std::domain_error("W(s): s = " + s.str() + " exceeds h(max) = " + h.max_value().str());
  const auto& pts = h.breakpoints();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].y > s) {
      const auto& a = pts[i - 1];
      const auto& b = pts[i];
      return a.x + (s - a.y) * (b.x - a.x) / (b.y - a.y);
    }
  }
  return h.domain_end();
}

struct CoverSumTerm {
  Rational s;     // 2^{−(i+k)}
  Rational W;     // cube diameter; side W/√d
  Rational h_of_W;
};

struct CoverSumResult {
  Rational sum;
  std::size_t dimension = 1;
  std::vector<CoverSumTerm> terms;
};

/// Σ_{i=1}^{i_max} h(W(2^{−(i+k)})): the cover budget of the G_δ set built from cubes of diameter
/// W(2^{−(i+k)}) around an enumeration of ℚ^d. Equals 2^{−k}(1 − 2^{−i_max}).
inline CoverSumResult gdelta_cover_sum(const GaugeFn& h, long k, long i_max, std::size_t d = 1) {
  if (k < 1 || i_max < 1 || d < 1) throw std::invalid_argument("gdelta_cover_sum needs k, i_max, d >= 1");
  if (pow(Rational(2), -(1 + k)) > h.max_value())
    throw std::domain_error("2^-(1+k) exceeds the range of h");
  CoverSumResult res;
  res.dimension = d;
  for (long i = 1; i <= i_max; ++i) {
    CoverSumTerm t;
    t.s = pow(Rational(2), -(i + k));
    t.W = pseudo_inverse_W(h, t.s);
    t.h_of_W = h(t.W);
    res.sum += t.h_of_W;
    res.terms.push_back(std::move(t));
  }
  return res;
}

/// h_c(x) = h(c·x) on [0, min(1, x_max/c)].
inline GaugeFn scaled_gauge(const GaugeFn& h, const Rational& c) {
  if (c.sign() <= 0) throw std::invalid_argument("scaled_gauge needs c > 0, got " + c.str());
  const Rational end = min(Rational(1), h.domain_end() / c);
  std::vector<Breakpoint> pts;
  for (const auto& p : h.breakpoints()) {
    Rational x = p.x / c;
    if (x >= end) break;
    pts.push_back({x, p.y});
  }
  pts.push_back({end, h(end * c)});
  return GaugeFn(std::move(pts));
}

using TransportMap = std::variant<AffineMap1D, LinearMapD>;

struct TransportTerm {
  Rational diameter;         // |V_i|
  Rational pulled_back;      // certified bound on |T⁻¹V_i|
  Rational h_c;              // h_c(|V_i|)
  Rational h_pulled;         // h(bound)
  bool holds = false;        // h_c(|V_i|) ≥ h(bound)
};

struct TransportReport {
  Rational norm_bound;       // rational upper bound on ‖T⁻¹‖, ≤ c
  Rational sum_h_c;
  Rational sum_h_pulled;
  std::vector<TransportTerm> terms;

  [[nodiscard]] bool holds() const { return sum_h_c >= sum_h_pulled; }
  [[nodiscard]] bool equality() const { return sum_h_c == sum_h_pulled; }
};

namespace detail {

/// Rational upper bound on √x that is ≤ cap whenever √x ≤ cap (Newton from above).
inline Rational sqrt_upper(const Rational& x, const Rational& cap) {
  if (x.is_zero()) return Rational(0);
  Rational y = max(Rational(1), x);
  for (int it = 0; it < 8; ++it) {
    Rational next = (y + x / y) / Rational(2);
    if (next >= y) break;
    y = next;
  }
  return min(y, cap);
}

}  // namespace detail

/// Finite-cover form of H^{h_c}(T(E)) ≥ H^h(E): for a cover {V_i} of T(E) given by diameters,
/// each pulled-back set has diameter ≤ ‖T⁻¹‖·|V_i| ≤ c·|V_i|.
inline TransportReport cover_transport_check(const std::vector<Rational>& diameters, const TransportMap& T,
                                             const GaugeFn& h, const Rational& c) {
  if (c.sign() <= 0) throw std::invalid_argument("cover_transport_check needs c > 0");
  TransportReport rep;
  if (const auto* m = std::get_if<AffineMap1D>(&T)) {
    rep.norm_bound = abs(Rational(1) / m->lambda);
    if (rep.norm_bound > c)
      throw std::invalid_argument("||T^-1|| = " + rep.norm_bound.str() + " is not <= c = " + c.str());
  } else {
    const auto inv = std::get<LinearMapD>(T).inverse();
    const Rational prod = inv.norm_1() * inv.norm_inf();
    if (prod > c * c)
      throw std::invalid_argument("norm certificate ||M||_1·||M||_inf = " + prod.str() + " is not <= c^2 = " +
                                  (c * c).str());
    rep.norm_bound = detail::sqrt_upper(prod, c);
  }
  const GaugeFn hc = scaled_gauge(h, c);
  for (const auto& dia : diameters) {
    if (dia.sign() < 0) throw std::invalid_argument("negative diameter " + dia.str());
    TransportTerm t;
    t.diameter = dia;
    t.pulled_back = rep.norm_bound * dia;
    t.h_c = hc(dia);
    t.h_pulled = h(t.pulled_back);
    t.holds = t.h_c >= t.h_pulled;
    rep.sum_h_c += t.h_c;
    rep.sum_h_pulled += t.h_pulled;
    rep.terms.push_back(std::move(t));
  }
  return rep;
}

}  // namespace cantorkit
