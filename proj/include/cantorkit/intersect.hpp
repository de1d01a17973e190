#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cantorkit/cantorset.hpp"
#include "cantorkit/interval.hpp"
#include "cantorkit/rational.hpp"
#include "cantorkit/thickness.hpp"

namespace cantorkit {

/// Sufficient "neither set sits in a gap of the other" test: hulls meet, |O₁| ≤ |I₂|, |O₂| ≤ |I₁|,
/// where O is the longest bounded gap at the working depth and I the convex hull.
struct LinkingCheck {
  Interval hull1;
  Interval hull2;
  bool hulls_overlap = false;
  bool o1_le_i2 = false;
  bool o2_le_i1 = false;
  Rational o1;
  Rational o2;
  Rational i1;
  Rational i2;

  [[nodiscard]] bool linked() const { return hulls_overlap && o1_le_i2 && o2_le_i1; }
};

enum class VerdictKind { Certified, Refuted, SurvivesTo, Inapplicable };

inline const char* to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::Certified: return "Certified";
    case VerdictKind::Refuted: return "Refuted";
    case VerdictKind::SurvivesTo: return "SurvivesTo";
    case VerdictKind::Inapplicable: break;
  }
  return "Inapplicable";
}

struct IntersectionVerdict {
  VerdictKind kind = VerdictKind::Inapplicable;
  std::size_t depth = 0;                      // Refuted / SurvivesTo depth, or certifier working depth
  std::optional<ThicknessValue> tau1;
  std::optional<ThicknessValue> tau2;
  std::optional<ThicknessValue> tau_product;  // set when Certified
  std::optional<LinkingCheck> linking;
  std::string reason;                         // Inapplicable only
  std::optional<std::pair<Interval, Interval>> witness;  // SurvivesTo: overlapping deepest cylinders

  [[nodiscard]] bool certified() const { return kind == VerdictKind::Certified; }
  [[nodiscard]] bool refuted() const { return kind == VerdictKind::Refuted; }
};

inline LinkingCheck linking_check(const CantorPresentation& k1, const CantorPresentation& k2, std::size_t k) {
  if (k == 0) throw std::invalid_argument("linking_check needs depth >= 1");
  LinkingCheck lc;
  lc.hull1 = convex_hull(k1);
  lc.hull2 = convex_hull(k2);
  lc.hulls_overlap = lc.hull1.meets(lc.hull2);
  lc.o1 = longest_gap(k1, k);
  lc.o2 = longest_gap(k2, k);
  lc.i1 = lc.hull1.length();
  lc.i2 = lc.hull2.length();
  lc.o1_le_i2 = lc.o1 <= lc.i2;
  lc.o2_le_i1 = lc.o2 <= lc.i1;
  return lc;
}

/// Gap-lemma certificate at depth k. Inapplicable carries the failed condition and means the
/// lemma says nothing; it is not a disjointness claim.
inline IntersectionVerdict gap_lemma_certify(const CantorPresentation& k1, const CantorPresentation& k2,
                                             std::size_t k) {
  IntersectionVerdict v;
  v.depth = k;
  auto r1 = newhouse_thickness(k1, k);
  auto r2 = newhouse_thickness(k2, k);
  v.tau1 = r1.tau;
  v.tau2 = r2.tau;
  v.linking = linking_check(k1, k2, k);
  if (!r1.exact || !r2.exact) {
    v.reason = "thickness not exact";
    return v;
  }
  ThicknessValue prod = r1.tau * r2.tau;
  if (!prod.infinite && prod.value < Rational(1)) {
    v.reason = "tau product " + prod.value.str() + " < 1";
    return v;
  }
  if (!v.linking->hulls_overlap) {
    v.reason = "hulls disjoint";
    return v;
  }
  if (!v.linking->o1_le_i2) {
    v.reason = "|O1| = " + v.linking->o1.str() + " > |I2| = " + v.linking->i2.str();
    return v;
  }
  if (!v.linking->o2_le_i1) {
    v.reason = "|O2| = " + v.linking->o2.str() + " > |I1| = " + v.linking->i1.str();
    return v;
  }
  v.kind = VerdictKind::Certified;
  v.tau_product = prod;
  return v;
}

/// Depth-refinement oracle. Returns Refuted(d) for the first d with cover₁(d) ∩ cover₂(d) = ∅,
/// otherwise SurvivesTo(k_max) with an overlapping pair of depth-k_max cylinders.
///
/// Searches overlapping cylinder pairs depth-first: every overlapping depth-d pair has overlapping
/// parents, so the deepest reachable pair decides the first empty depth.
inline IntersectionVerdict refine_refute(const CantorPresentation& k1, const CantorPresentation& k2,
                                         std::size_t k_max) {
  CylinderSystem s1(k1);
  CylinderSystem s2(k2);
  IntersectionVerdict v;
  struct Node {
    Cylinder a;
    Cylinder b;
  };
  Node root{s1.root(), s2.root()};
  if (!s1.interval(root.a).meets(s2.interval(root.b))) {
    v.kind = VerdictKind::Refuted;
    v.depth = 0;
    return v;
  }
  std::vector<Node> stack{root};
  std::size_t deepest = 0;
  while (!stack.empty()) {
    Node n = std::move(stack.back());
    stack.pop_back();
    deepest = std::max(deepest, n.a.depth);
    if (n.a.depth == k_max) {
      v.kind = VerdictKind::SurvivesTo;
      v.depth = k_max;
      v.witness = std::pair{s1.interval(n.a), s2.interval(n.b)};
      return v;
    }
    auto ca = s1.children(n.a);
    auto cb = s2.children(n.b);
    std::vector<Interval> ia;
    std::vector<Interval> ib;
    for (const auto& c : ca) ia.push_back(s1.interval(c));
    for (const auto& c : cb) ib.push_back(s2.interval(c));
    for (std::size_t i = ca.size(); i-- > 0;)
      for (std::size_t j = cb.size(); j-- > 0;)
        if (ia[i].meets(ib[j])) stack.push_back({ca[i], cb[j]});
  }
  v.kind = VerdictKind::Refuted;
  v.depth = deepest + 1;
  return v;
}

/// Base set of the avoiding construction: the base-N set omitting the middle digit (N−1)/2,
/// with N the smallest odd integer ≥ 3 whose thickness (N−1)/2 exceeds 1/ε₀.
struct AvoiderBase {
  Rational epsilon0;
  int N = 3;
  int j = 1;
  CantorPresentation K;
  Rational tau_K;
};

inline AvoiderBase avoider_base(const Rational& epsilon0) {
  if (epsilon0.sign() <= 0) throw std::invalid_argument("epsilon0 must be > 0, got " + epsilon0.str());
  mpz_class need = (Rational(1) / epsilon0).floor() + 1;  // smallest integer > 1/ε₀
  if (need < 1) need = 1;
  if (!need.fits_sint_p() || need > 1'000'000)
    throw std::invalid_argument("epsilon0 = " + epsilon0.str() + " is too small for a practical base");
  const int j = static_cast<int>(need.get_si());
  const int n = 2 * j + 1;
  AvoiderBase base{epsilon0, n, j, DigitSetPresentation::omitting(n, j), Rational(j)};
  auto rep = newhouse_thickness(base.K, 1);
  if (!rep.exact || rep.tau.infinite || rep.tau.value != base.tau_K)
    throw std::logic_error("avoider base thickness disagrees with min{j, N-j-1}");
  return base;
}

/// The unique n with N^(n−1) < |λ| ≤ N^n.
inline long locate_scale(const Rational& lambda, int base) {
  if (lambda.is_zero()) throw std::invalid_argument("locate_scale: lambda = 0");
  if (base < 2) throw std::invalid_argument("locate_scale: base must be >= 2");
  const Rational a = abs(lambda);
  const Rational nb(base);
  long n = 0;
  Rational hi(1);  // N^n
  while (a > hi) {
    hi *= nb;
    ++n;
  }
  while (a <= hi / nb) {
    hi /= nb;
    --n;
  }
  return n;
}

/// The unique ℓ with ℓ·N^n < t ≤ (ℓ+1)·N^n.
inline mpz_class locate_translation(const Rational& t, int base, long n) {
  if (base < 2) throw std::invalid_argument("locate_translation: base must be >= 2");
  return (t / pow(Rational(base), n)).ceil() - 1;
}

struct AvoidWitness {
  AvoiderBase base;
  AffineMap1D copy;
  long n = 0;
  mpz_class ell;
  CantorPresentation K1;
  CantorPresentation K2;
  ThicknessReport tau_J;
  IntersectionVerdict verdict;
  IntersectionVerdict oracle;
  std::size_t oracle_depth = 0;

  [[nodiscard]] bool valid() const {
    return verdict.certified() && oracle.kind == VerdictKind::SurvivesTo && oracle.depth == oracle_depth;
  }
};

/// Witness that the copy t + λJ meets N^n(K + ℓ) ⊂ X, so it is not contained in the complement
/// of the avoiding set X = ⋃ N^n(K + ℓ). J must already have convex hull [0,1].
inline AvoidWitness avoid_witness(const CantorPresentation& J, const AffineMap1D& copy, const Rational& epsilon0,
                                  std::size_t k_max, std::size_t thickness_depth = 2) {
  if (thickness_depth == 0) throw std::invalid_argument("avoid_witness: thickness depth must be >= 1");
  const Interval hull = convex_hull(J);
  if (hull != Interval(Rational(0), Rational(1)))
    throw std::invalid_argument("convex hull of J is " + hull.str() + ", expected [0,1]");
  AvoidWitness w{avoider_base(epsilon0), copy, 0, {}, J, J, {}, {}, {}, k_max};
  w.tau_J = newhouse_thickness(J, thickness_depth);
  if (!w.tau_J.exact) throw std::invalid_argument("thickness of J is not exact at depth " +
                                                  std::to_string(thickness_depth) + "; cannot certify");
  if (!w.tau_J.tau.infinite && w.tau_J.tau.value < epsilon0)
    throw std::invalid_argument("tau(J) = " + w.tau_J.tau.value.str() + " < epsilon0 = " + epsilon0.str());

  w.n = locate_scale(copy.lambda, w.base.N);
  w.ell = locate_translation(copy.t, w.base.N, w.n);
  const Rational scale = pow(Rational(w.base.N), w.n);
  w.K1 = affine_image(w.base.K, AffineMap1D(Rational(w.ell) * scale, scale));
  w.K2 = affine_image(J, copy);
  w.verdict = gap_lemma_certify(w.K1, w.K2, thickness_depth);
  w.oracle = refine_refute(w.K1, w.K2, k_max);
  return w;
}

/// Total length of the depth-k cover of the avoider base: ((N−1)/N)^k.
inline Rational cover_mass(const AvoiderBase& base, std::size_t k) { return cover_measure(base.K, k); }

}  // namespace cantorkit
