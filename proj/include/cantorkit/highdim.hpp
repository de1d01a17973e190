#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cantorkit/cantorset.hpp"
#include "cantorkit/intersect.hpp"
#include "cantorkit/rational.hpp"
#include "cantorkit/thickness.hpp"

namespace cantorkit {

using VectorD = std::vector<Rational>;

/// Square rational matrix, row-major; construction checks invertibility exactly.
class LinearMapD {
 public:
  LinearMapD(std::size_t dim, std::vector<Rational> entries) : dim_(dim), a_(std::move(entries)) {
    if (dim_ == 0 || a_.size() != dim_ * dim_)
      throw std::invalid_argument("matrix needs " + std::to_string(dim_ * dim_) + " entries, got " +
                                  std::to_string(a_.size()));
    if (determinant().is_zero()) throw std::invalid_argument("matrix is singular");
  }

  static LinearMapD identity(std::size_t dim) {
    std::vector<Rational> e(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = Rational(1);
    return {dim, std::move(e)};
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const Rational& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }
  [[nodiscard]] const std::vector<Rational>& entries() const { return a_; }

  [[nodiscard]] VectorD apply(const VectorD& x) const {
    if (x.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
    VectorD y(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) y[r] += (*this)(r, c) * x[c];
    return y;
  }

  [[nodiscard]] Rational determinant() const {
    auto m = a_;
    Rational det(1);
    for (std::size_t col = 0; col < dim_; ++col) {
      std::size_t piv = col;
      while (piv < dim_ && m[piv * dim_ + col].is_zero()) ++piv;
      if (piv == dim_) return Rational(0);
      if (piv != col) {
        for (std::size_t c = 0; c < dim_; ++c) std::swap(m[piv * dim_ + c], m[col * dim_ + c]);
        det = -det;
      }
      const Rational p = m[col * dim_ + col];
      det *= p;
      for (std::size_t r = col + 1; r < dim_; ++r) {
        const Rational f = m[r * dim_ + col] / p;
        if (f.is_zero()) continue;
        for (std::size_t c = col; c < dim_; ++c) m[r * dim_ + c] -= f * m[col * dim_ + c];
      }
    }
    return det;
  }

  [[nodiscard]] LinearMapD inverse() const {
    const std::size_t n = dim_;
    auto m = a_;
    auto inv = identity(n).a_;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      while (m[piv * n + col].is_zero()) ++piv;
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(m[piv * n + c], m[col * n + c]);
        std::swap(inv[piv * n + c], inv[col * n + c]);
      }
      const Rational p = m[col * n + col];
      for (std::size_t c = 0; c < n; ++c) {
        m[col * n + c] /= p;
        inv[col * n + c] /= p;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || m[r * n + col].is_zero()) continue;
        const Rational f = m[r * n + col];
        for (std::size_t c = 0; c < n; ++c) {
          m[r * n + c] -= f * m[col * n + c];
          inv[r * n + c] -= f * inv[col * n + c];
        }
      }
    }
    return {n, std::move(inv)};
  }

  /// Maximum absolute column sum.
  [[nodiscard]] Rational norm_1() const {
    Rational best;
    for (std::size_t c = 0; c < dim_; ++c) {
      Rational s;
      for (std::size_t r = 0; r < dim_; ++r) s += abs((*this)(r, c));
      best = max(best, s);
    }
    return best;
  }
  /// Maximum absolute row sum.
  [[nodiscard]] Rational norm_inf() const {
    Rational best;
    for (std::size_t r = 0; r < dim_; ++r) {
      Rational s;
      for (std::size_t c = 0; c < dim_; ++c) s += abs((*this)(r, c));
      best = max(best, s);
    }
    return best;
  }

 private:
  std::size_t dim_;
  std::vector<Rational> a_;
};

struct ContractionMapD {
  Rational rho;
  VectorD b;
  friend bool operator==(const ContractionMapD&, const ContractionMapD&) = default;
};

/// Rotation-free IFS in ℝ^d: x ↦ rho·x + b.
class IFSdD {
 public:
  IFSdD(std::size_t dim, std::vector<ContractionMapD> maps) : dim_(dim), maps_(std::move(maps)) {
    if (dim_ < 2) throw std::invalid_argument("ifsdd needs dim >= 2");
    for (std::size_t i = 0; i < maps_.size(); ++i) {
      const auto& m = maps_[i];
      const std::string where = "maps[" + std::to_string(i) + "]";
      if (m.rho.sign() <= 0 || m.rho >= Rational(1)) throw std::invalid_argument(where + ".rho: rho out of (0,1)");
      if (m.b.size() != dim_)
        throw std::invalid_argument(where + ".b: expected " + std::to_string(dim_) + " coordinates");
    }
    if (maps_.size() < 2) throw std::invalid_argument("maps: an IFS needs at least 2 maps");
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<ContractionMapD>& maps() const { return maps_; }

  [[nodiscard]] VectorD fixed_point(std::size_t i) const {
    const auto& m = maps_.at(i);
    VectorD p;
    const Rational s = Rational(1) / (Rational(1) - m.rho);
    for (const auto& x : m.b) p.push_back(x * s);
    return p;
  }

  friend bool operator==(const IFSdD&, const IFSdD&) = default;

 private:
  std::size_t dim_;
  std::vector<ContractionMapD> maps_;
};

/// Projected 1-D system before validation: coincident maps merged, multiplicities kept.
struct ProjectedIFS {
  std::vector<ContractionMap> maps;
  std::vector<std::size_t> multiplicity;
  bool degenerate = false;  // attractor is a single point
  std::optional<IFS1D> ifs;
};

/// Maps ρᵢx + (T·bᵢ)₁: the IFS whose attractor is the x₁-projection of T(attractor).
inline ProjectedIFS project_ifs(const IFSdD& ifs, const LinearMapD& T) {
  if (T.dim() != ifs.dim()) throw std::invalid_argument("matrix dimension does not match the IFS");
  ProjectedIFS out;
  for (const auto& m : ifs.maps()) {
    ContractionMap pm{m.rho, T.apply(m.b)[0]};
    auto it = std::find(out.maps.begin(), out.maps.end(), pm);
    if (it == out.maps.end()) {
      out.maps.push_back(std::move(pm));
      out.multiplicity.push_back(1);
    } else {
      ++out.multiplicity[static_cast<std::size_t>(it - out.maps.begin())];
    }
  }
  const Rational p0 = out.maps[0].b / (Rational(1) - out.maps[0].rho);
  out.degenerate = std::all_of(out.maps.begin(), out.maps.end(), [&](const ContractionMap& m) {
    return m.b / (Rational(1) - m.rho) == p0;
  });
  if (!out.degenerate && out.maps.size() >= 2) out.ifs.emplace(out.maps);
  return out;
}

struct NondegeneracyResult {
  bool nondegenerate = false;
  std::vector<VectorD> witness;  // affinely independent fixed points (d+1 of them when true)
};

/// The attractor of a rotation-free IFS spans the same affine hull as its fixed points.
inline NondegeneracyResult nondegenerate_check(const IFSdD& ifs) {
  const std::size_t d = ifs.dim();
  NondegeneracyResult res;
  std::vector<VectorD> basis;  // row-echelon rows of differences
  std::vector<std::size_t> pivots;
  VectorD origin = ifs.fixed_point(0);
  res.witness.push_back(origin);
  for (std::size_t i = 1; i < ifs.maps().size() && basis.size() < d; ++i) {
    VectorD p = ifs.fixed_point(i);
    VectorD v(d);
    for (std::size_t c = 0; c < d; ++c) v[c] = p[c] - origin[c];
    for (std::size_t r = 0; r < basis.size(); ++r) {
      const Rational f = v[pivots[r]] / basis[r][pivots[r]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < d; ++c) v[c] -= f * basis[r][c];
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return !x.is_zero(); });
    if (nz == v.end()) continue;
    pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
    basis.push_back(std::move(v));
    res.witness.push_back(std::move(p));
  }
  res.nondegenerate = basis.size() == d;
  return res;
}

/// Reduce the d-dimensional copy t + T(J) to its x₁-projection, renormalise that set's hull to
/// [0,1], and certify the 1-D copy meets the avoiding set. Escaping the first factor of
/// G₀ × ⋯ × G₀ is enough.
inline AvoidWitness projective_witness(const IFSdD& ifs, const LinearMapD& T, const VectorD& t,
                                       const Rational& epsilon0, std::size_t k_max,
                                       std::size_t thickness_depth = 2) {
  if (t.size() != ifs.dim()) throw std::invalid_argument("translation has the wrong dimension");
  auto proj = project_ifs(ifs, T);
  if (proj.degenerate || !proj.ifs) throw std::invalid_argument("degenerate projection (single point)");
  if (!nondegenerate_check(ifs).nondegenerate) throw std::invalid_argument("IFS attractor lies in a hyperplane");
  CantorPresentation projected(*proj.ifs);
  const Interval hull = convex_hull(projected);
  const AffineMap1D to_unit(-hull.lo / hull.length(), Rational(1) / hull.length());
  CantorPresentation unit = affine_image(projected, to_unit);
  // t₁ + P T(J) = t₁ + hull.lo + |hull|·unit
  const AffineMap1D copy(t[0] + hull.lo, hull.length());
  return avoid_witness(unit, copy, epsilon0, k_max, thickness_depth);
}

/// Thickness of the projection of T(attractor) for each sampled T. Each entry certifies only
/// its own T; no claim about all invertible T is made.
inline std::vector<std::optional<ThicknessReport>> projective_thickness_probe(const IFSdD& ifs,
                                                                              const std::vector<LinearMapD>& samples,
                                                                              std::size_t k) {
  std::vector<std::optional<ThicknessReport>> out;
  for (const auto& T : samples) {
    auto proj = project_ifs(ifs, T);
    if (!proj.ifs) {
      out.emplace_back(std::nullopt);
      continue;
    }
    out.emplace_back(newhouse_thickness(CantorPresentation(*proj.ifs), k));
  }
  return out;
}

using PolylinePath = std::vector<VectorD>;

struct HyperplaneHit {
  std::size_t axis = 1;  // 1-based coordinate index
  Rational r;
  VectorD point;
  std::size_t segment = 0;  // 0-based segment containing the point
};

/// A coordinate hyperplane x_i = r (r rational, strictly inside the path's range on axis i)
/// together with an exact point of the path on it.
inline HyperplaneHit hyperplane_hit(const PolylinePath& path) {
  if (path.size() < 2) throw std::invalid_argument("path needs at least 2 vertices");
  const std::size_t d = path[0].size();
  for (const auto& v : path)
    if (v.size() != d) throw std::invalid_argument("path vertices have mixed dimensions");
  for (std::size_t i = 1; i < path.size(); ++i)
    if (path[i] == path[i - 1]) throw std::invalid_argument("consecutive path vertices coincide");
  for (std::size_t axis = 0; axis < d; ++axis) {
    Rational lo = path[0][axis];
    Rational hi = lo;
    for (const auto& v : path) {
      lo = min(lo, v[axis]);
      hi = max(hi, v[axis]);
    }
    if (lo == hi) continue;
    const Rational r = (lo + hi) / Rational(2);
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
      const Rational& a = path[s][axis];
      const Rational& b = path[s + 1][axis];
      if (a == b || (a - r).sign() * (b - r).sign() > 0) continue;
      const Rational frac = (r - a) / (b - a);
      VectorD p(d);
      for (std::size_t c = 0; c < d; ++c) p[c] = path[s][c] + frac * (path[s + 1][c] - path[s][c]);
      return {axis + 1, r, std::move(p), s};
    }
  }
  throw std::logic_error("no nondegenerate axis despite distinct vertices");
}

}  // namespace cantorkit
