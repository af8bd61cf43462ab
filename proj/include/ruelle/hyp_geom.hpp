#pragma once

// Real 2x2 matrix models of isometries of the hyperbolic plane.
//
// det = +1 acts by z -> (az + b)/(cz + d) and preserves orientation;
// det = -1 acts by z -> (a conj(z) + b)/(c conj(z) + d) and reverses it.
// On real matrices the conjugation is invisible, so composition is plain
// matrix multiplication in both cases.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string_view>

#include "ruelle/errors.hpp"

namespace ruelle {

struct GeomTolerances {
  double normalization = 1e-12;   // allowed drift of |det| from 1
  double classification = 1e-10;  // trace comparisons against 0 and 2
};

inline constexpr GeomTolerances kGeomTolerances{};

enum class IsometryKind : std::uint8_t {
  identity,
  elliptic,
  parabolic,
  hyperbolic,
  reflection,
  glide,
};

constexpr std::string_view to_string(IsometryKind kind) {
  switch (kind) {
    case IsometryKind::identity:
      return "identity";
    case IsometryKind::elliptic:
      return "elliptic";
    case IsometryKind::parabolic:
      return "parabolic";
    case IsometryKind::hyperbolic:
      return "hyperbolic";
    case IsometryKind::reflection:
      return "reflection";
    case IsometryKind::glide:
      return "glide";
  }
  return "unknown";
}

inline std::ostream& operator<<(std::ostream& os, IsometryKind kind) {
  return os << to_string(kind);
}

/// Matrix [[a, b], [c, d]] scaled so that |ad - bc| = 1.
class IsometryMatrix {
 public:
  constexpr IsometryMatrix() = default;

  /// Scales (a, b, c, d) by 1/sqrt|det|. Throws DegenerateMatrixError when
  /// the determinant is zero relative to the entry scale.
  static IsometryMatrix normalized(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (!(scale > 0.0) || !std::isfinite(det) || std::abs(det) <= 1e-14 * scale * scale) {
      throw DegenerateMatrixError("matrix is singular and cannot represent an isometry");
    }
    const double s = 1.0 / std::sqrt(std::abs(det));
    return IsometryMatrix(a * s, b * s, c * s, d * s);
  }

  static constexpr IsometryMatrix identity() { return IsometryMatrix(1.0, 0.0, 0.0, 1.0); }

  constexpr double a() const { return a_; }
  constexpr double b() const { return b_; }
  constexpr double c() const { return c_; }
  constexpr double d() const { return d_; }
  constexpr std::array<double, 4> entries() const { return {a_, b_, c_, d_}; }

  constexpr double det() const { return a_ * d_ - b_ * c_; }
  constexpr double trace() const { return a_ + d_; }

  /// Product, renormalized to |det| = 1 to stop drift accumulating.
  IsometryMatrix operator*(const IsometryMatrix& o) const {
    return normalized(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                      c_ * o.b_ + d_ * o.d_);
  }

  /// Exact inverse for |det| = 1: adj(M)/det.
  constexpr IsometryMatrix inverse() const {
    const double s = det() > 0.0 ? 1.0 : -1.0;
    return IsometryMatrix(d_ * s, -b_ * s, -c_ * s, a_ * s);
  }

  IsometryMatrix pow(int m) const {
    if (m < 0) return inverse().pow(-m);
    IsometryMatrix result = identity();
    IsometryMatrix base = *this;
    while (m > 0) {
      if (m & 1) result = result * base;
      m >>= 1;
      if (m > 0) base = base * base;
    }
    return result;
  }

  /// Action on the upper half-plane (anti-holomorphic when det < 0).
  std::complex<double> apply(std::complex<double> z) const {
    const std::complex<double> w = det() > 0.0 ? z : std::conj(z);
    return (a_ * w + b_) / (c_ * w + d_);
  }

  /// Equality in PGL(2,R): M ~ N iff M = N or M = -N.
  bool projectively_equal(const IsometryMatrix& o, double tol) const {
    const auto close = [tol](const IsometryMatrix& x, const IsometryMatrix& y, double s) {
      return std::abs(x.a_ - s * y.a_) <= tol && std::abs(x.b_ - s * y.b_) <= tol &&
             std::abs(x.c_ - s * y.c_) <= tol && std::abs(x.d_ - s * y.d_) <= tol;
    };
    return close(*this, o, 1.0) || close(*this, o, -1.0);
  }

 private:
  constexpr IsometryMatrix(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {}

  double a_ = 1.0;
  double b_ = 0.0;
  double c_ = 0.0;
  double d_ = 1.0;
};

inline std::ostream& operator<<(std::ostream& os, const IsometryMatrix& m) {
  return os << "[[" << m.a() << ", " << m.b() << "], [" << m.c() << ", " << m.d() << "]]";
}

inline int orientation_sign(const IsometryMatrix& m) { return m.det() > 0.0 ? 1 : -1; }

inline IsometryKind classify(const IsometryMatrix& m, const GeomTolerances& tol = kGeomTolerances) {
  // ad - bc loses about eps * |entries|^2 to cancellation.
  const auto e = m.entries();
  const double scale = std::max({1.0, std::abs(e[0]), std::abs(e[1]), std::abs(e[2]), std::abs(e[3])});
  if (std::abs(std::abs(m.det()) - 1.0) > 1e3 * tol.normalization * scale * scale) {
    throw DegenerateMatrixError("classify: matrix is not normalized");
  }
  const double t = std::abs(m.trace());
  if (orientation_sign(m) < 0) {
    return t <= tol.classification ? IsometryKind::reflection : IsometryKind::glide;
  }
  if (t > 2.0 + tol.classification) return IsometryKind::hyperbolic;
  if (t < 2.0 - tol.classification) return IsometryKind::elliptic;
  const bool scalar = std::abs(m.b()) <= tol.classification &&
                      std::abs(m.c()) <= tol.classification &&
                      std::abs(m.a() - m.d()) <= tol.classification;
  return scalar ? IsometryKind::identity : IsometryKind::parabolic;
}

/// Length of the closed geodesic an isometry translates along:
/// 2 arccosh(|tr|/2) for det = +1, 2 arcsinh(|tr|/2) for glides.
inline double translation_length(const IsometryMatrix& m,
                                 const GeomTolerances& tol = kGeomTolerances) {
  const IsometryKind kind = classify(m, tol);
  const double half = std::abs(m.trace()) / 2.0;
  switch (kind) {
    case IsometryKind::hyperbolic:
      return 2.0 * std::acosh(half);
    case IsometryKind::glide:
      return 2.0 * std::asinh(half);
    default:
      throw NotClosedGeodesicError(std::string("translation_length: ") +
                                   std::string(to_string(kind)) +
                                   " isometry has no closed geodesic");
  }
}

/// Geodesic with finite ideal endpoints on the real line.
struct Geodesic {
  double from = 0.0;
  double to = 0.0;
};

/// Hyperbolic distance between two disjoint geodesics with finite, pairwise
/// distinct endpoints, through tanh^2(d/2) = cross ratio.
inline double geodesic_distance(const Geodesic& g, const Geodesic& h) {
  const double p = g.from, q = g.to, r = h.from, s = h.to;
  double cr = ((p - r) * (q - s)) / ((p - s) * (q - r));
  if (cr > 1.0) cr = 1.0 / cr;
  if (!(cr > 0.0) || !(cr < 1.0)) {
    throw Error("geodesic_distance: geodesics intersect or share an endpoint");
  }
  return 2.0 * std::atanh(std::sqrt(cr));
}

}  // namespace ruelle
