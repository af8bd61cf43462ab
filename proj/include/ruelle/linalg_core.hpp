#pragma once

// Linearized Poincare maps on E_s + E_u, exterior-power traces and the
// determinant identities used by the zeta weights.
//
// Convention: P is the differential of the backward return map, so the
// E_u block contracts (|eigenvalue| < 1) and the E_s block expands.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <complex>
#include <limits>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ruelle/errors.hpp"

namespace ruelle {

using Matrix = Eigen::MatrixXd;

/// Coefficients e_0..e_n of det(tI - A) = sum_k (-1)^k e_k t^(n-k), i.e. the
/// elementary symmetric polynomials of the eigenvalues (Faddeev-LeVerrier).
inline std::vector<double> characteristic_coefficients(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("characteristic_coefficients: matrix not square");
  const auto n = static_cast<int>(a.rows());
  // c[i] is the coefficient of t^i.
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[static_cast<std::size_t>(n)] = 1.0;
  Matrix m = Matrix::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    m = a * m;
    m.diagonal().array() += c[static_cast<std::size_t>(n - k + 1)];
    c[static_cast<std::size_t>(n - k)] = -(a * m).trace() / k;
  }
  std::vector<double> e(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) e[static_cast<std::size_t>(k)] = (k % 2 ? -1.0 : 1.0) * c[static_cast<std::size_t>(n - k)];
  return e;
}

/// Elementary symmetric polynomials of the union of two eigenvalue lists.
inline std::vector<double> multiply_elementary(const std::vector<double>& x,
                                               const std::vector<double>& y) {
  std::vector<double> z(x.size() + y.size() - 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
  }
  return z;
}

/// tr(wedge^k A) for a plain square matrix.
inline double exterior_trace(const Matrix& a, int k) {
  if (k < 0 || k > a.rows()) throw std::out_of_range("exterior_trace: k out of range");
  return characteristic_coefficients(a)[static_cast<std::size_t>(k)];
}

class PoincareData {
 public:
  /// P = B diag(stable, unstable) B^-1 with B = identity when omitted.
  static PoincareData from_blocks(Matrix stable, Matrix unstable,
                                  std::optional<Matrix> basis = std::nullopt) {
    PoincareData p;
    if (stable.rows() < 1 || unstable.rows() < 1 || stable.rows() != stable.cols() ||
        unstable.rows() != unstable.cols()) {
      throw InvalidSplittingError("PoincareData: blocks must be square and nonempty");
    }
    p.stable_ = std::move(stable);
    p.unstable_ = std::move(unstable);
    const auto n = p.stable_.rows() + p.unstable_.rows();
    Matrix adapted = Matrix::Zero(n, n);
    adapted.topLeftCorner(p.stable_.rows(), p.stable_.rows()) = p.stable_;
    adapted.bottomRightCorner(p.unstable_.rows(), p.unstable_.rows()) = p.unstable_;
    if (basis) {
      if (basis->rows() != n || basis->cols() != n) {
        throw InvalidSplittingError("PoincareData: basis has wrong size");
      }
      Eigen::FullPivLU<Matrix> lu(*basis);
      if (!lu.isInvertible()) throw InvalidSplittingError("PoincareData: basis is singular");
      p.matrix_ = *basis * adapted * lu.inverse();
    } else {
      p.matrix_ = std::move(adapted);
    }
    p.validate();
    return p;
  }

  /// Real block-diagonal model with the given eigenvalues. Nonreal values
  /// must come in conjugate pairs; each pair becomes a 2x2 rotation-scaling
  /// block.
  static PoincareData from_eigenvalues(const std::vector<std::complex<double>>& stable,
                                       const std::vector<std::complex<double>>& unstable) {
    return from_blocks(real_block(stable), real_block(unstable));
  }

  /// Surface orbit of period T and holonomy sign epsilon: eigenvalues
  /// epsilon e^T on E_s and epsilon e^-T on E_u.
  static PoincareData surface(double T, int epsilon) {
    if (!(T > 0.0) || (epsilon != 1 && epsilon != -1)) {
      throw InvalidSplittingError("PoincareData::surface: need T > 0 and epsilon = +-1");
    }
    const double e = static_cast<double>(epsilon);
    PoincareData p = from_blocks(Matrix::Constant(1, 1, e * std::exp(T)),
                                 Matrix::Constant(1, 1, e * std::exp(-T)));
    p.surface_ = SurfaceForm{T, epsilon};
    return p;
  }

  int dim_s() const { return static_cast<int>(stable_.rows()); }
  int dim_u() const { return static_cast<int>(unstable_.rows()); }
  int dim() const { return dim_s() + dim_u(); }
  const Matrix& matrix() const { return matrix_; }
  const Matrix& stable_block() const { return stable_; }
  const Matrix& unstable_block() const { return unstable_; }

  struct SurfaceForm {
    double T;
    int epsilon;
  };
  /// Set for data built by surface(); enables the closed forms.
  const std::optional<SurfaceForm>& surface_form() const { return surface_; }

  /// sgn det(P restricted to E_s).
  int stable_sign() const { return stable_.determinant() > 0.0 ? 1 : -1; }

  /// e_0..e_n of P, from the two blocks separately so that expanding and
  /// contracting scales never mix inside one trace.
  std::vector<double> elementary() const {
    return multiply_elementary(characteristic_coefficients(stable_),
                               characteristic_coefficients(unstable_));
  }

 private:
  static Matrix real_block(const std::vector<std::complex<double>>& values) {
    std::vector<std::complex<double>> pending;
    std::vector<Matrix> parts;
    for (const auto& z : values) {
      if (z.imag() == 0.0) {
        parts.push_back(Matrix::Constant(1, 1, z.real()));
      } else if (z.imag() > 0.0) {
        pending.push_back(z);
      }
    }
    for (const auto& z : values) {
      if (z.imag() >= 0.0) continue;
      bool matched = false;
      for (auto it = pending.begin(); it != pending.end(); ++it) {
        if (*it == std::conj(z)) {
          Matrix b(2, 2);
          b << it->real(), -it->imag(), it->imag(), it->real();
          parts.push_back(b);
          pending.erase(it);
          matched = true;
          break;
        }
      }
      if (!matched) throw InvalidSplittingError("PoincareData: nonreal eigenvalue without its conjugate");
    }
    if (!pending.empty()) throw InvalidSplittingError("PoincareData: nonreal eigenvalue without its conjugate");
    Eigen::Index n = 0;
    for (const auto& b : parts) n += b.rows();
    Matrix out = Matrix::Zero(n, n);
    Eigen::Index at = 0;
    for (const auto& b : parts) {
      out.block(at, at, b.rows(), b.rows()) = b;
      at += b.rows();
    }
    return out;
  }

  void validate() const {
    const auto check = [](const Matrix& block, bool expanding) {
      const Eigen::EigenSolver<Matrix> es(block, false);
      for (const auto& ev : es.eigenvalues()) {
        const double r = std::abs(ev);
        if (expanding ? !(r > 1.0) : !(r < 1.0)) {
          throw InvalidSplittingError(std::string("PoincareData: eigenvalue of modulus ") +
                                      std::to_string(r) + " on the " +
                                      (expanding ? "stable" : "unstable") + " block");
        }
      }
    };
    check(stable_, true);
    check(unstable_, false);
  }

  Matrix stable_;
  Matrix unstable_;
  Matrix matrix_;
  std::optional<SurfaceForm> surface_;
};

inline double exterior_trace(const PoincareData& p, int k) {
  if (k < 0 || k > p.dim()) throw std::out_of_range("exterior_trace: k out of range");
  if (const auto& s = p.surface_form()) {
    if (k == 1) return s->epsilon * 2.0 * std::cosh(s->T);
    return 1.0;
  }
  return p.elementary()[static_cast<std::size_t>(k)];
}

/// |det(I - P)| for a surface orbit without cancellation.
inline double surface_abs_det_one_minus(double T, int epsilon) {
  const double h = epsilon > 0 ? std::sinh(T / 2.0) : std::cosh(T / 2.0);
  return 4.0 * h * h;
}

/// det(I - P) as the alternating sum of exterior traces, cross-checked
/// against an LU determinant (ConsistencyError beyond 1e-10 relative).
inline double det_one_minus(const PoincareData& p) {
  double alt = 0.0;
  if (const auto& s = p.surface_form()) {
    // (1 - eps e^T)(1 - eps e^-T) = 2 - 2 eps cosh T.
    alt = s->epsilon > 0 ? -surface_abs_det_one_minus(s->T, 1) : surface_abs_det_one_minus(s->T, -1);
  } else {
    const auto e = p.elementary();
    for (std::size_t k = 0; k < e.size(); ++k) alt += (k % 2 ? -1.0 : 1.0) * e[k];
  }
  const Matrix id = Matrix::Identity(p.dim(), p.dim());
  const double direct = (id - p.matrix()).partialPivLu().determinant();
  const double scale = std::max({1.0, std::abs(alt), std::abs(direct)});
  if (std::abs(alt - direct) > 1e-10 * scale) {
    throw ConsistencyError("det_one_minus: alternating sum " + std::to_string(alt) +
                           " disagrees with determinant " + std::to_string(direct));
  }
  return alt;
}

/// Relative residual of |det(I-P)| = (-1)^dim_s sgn(det P|E_s) det(I-P).
inline double sign_identity_residual(const PoincareData& p) {
  const double d = det_one_minus(p);
  const double lhs = std::abs(d);
  const double rhs = (p.dim_s() % 2 ? -1.0 : 1.0) * p.stable_sign() * d;
  return std::abs(lhs - rhs) / lhs;
}

/// det(I - P|E_u) and det(I - P^-1|E_s); both are positive for a valid
/// splitting.
inline std::pair<double, double> block_determinants(const PoincareData& p) {
  const Matrix& u = p.unstable_block();
  const Matrix& s = p.stable_block();
  const double du = (Matrix::Identity(u.rows(), u.rows()) - u).determinant();
  const double ds = (Matrix::Identity(s.rows(), s.rows()) - s.inverse()).determinant();
  return {du, ds};
}

struct SplittingSampler {
  double stable_min = 1.1, stable_max = 10.0;
  double unstable_min = 0.1, unstable_max = 0.9;
  double singular_min = 1.0, singular_max = 10.0;  // basis condition <= 10
};

/// Reproducible random splitting: a real/complex mix of eigenvalues with
/// moduli in the configured ranges, optionally in a random basis whose
/// condition number is at most singular_max / singular_min.
inline PoincareData sample_splitting(int dim_s, int dim_u, std::uint64_t seed,
                                     bool random_basis = true, const SplittingSampler& cfg = {}) {
  if (dim_s < 1 || dim_u < 1) throw std::invalid_argument("sample_splitting: dims must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto eigenvalues = [&](int dim, double lo, double hi) {
    std::vector<std::complex<double>> out;
    while (static_cast<int>(out.size()) < dim) {
      const double r = lo + (hi - lo) * unit(rng);
      if (dim - static_cast<int>(out.size()) >= 2 && unit(rng) < 0.5) {
        const double theta = 0.1 + (std::numbers::pi - 0.2) * unit(rng);
        const std::complex<double> z = std::polar(r, theta);
        out.push_back(z);
        out.push_back(std::conj(z));
      } else {
        out.emplace_back(unit(rng) < 0.5 ? -r : r, 0.0);
      }
    }
    return out;
  };
  const auto s = eigenvalues(dim_s, cfg.stable_min, cfg.stable_max);
  const auto u = eigenvalues(dim_u, cfg.unstable_min, cfg.unstable_max);
  PoincareData adapted = PoincareData::from_eigenvalues(s, u);
  if (!random_basis) return adapted;

  const int n = dim_s + dim_u;
  std::normal_distribution<double> gauss;
  const auto orthogonal = [&] {
    Matrix g(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
    }
    return Matrix(Eigen::HouseholderQR<Matrix>(g).householderQ());
  };
  Eigen::VectorXd sv(n);
  for (int i = 0; i < n; ++i) sv(i) = cfg.singular_min + (cfg.singular_max - cfg.singular_min) * unit(rng);
  const Matrix basis = orthogonal() * sv.asDiagonal() * orthogonal();
  return PoincareData::from_blocks(adapted.stable_block(), adapted.unstable_block(), basis);
}

struct SignFuzzResult {
  std::size_t samples = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
};

/// Runs sign_identity_residual on `samples` random splittings with
/// 1 <= dim_s, dim_u <= max_dim. Sample i uses seed base_seed + i.
inline SignFuzzResult sign_fuzz(std::size_t samples, std::uint64_t base_seed = 1,
                                int max_dim = 4, double tolerance = 1e-10) {
  SignFuzzResult r;
  r.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const std::uint64_t seed = base_seed + i;
    const int ds = 1 + static_cast<int>(seed % static_cast<std::uint64_t>(max_dim));
    const int du = 1 + static_cast<int>((seed / static_cast<std::uint64_t>(max_dim)) %
                                        static_cast<std::uint64_t>(max_dim));
    double res = 0.0;
    try {
      res = sign_identity_residual(sample_splitting(ds, du, seed));
    } catch (const Error&) {
      res = std::numeric_limits<double>::infinity();
    }
    r.max_residual = std::max(r.max_residual, res);
    if (!(res <= tolerance)) ++r.failures;
  }
  return r;
}

}  // namespace ruelle
