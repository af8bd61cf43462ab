#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "ruelle/linalg_core.hpp"

using namespace ruelle;

namespace {

const double e = std::exp(1.0);

/// Oracle: elementary symmetric polynomials of eigenvalues from Eigen.
std::vector<double> eigen_elementary(const Matrix& a) {
  const Eigen::EigenSolver<Matrix> es(a, false);
  std::vector<std::complex<double>> poly{1.0};
  for (const auto& ev : es.eigenvalues()) {
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] += poly[i] * ev;
    }
    poly = next;
  }
  std::vector<double> out;
  for (const auto& c : poly) {
    EXPECT_LE(std::abs(c.imag()), 1e-10 * std::max(1.0, std::abs(c)));
    out.push_back(c.real());
  }
  return out;
}

}  // namespace

TEST(ExteriorTrace, SpecExamples) {
  EXPECT_EQ(exterior_trace(Matrix::Identity(2, 2), 1), 2.0);
  Matrix d(2, 2);
  d << e, 0, 0, 1.0 / e;
  EXPECT_NEAR(exterior_trace(d, 1), 3.086161, 1e-6);
  EXPECT_NEAR(exterior_trace(d, 1), e + 1.0 / e, 1e-15);
  EXPECT_THROW(exterior_trace(d, 3), std::out_of_range);
  EXPECT_THROW(exterior_trace(d, -1), std::out_of_range);
}

TEST(ExteriorTrace, TopPowerIsDeterminant) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int n = 1; n <= 6; ++n) {
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = g(rng);
    EXPECT_NEAR(exterior_trace(a, n), a.determinant(), 1e-10 * std::max(1.0, std::abs(a.determinant())));
    EXPECT_EQ(exterior_trace(a, 0), 1.0);
  }
}

TEST(ExteriorTrace, MatchesEigenvalueOracle) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const PoincareData p = sample_splitting(1 + seed % 4, 1 + (seed / 4) % 4, seed);
    const auto oracle = eigen_elementary(p.matrix());
    for (int k = 0; k <= p.dim(); ++k) {
      const double got = exterior_trace(p, k);
      EXPECT_NEAR(got, oracle[static_cast<std::size_t>(k)], 1e-9 * std::max(1.0, std::abs(got))) << seed << " k=" << k;
    }
  }
}

TEST(ExteriorTrace, ConjugationInvariant) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int ds = 1 + static_cast<int>(seed % 3), du = 1 + static_cast<int>((seed / 3) % 3);
    const PoincareData plain = sample_splitting(ds, du, seed, false);
    const PoincareData mixed = sample_splitting(ds, du, seed, true);
    for (int k = 0; k <= plain.dim(); ++k) {
      const double x = exterior_trace(plain.matrix(), k);
      const double y = exterior_trace(mixed.matrix(), k);
      EXPECT_NEAR(x, y, 1e-9 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST(DetOneMinus, Examples) {
  // Eigenvalues of the zero matrix are not a valid splitting; use plain
  // matrices through the alternating sum instead.
  const auto alt = [](const Matrix& a) {
    const auto c = characteristic_coefficients(a);
    double s = 0;
    for (std::size_t k = 0; k < c.size(); ++k) s += (k % 2 ? -1.0 : 1.0) * c[k];
    return s;
  };
  EXPECT_EQ(alt(Matrix::Zero(3, 3)), 1.0);
  EXPECT_EQ(alt(Matrix::Identity(3, 3)), 0.0);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PoincareData p = sample_splitting(2, 1, seed);
    const double direct = (Matrix::Identity(3, 3) - p.matrix()).determinant();
    EXPECT_NEAR(det_one_minus(p), direct, 1e-10 * std::abs(direct));
  }
}

TEST(SignIdentity, SurfaceExamples) {
  const PoincareData plus = PoincareData::from_eigenvalues({e}, {1.0 / e});
  EXPECT_EQ(sign_identity_residual(plus), 0.0);
  EXPECT_NEAR(std::abs(det_one_minus(plus)), (e - 1.0) * (1.0 - 1.0 / e), 1e-15);
  EXPECT_NEAR(std::abs(det_one_minus(plus)), 1.086161, 1e-6);

  const PoincareData minus = PoincareData::from_eigenvalues({-e}, {-1.0 / e});
  EXPECT_EQ(minus.stable_sign(), -1);
  EXPECT_EQ(sign_identity_residual(minus), 0.0);
  EXPECT_NEAR(std::abs(det_one_minus(minus)), (1.0 + e) * (1.0 + 1.0 / e), 1e-14);
  EXPECT_NEAR(std::abs(det_one_minus(minus)), 5.086161, 1e-6);
}

TEST(SignIdentity, ComplexStablePair) {
  for (double r : {1.1, 2.0, 7.5}) {
    for (double theta : {0.3, 1.5, 2.9}) {
      const auto z = std::polar(r, theta);
      const PoincareData p = PoincareData::from_eigenvalues({z, std::conj(z)}, {0.5});
      EXPECT_EQ(p.stable_sign(), 1);
      EXPECT_LE(sign_identity_residual(p), 1e-10);
    }
  }
}

TEST(SignIdentity, InvalidSplittingRejected) {
  EXPECT_THROW(PoincareData::from_eigenvalues({1.0}, {0.5}), InvalidSplittingError);
  EXPECT_THROW(PoincareData::from_eigenvalues({2.0}, {-1.0}), InvalidSplittingError);
  EXPECT_THROW(PoincareData::from_eigenvalues({std::polar(1.0, 0.4), std::polar(1.0, -0.4)}, {0.5}),
               InvalidSplittingError);
  EXPECT_THROW(PoincareData::from_eigenvalues({{2.0, 1.0}}, {0.5}), InvalidSplittingError);
}

TEST(SampleSplitting, DeterministicAndValid) {
  const PoincareData a = sample_splitting(3, 2, 42), b = sample_splitting(3, 2, 42);
  EXPECT_EQ(a.matrix(), b.matrix());
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const PoincareData p = sample_splitting(1 + seed % 4, 1 + (seed / 4) % 4, seed);
    const auto [du, ds] = block_determinants(p);
    EXPECT_GT(du, 0.0);
    EXPECT_GT(ds, 0.0);
  }
}

TEST(SignIdentity, FuzzTenThousand) {
  const SignFuzzResult r = sign_fuzz(10000, 1, 4, 1e-10);
  EXPECT_EQ(r.samples, 10000U);
  EXPECT_EQ(r.failures, 0U);
}

TEST(SurfaceClosedForm, AgreesWithGenericPath) {
  for (double T : {0.1, 1.0, 5.0, 12.0, 20.0}) {
    for (int eps : {1, -1}) {
      const PoincareData fast = PoincareData::surface(T, eps);
      const PoincareData slow = PoincareData::from_eigenvalues({eps * std::exp(T)}, {eps * std::exp(-T)});
      for (int k = 0; k <= 2; ++k) {
        const double x = exterior_trace(fast, k), y = exterior_trace(slow, k);
        EXPECT_NEAR(x, y, 1e-12 * std::abs(x)) << T << " " << eps << " " << k;
      }
      const double df = std::abs(det_one_minus(fast)), ds = std::abs(det_one_minus(slow));
      EXPECT_NEAR(df, ds, 1e-12 * df);
      EXPECT_NEAR(df, surface_abs_det_one_minus(T, eps), 1e-12 * df);
    }
  }
}
