#include <gtest/gtest.h>

#include <random>

#include "ruelle/twisted_topology.hpp"

using namespace ruelle;

namespace {

/// Oracle rank: fraction-free Bareiss elimination over 64-bit integers,
/// independent of the Rational path.
int integer_rank(const RationalMatrix& m) {
  std::vector<std::vector<long long>> a;
  for (const auto& row : m) {
    std::vector<long long> r;
    for (const auto& x : row) {
      EXPECT_EQ(x.denominator(), 1);
      r.push_back(x.numerator());
    }
    a.push_back(r);
  }
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  long long prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

std::vector<SurfacePresentation> hyperbolic_surfaces() {
  std::vector<SurfacePresentation> out;
  for (int g = 2; g <= 5; ++g) out.push_back(SurfacePresentation::orientable(g));
  for (int k = 3; k <= 7; ++k) out.push_back(SurfacePresentation::nonorientable(k));
  return out;
}

}  // namespace

TEST(Rank, MatchesIntegerOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 300; ++t) {
    const std::size_t rows = 1 + t % 5, cols = 1 + (t / 5) % 5;
    RationalMatrix m(rows, std::vector<Rational>(cols));
    for (auto& row : m)
      for (auto& x : row) x = Rational(t % 3 == 0 ? d(rng) % 2 : d(rng));
    EXPECT_EQ(rank(m), integer_rank(m));
  }
}

TEST(Fox, SpecExamples) {
  // Torus aba^-1b^-1, trivial system: derivative in a is 0.
  const SurfacePresentation torus = SurfacePresentation::orientable(1);
  EXPECT_EQ(fox_entry(torus.relator(), 0, LocalSystem::trivial(2)), Rational(0));
  EXPECT_EQ(fox_entry(torus.relator(), 1, LocalSystem::trivial(2)), Rational(0));
  // Relator abab^-1 with w(a) = -1, w(b) = 1.
  const Word klein{make_letter(0), make_letter(1), make_letter(0), inverse_letter(make_letter(1))};
  const LocalSystem w{{-1, 1}};
  EXPECT_EQ(fox_entry(klein, 0, w), Rational(0));
  EXPECT_EQ(fox_entry(klein, 1, w), Rational(-2));
  // N3 with every generator reversing orientation.
  const SurfacePresentation n3 = SurfacePresentation::nonorientable(3);
  for (int j = 0; j < 3; ++j) EXPECT_EQ(fox_entry(n3.relator(), j, n3.w1()), Rational(0));
}

TEST(Fox, RejectsSystemNotKillingRelator) {
  const Word r{make_letter(0), make_letter(0), make_letter(1)};
  EXPECT_THROW(fox_entry(r, 0, LocalSystem{{1, -1}}), InconsistentSystemError);
}

TEST(TwistedComplex, IsAComplex) {
  for (const auto& s : hyperbolic_surfaces()) {
    EXPECT_EQ(TwistedComplex::build(s, s.w1()).composition(), Rational(0)) << s.name();
    EXPECT_EQ(TwistedComplex::build(s, LocalSystem::trivial(s.generator_count())).composition(), Rational(0));
  }
}

TEST(Betti, KnownValues) {
  EXPECT_EQ(betti(SurfacePresentation::orientable(2)), (Betti{1, 4, 1}));
  EXPECT_EQ(betti(SurfacePresentation::orientable(3)), (Betti{1, 6, 1}));
  EXPECT_EQ(betti(SurfacePresentation::nonorientable(3)), (Betti{1, 2, 0}));
  const auto n3 = SurfacePresentation::nonorientable(3);
  EXPECT_EQ(twisted_betti(n3, n3.w1()), (Betti{0, 2, 1}));
  EXPECT_EQ(betti(SurfacePresentation::orientable(0)), (Betti{1, 0, 1}));
  EXPECT_EQ(betti(SurfacePresentation::nonorientable(1)), (Betti{1, 0, 0}));
}

TEST(Betti, KleinBottleCustomPresentation) {
  const Word klein{make_letter(0), make_letter(1), make_letter(0), inverse_letter(make_letter(1))};
  const SurfacePresentation k = SurfacePresentation::custom("klein", 2, klein, LocalSystem{{1, -1}});
  EXPECT_FALSE(k.is_orientable());
  EXPECT_EQ(twisted_betti(k, k.w1()), (Betti{0, 1, 1}));
  EXPECT_EQ(betti(k), betti(SurfacePresentation::nonorientable(2)));
}

TEST(Betti, PoincareDuality) {
  for (const auto& s : hyperbolic_surfaces()) {
    const int n = s.generator_count();
    // Every character killing the relator.
    for (int mask = 0; mask < (1 << n); ++mask) {
      LocalSystem l;
      for (int j = 0; j < n; ++j) l.omega.push_back((mask >> j) & 1 ? -1 : 1);
      if (l(s.relator()) != 1) continue;
      const Betti a = twisted_betti(s, l), b = twisted_betti(s, l * s.w1());
      EXPECT_EQ(a.b0, b.b2) << s.name() << " " << mask;
      EXPECT_EQ(a.b1, b.b1) << s.name() << " " << mask;
      EXPECT_EQ(a.b2, b.b0) << s.name() << " " << mask;
      EXPECT_EQ(a.euler(), s.euler_characteristic());
    }
  }
}

TEST(VanishingOrder, Routes) {
  for (const auto& s : hyperbolic_surfaces()) {
    const VanishingOrder v = vanishing_order_routes(s);
    EXPECT_TRUE(v.routes_agree) << s.name();
    EXPECT_EQ(v.order, -v.derived_euler);
  }
  EXPECT_EQ(predicted_vanishing_order(SurfacePresentation::orientable(2)), 2);
  EXPECT_EQ(predicted_vanishing_order(SurfacePresentation::orientable(3)), 4);
  EXPECT_EQ(predicted_vanishing_order(SurfacePresentation::nonorientable(3)), 2);
  EXPECT_EQ(predicted_vanishing_order(SurfacePresentation::nonorientable(4)), 3);
  EXPECT_EQ(predicted_vanishing_order(SurfacePresentation::nonorientable(5)), 4);
  const auto n3 = SurfacePresentation::nonorientable(3);
  EXPECT_EQ(gysin_b1(n3, n3.w1()), 2);
  EXPECT_EQ(gysin_b1(SurfacePresentation::orientable(2), LocalSystem::trivial(4)), 4);
}

TEST(VanishingOrder, NonHyperbolicRejected) {
  EXPECT_THROW(vanishing_order_routes(SurfacePresentation::orientable(0)), HypothesisViolationError);
  EXPECT_THROW(vanishing_order_routes(SurfacePresentation::orientable(1)), HypothesisViolationError);
  EXPECT_THROW(vanishing_order_routes(SurfacePresentation::nonorientable(1)), HypothesisViolationError);
  EXPECT_THROW(vanishing_order_routes(SurfacePresentation::nonorientable(2)), HypothesisViolationError);
}

TEST(Gysin, UnsupportedSystem) {
  const auto g2 = SurfacePresentation::orientable(2);
  EXPECT_THROW(gysin_b1(g2, LocalSystem{{-1, 1, 1, 1}}), UnsupportedLocalSystemError);
  EXPECT_THROW(twisted_betti(g2, LocalSystem{{1, 1}}), InconsistentSystemError);
}

TEST(Presentation, InvalidInput) {
  EXPECT_THROW(SurfacePresentation::orientable(-1), ConfigError);
  EXPECT_THROW(SurfacePresentation::nonorientable(0), ConfigError);
  EXPECT_THROW(SurfacePresentation::custom("x", 1, Word{make_letter(1)}, LocalSystem{{1}}), ConfigError);
  EXPECT_THROW(SurfacePresentation::custom("x", 2, Word{}, LocalSystem{{1}}), ConfigError);
}
