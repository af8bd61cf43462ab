#pragma once

// Cohomology of closed surfaces with coefficients in a rank-one local
// system, from the one-vertex CW structure of a one-relator presentation,
// and the Gysin bookkeeping for the unit tangent bundle.
//
// Cochains: C^0 = Q, C^1 = Q^n (one per generator), C^2 = Q. With a
// character w: pi_1 -> {+-1},
//   d0 (n x 1): row j is w(g_j) - 1,
//   d1 (1 x n): column j is the Fox derivative dR/dg_j pushed through w.

#include <boost/rational.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ruelle/errors.hpp"
#include "ruelle/words.hpp"

namespace ruelle {

using Rational = boost::rational<long long>;
using RationalMatrix = std::vector<std::vector<Rational>>;  // row-major

/// Rank by Gaussian elimination over Q.
inline int rank(RationalMatrix m) {
  int r = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
    std::size_t pivot = static_cast<std::size_t>(r);
    while (pivot < rows && m[pivot][c] == Rational(0)) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[static_cast<std::size_t>(r)]);
    const auto& pr = m[static_cast<std::size_t>(r)];
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows; ++i) {
      if (m[i][c] == Rational(0)) continue;
      const Rational f = m[i][c] / pr[c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * pr[j];
    }
    ++r;
  }
  return r;
}

inline RationalMatrix multiply(const RationalMatrix& x, const RationalMatrix& y) {
  const std::size_t n = x.size(), k = y.size(), m = k ? y[0].size() : 0;
  RationalMatrix z(n, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      for (std::size_t j = 0; j < m; ++j) z[i][j] += x[i][l] * y[l][j];
    }
  }
  return z;
}

/// Character pi_1 -> {+-1}, given on generators.
struct LocalSystem {
  std::vector<int> omega;

  static LocalSystem trivial(int generators) {
    return {std::vector<int>(static_cast<std::size_t>(generators), 1)};
  }

  int operator()(std::span<const Letter> w) const {
    int v = 1;
    for (Letter x : w) v *= omega.at(static_cast<std::size_t>(generator_of(x)));
    return v;
  }

  bool is_trivial() const {
    for (int v : omega) {
      if (v != 1) return false;
    }
    return true;
  }

  friend LocalSystem operator*(const LocalSystem& x, const LocalSystem& y) {
    if (x.omega.size() != y.omega.size()) throw InconsistentSystemError("local systems of different rank");
    LocalSystem z = x;
    for (std::size_t i = 0; i < z.omega.size(); ++i) z.omega[i] *= y.omega[i];
    return z;
  }
  friend bool operator==(const LocalSystem&, const LocalSystem&) = default;
};

class SurfacePresentation {
 public:
  enum class Kind { orientable, nonorientable, custom };

  /// Sigma_g with relator [a1,b1]...[ag,bg]; g = 0 is the sphere.
  static SurfacePresentation orientable(int genus) {
    if (genus < 0) throw ConfigError("orientable surface needs genus >= 0");
    if (2 * genus > 26) throw ConfigError("orientable genus too large for single-letter names");
    SurfacePresentation s;
    s.kind_ = Kind::orientable;
    s.genus_ = genus;
    s.name_ = "g" + std::to_string(genus);
    s.generators_ = 2 * genus;
    for (int i = 0; i < genus; ++i) {
      const Letter a = make_letter(2 * i), b = make_letter(2 * i + 1);
      for (Letter x : {a, b, inverse_letter(a), inverse_letter(b)}) s.relator_.push_back(x);
    }
    s.w1_ = LocalSystem::trivial(s.generators_);
    return s;
  }

  /// N_k with relator a1^2 ... ak^2.
  static SurfacePresentation nonorientable(int k) {
    if (k < 1) throw ConfigError("nonorientable surface needs genus >= 1");
    if (k > 26) throw ConfigError("nonorientable genus too large for single-letter names");
    SurfacePresentation s;
    s.kind_ = Kind::nonorientable;
    s.genus_ = k;
    s.name_ = "N" + std::to_string(k);
    s.generators_ = k;
    for (int i = 0; i < k; ++i) {
      s.relator_.push_back(make_letter(i));
      s.relator_.push_back(make_letter(i));
    }
    s.w1_ = LocalSystem{std::vector<int>(static_cast<std::size_t>(k), -1)};
    return s;
  }

  /// Any one-relator presentation of a closed surface, with its
  /// orientation character.
  static SurfacePresentation custom(std::string name, int generators, Word relator,
                                    LocalSystem orientation_character) {
    SurfacePresentation s;
    s.kind_ = Kind::custom;
    s.name_ = std::move(name);
    s.generators_ = generators;
    s.relator_ = std::move(relator);
    s.w1_ = std::move(orientation_character);
    if (static_cast<int>(s.w1_.omega.size()) != generators) {
      throw ConfigError("orientation character has the wrong number of values");
    }
    for (Letter x : s.relator_) {
      if (generator_of(x) >= generators) throw ConfigError("relator uses an unknown generator");
    }
    return s;
  }

  Kind kind() const { return kind_; }
  int genus() const { return genus_; }
  const std::string& name() const { return name_; }
  int generator_count() const { return generators_; }
  const Word& relator() const { return relator_; }
  /// Orientation character w1 (trivial iff orientable).
  const LocalSystem& w1() const { return w1_; }
  bool is_orientable() const { return w1_.is_trivial(); }

  /// 1 vertex - n edges + 1 face.
  int euler_characteristic() const { return 2 - generators_; }

 private:
  Kind kind_ = Kind::custom;
  int genus_ = 0;
  std::string name_;
  int generators_ = 0;
  Word relator_;
  LocalSystem w1_;
};

/// Fox derivative dR/dg evaluated through w: an occurrence of g after
/// prefix p adds w(p); an occurrence of g^-1 adds -w(p g^-1).
inline Rational fox_entry(std::span<const Letter> relator, int generator, const LocalSystem& w) {
  if (w(relator) != 1) throw InconsistentSystemError("character does not kill the relator");
  long long sum = 0;
  int prefix = 1;
  const int wg = w.omega.at(static_cast<std::size_t>(generator));
  for (Letter x : relator) {
    if (generator_of(x) == generator) sum += is_inverted(x) ? -prefix * wg : prefix;
    prefix *= w.omega.at(static_cast<std::size_t>(generator_of(x)));
  }
  return Rational(sum);
}

struct TwistedComplex {
  RationalMatrix d0;  // n x 1
  RationalMatrix d1;  // 1 x n

  static TwistedComplex build(const SurfacePresentation& s, const LocalSystem& w) {
    const int n = s.generator_count();
    if (static_cast<int>(w.omega.size()) != n) {
      throw InconsistentSystemError("local system does not match the presentation");
    }
    TwistedComplex c;
    c.d0.assign(static_cast<std::size_t>(n), std::vector<Rational>(1, Rational(0)));
    c.d1.assign(1, std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    for (int j = 0; j < n; ++j) {
      c.d0[static_cast<std::size_t>(j)][0] = Rational(w.omega[static_cast<std::size_t>(j)] - 1);
      c.d1[0][static_cast<std::size_t>(j)] = fox_entry(s.relator(), j, w);
    }
    return c;
  }

  /// d1 * d0; zero by the fundamental formula of Fox calculus.
  Rational composition() const {
    if (d0.empty()) return Rational(0);
    return multiply(d1, d0)[0][0];
  }
};

struct Betti {
  int b0 = 0, b1 = 0, b2 = 0;
  int euler() const { return b0 - b1 + b2; }
  friend bool operator==(const Betti&, const Betti&) = default;
};

inline Betti twisted_betti(const SurfacePresentation& s, const LocalSystem& w) {
  const TwistedComplex c = TwistedComplex::build(s, w);
  if (c.composition() != Rational(0)) throw ConsistencyError("twisted complex: d1 d0 != 0");
  const int n = s.generator_count();
  const int r0 = n ? rank(c.d0) : 0;
  const int r1 = n ? rank(c.d1) : 0;
  Betti b{1 - r0, n - r1 - r0, 1 - r1};
  if (b.euler() != s.euler_characteristic()) {
    throw ConsistencyError("twisted Betti numbers of " + s.name() + " miss the Euler characteristic");
  }
  return b;
}

inline Betti betti(const SurfacePresentation& s) {
  return twisted_betti(s, LocalSystem::trivial(s.generator_count()));
}

/// chi' = sum (-1)^i i b_i = -b1 + 2 b2, from untwisted Betti numbers.
inline int derived_euler(const SurfacePresentation& s) {
  const Betti b = betti(s);
  const int chi_prime = -b.b1 + 2 * b.b2;
  const int closed_form = s.is_orientable() ? -b.b1 + 2 : -b.b1;
  if (chi_prime != closed_form) throw ConsistencyError("derived Euler characteristic disagrees with the closed form");
  return chi_prime;
}

/// b1 of the unit tangent bundle with coefficients pulled back from L,
/// from the Gysin sequence
///   0 -> H^1(S; L) -> H^1(M; L) -> H^0(S; L w1) --e--> H^2(S; L).
/// The Euler class map is nonzero exactly when both ends are Q and the
/// Euler number chi(S) is nonzero.
inline int gysin_b1(const SurfacePresentation& s, const LocalSystem& l) {
  const LocalSystem trivial = LocalSystem::trivial(s.generator_count());
  if (!(l == trivial) && !(l == s.w1())) {
    throw UnsupportedLocalSystemError("gysin_b1: only the trivial system and w1 are supported");
  }
  const Betti base = twisted_betti(s, l);
  const Betti twisted = twisted_betti(s, l * s.w1());
  const int e_rank = (twisted.b0 == 1 && base.b2 == 1 && s.euler_characteristic() != 0) ? 1 : 0;
  return base.b1 + (twisted.b0 - e_rank);
}

struct VanishingOrder {
  int order = 0;
  int twisted_b1 = 0;     // b1(S; w1)
  int gysin_b1 = 0;       // b1(M; w1 pulled back)
  int derived_euler = 0;  // chi'
  bool routes_agree = false;
};

/// Order of vanishing at 0 predicted for the geodesic flow on S: b1(M) - 2
/// when S is orientable, b1(S; w1) otherwise. Both must equal -chi'(S).
inline VanishingOrder vanishing_order_routes(const SurfacePresentation& s) {
  if (s.euler_characteristic() >= 0) {
    throw HypothesisViolationError("surface " + s.name() + " has chi >= 0 and carries no hyperbolic metric");
  }
  VanishingOrder v;
  v.derived_euler = derived_euler(s);
  v.twisted_b1 = twisted_betti(s, s.w1()).b1;
  v.gysin_b1 = gysin_b1(s, s.w1());
  const int target = -v.derived_euler;
  if (s.is_orientable()) {
    v.order = v.gysin_b1 - 2;
    v.routes_agree = v.order == target;
  } else {
    v.order = v.twisted_b1;
    v.routes_agree = v.order == target && v.gysin_b1 == target;
  }
  return v;
}

inline int predicted_vanishing_order(const SurfacePresentation& s) {
  const VanishingOrder v = vanishing_order_routes(s);
  if (!v.routes_agree) {
    throw ConsistencyError("vanishing order routes disagree on " + s.name());
  }
  return v.order;
}

}  // namespace ruelle
