#pragma once

// Trace-formula weights per closed orbit and truncated log-zeta sums in the
// half-plane Im(lambda) > h.
//
//   log zeta_R(lambda) = - sum (T#/T) e^{i lambda T}
//   log zeta_k(lambda) = - sum a_k e^{i lambda T}
//   a_k = (T#/T) tr(wedge^k P) sgn(det P|E_s) / |det(I - P)|

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "ruelle/compensated_sum.hpp"
#include "ruelle/errors.hpp"
#include "ruelle/linalg_core.hpp"
#include "ruelle/orbit_enum.hpp"

namespace ruelle {

using Complex = std::complex<double>;

struct WeightVector {
  std::vector<double> a;  // a_0 .. a_{dim_s + dim_u}
  double ratio = 1.0;     // T#/T
  int dim_s = 1;
};

struct WeightOptions {
  /// Debug switch: replaces sgn(det P|E_s) by +1 while P keeps its true
  /// eigenvalues. Breaks the identities on orientation-reversing orbits.
  bool ignore_orientation_twist = false;
};

/// Poincare data of a geodesic-flow orbit: eigenvalues eps e^{+-T}.
inline PoincareData surface_poincare(const ClosedOrbit& o) {
  return PoincareData::surface(o.T, o.epsilon);
}

inline WeightVector orbit_weights(const ClosedOrbit& o, const PoincareData& p,
                                  const WeightOptions& opts = {}) {
  if (!(o.T > 0.0) || !(o.T_sharp > 0.0) || o.m < 1) {
    throw ConsistencyError("orbit_weights: orbit has no positive period");
  }
  if (p.dim_s() == 1 && p.dim_u() == 1) {
    // Surface case: P must have eigenvalues eps e^{+-T}.
    if (const auto& s = p.surface_form()) {
      if (s->epsilon != o.epsilon || std::abs(s->T - o.T) > 1e-12 * o.T) {
        throw ConsistencyError("orbit_weights: Poincare data does not match the orbit");
      }
    } else {
      const double tr1 = exterior_trace(p, 1);
      const double expect = o.epsilon * 2.0 * std::cosh(o.T);
      if (std::abs(tr1 - expect) > 1e-9 * std::abs(expect) || std::abs(exterior_trace(p, 2) - 1.0) > 1e-9) {
        throw ConsistencyError("orbit_weights: Poincare data does not match the orbit");
      }
    }
  }
  WeightVector w;
  w.dim_s = p.dim_s();
  w.ratio = o.T_sharp / o.T;
  const double sign = opts.ignore_orientation_twist ? 1.0 : static_cast<double>(p.stable_sign());
  const auto& s = p.surface_form();
  const double abs_det = s ? surface_abs_det_one_minus(s->T, s->epsilon) : std::abs(det_one_minus(p));
  w.a.resize(static_cast<std::size_t>(p.dim()) + 1);
  for (int k = 0; k <= p.dim(); ++k) {
    w.a[static_cast<std::size_t>(k)] = w.ratio * exterior_trace(p, k) * sign / abs_det;
  }
  return w;
}

/// sum_k (-1)^{k + dim_s} a_k.
inline double alternating_weight_sum(const WeightVector& w) {
  CompensatedSum s;
  for (std::size_t k = 0; k < w.a.size(); ++k) {
    s.add(((k + static_cast<std::size_t>(w.dim_s)) % 2 ? -1.0 : 1.0) * w.a[k]);
  }
  return s.value();
}

inline double alternating_weight_residual(const ClosedOrbit& o, const PoincareData& p,
                                          const WeightOptions& opts = {}) {
  const WeightVector w = orbit_weights(o, p, opts);
  return std::abs(alternating_weight_sum(w) - w.ratio);
}

struct TruncatedValue {
  Complex value;
  double T_max = 0.0;
  double tail_estimate = 0.0;
};

struct WeightedOrbit {
  double T = 0.0;
  WeightVector weights;
};

/// Census with per-orbit weights, ready for evaluation at many lambda.
struct WeightedCensus {
  std::vector<WeightedOrbit> terms;  // sorted by T descending
  double T_max = 0.0;
  double entropy = 1.0;        // h
  double tail_constant = 0.0;  // C in N(t) <= C e^{h t}
  int dim_s = 1;
  int dim = 2;
};

/// Smallest C with N(t) <= C e^{h t} at every census period.
inline double fit_tail_constant(const std::vector<CountPoint>& counting, double entropy) {
  double c = 0.0;
  for (const auto& p : counting) c = std::max(c, static_cast<double>(p.count) * std::exp(-entropy * p.t));
  return c;
}

inline WeightedCensus weigh(const std::vector<ClosedOrbit>& orbits, double T_max, double entropy,
                            const WeightOptions& opts = {}) {
  WeightedCensus wc;
  wc.T_max = T_max;
  wc.entropy = entropy;
  std::vector<ClosedOrbit> sorted = orbits;
  std::sort(sorted.begin(), sorted.end(), orbit_less);
  wc.tail_constant = fit_tail_constant(counting_function(sorted), entropy);
  wc.terms.reserve(sorted.size());
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    wc.terms.push_back({it->T, orbit_weights(*it, surface_poincare(*it), opts)});
  }
  return wc;
}

inline WeightedCensus weigh(const Census& census, double entropy, const WeightOptions& opts = {}) {
  return weigh(census.orbits, census.T_max, entropy, opts);
}

/// C e^{(h - sigma) T_max} / (sigma - h), sigma = Im(lambda).
inline double tail_estimate(const WeightedCensus& wc, Complex lambda) {
  const double sigma = lambda.imag();
  return wc.tail_constant * std::exp((wc.entropy - sigma) * wc.T_max) / (sigma - wc.entropy);
}

namespace detail {

inline void require_convergent(const WeightedCensus& wc, Complex lambda) {
  if (!(lambda.imag() > wc.entropy)) {
    throw DivergenceError("log zeta: Im(lambda) = " + std::to_string(lambda.imag()) +
                          " is not above the entropy h = " + std::to_string(wc.entropy));
  }
}

inline Complex phase(double T, Complex lambda) { return std::exp(Complex(0.0, 1.0) * lambda * T); }

template <class Weight>
TruncatedValue log_zeta_sum(const WeightedCensus& wc, Complex lambda, Weight weight) {
  require_convergent(wc, lambda);
  CompensatedComplexSum s;
  for (const auto& t : wc.terms) s.add(-weight(t) * phase(t.T, lambda));
  return {s.value(), wc.T_max, tail_estimate(wc, lambda)};
}

}  // namespace detail

inline TruncatedValue log_zeta_R(const WeightedCensus& wc, Complex lambda) {
  return detail::log_zeta_sum(wc, lambda, [](const WeightedOrbit& t) { return t.weights.ratio; });
}

inline TruncatedValue log_zeta_k(const WeightedCensus& wc, int k, Complex lambda) {
  if (k < 0 || k > wc.dim) throw std::out_of_range("log_zeta_k: k out of range");
  return detail::log_zeta_sum(wc, lambda, [k](const WeightedOrbit& t) {
    return t.weights.a[static_cast<std::size_t>(k)];
  });
}

/// |log zeta_R - sum_k (-1)^{k + dim_s} log zeta_k| at the same truncation.
inline double factorization_residual(const WeightedCensus& wc, Complex lambda) {
  const Complex r = log_zeta_R(wc, lambda).value;
  CompensatedComplexSum rhs;
  for (int k = 0; k <= wc.dim; ++k) {
    rhs.add(((k + wc.dim_s) % 2 ? -1.0 : 1.0) * log_zeta_k(wc, k, lambda).value);
  }
  return std::abs(r - rhs.value());
}

inline double factorization_tolerance(std::size_t census_size) {
  return 1e-11 + static_cast<double>(census_size) * 1e-15;
}

/// Largest per-orbit alternating-sum residual over a census.
inline double max_per_orbit_residual(const std::vector<ClosedOrbit>& orbits,
                                     const WeightOptions& opts = {}) {
  double worst = 0.0;
  for (const auto& o : orbits) worst = std::max(worst, alternating_weight_residual(o, surface_poincare(o), opts));
  return worst;
}

}  // namespace ruelle
