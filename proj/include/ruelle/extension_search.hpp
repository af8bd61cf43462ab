#pragma once

// Search for a closed nonorientable hyperbolic surface double covered by the
// Bolza surface: an orientation-reversing g normalizing Gamma with
// g^2 in Gamma and no reflection in the coset g Gamma.
//
// The normalizer of Gamma is generated mod Gamma by the rotation of order 8
// about i, a rotation of order 3 about a vertex of the (2,3,8) triangle
// tiling, and the reflection z -> -conj(z). Cosets are told apart by
// reducing the image of a generic base point into the Dirichlet octagon.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ruelle/group_model.hpp"
#include "ruelle/hyp_geom.hpp"
#include "ruelle/words.hpp"

namespace ruelle {

namespace detail {

inline double hyperbolic_distance(std::complex<double> z, std::complex<double> w) {
  return std::acosh(1.0 + std::norm(z - w) / (2.0 * z.imag() * w.imag()));
}

/// Rotation by angle theta about i.
inline IsometryMatrix rotation_about_i(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return IsometryMatrix::normalized(c, s, -s, c);
}

inline IsometryMatrix dilation(double d) {
  return IsometryMatrix::normalized(std::exp(d / 2.0), 0.0, 0.0, std::exp(-d / 2.0));
}

}  // namespace detail

/// Coset representatives of Gamma in a supergroup, identified by moving
/// g(z0) into the Dirichlet domain of Gamma centred at i.
class DirichletReducer {
 public:
  explicit DirichletReducer(const GroupModel& model, std::complex<double> base = {0.0731, 1.1093})
      : model_(model), base_(base) {}

  /// gamma * g with gamma in Gamma chosen so the base point lands in the
  /// Dirichlet domain.
  IsometryMatrix reduce(IsometryMatrix g) const {
    const std::complex<double> centre(0.0, 1.0);
    for (int guard = 0; guard < 10000; ++guard) {
      const std::complex<double> z = g.apply(base_);
      double best = detail::hyperbolic_distance(z, centre);
      int which = -1;
      for (int x = 0; x < model_.letter_count(); ++x) {
        const double d = detail::hyperbolic_distance(model_.letter_matrix(static_cast<Letter>(x)).apply(z), centre);
        if (d < best - 1e-12) {
          best = d;
          which = x;
        }
      }
      if (which < 0) return g;
      g = model_.letter_matrix(static_cast<Letter>(which)) * g;
    }
    throw ConsistencyError("Dirichlet reduction did not terminate");
  }

  bool in_gamma(const IsometryMatrix& g) const {
    const IsometryMatrix r = reduce(g);
    return orientation_sign(r) > 0 && r.projectively_equal(IsometryMatrix::identity(), 1e-7);
  }

  bool same_coset(const IsometryMatrix& g, const IsometryMatrix& h) const {
    const IsometryMatrix rg = reduce(g), rh = reduce(h);
    return orientation_sign(rg) == orientation_sign(rh) && rg.projectively_equal(rh, 1e-7);
  }

  bool normalizes(const IsometryMatrix& g) const {
    const IsometryMatrix gi = g.inverse();
    for (const auto& gen : model_.generators()) {
      if (!in_gamma(g * gen * gi)) return false;
    }
    return true;
  }

 private:
  const GroupModel& model_;
  std::complex<double> base_;
};

struct ExtensionCandidate {
  IsometryMatrix g;
  bool involution_mod_gamma = false;
  /// A word w with g w of trace 0 (a reflection), when one was found.
  std::optional<Word> reflection_witness;
  bool accepted = false;
};

struct ExtensionSearchResult {
  std::size_t cosets = 0;  // index of Gamma in the group generated
  std::size_t orientation_reversing = 0;
  std::vector<ExtensionCandidate> candidates;
  std::optional<IsometryMatrix> found;
  std::string summary;
};

/// Normalizer generators (mod Gamma) of the Bolza group.
inline std::vector<IsometryMatrix> bolza_normalizer_generators(const GroupModel& bolza) {
  const DirichletReducer red(bolza);
  std::vector<IsometryMatrix> gens;
  gens.push_back(detail::rotation_about_i(std::numbers::pi / 4.0));
  gens.push_back(IsometryMatrix::normalized(1.0, 0.0, 0.0, -1.0));
  // Order-3 rotation about a vertex of the (2,3,8) tiling, at distance
  // arccosh(cot(pi/8) cot(pi/3)) from i; the direction is found by trial.
  const double d = std::acosh(1.0 / std::tan(std::numbers::pi / 8.0) / std::tan(std::numbers::pi / 3.0));
  for (int k = 0; k < 32; ++k) {
    const IsometryMatrix t = detail::rotation_about_i(k * std::numbers::pi / 16.0) * detail::dilation(d);
    const IsometryMatrix rho = t * detail::rotation_about_i(2.0 * std::numbers::pi / 3.0) * t.inverse();
    if (red.normalizes(rho)) {
      gens.push_back(rho);
      break;
    }
  }
  for (const auto& g : gens) {
    if (!red.normalizes(g)) throw ConsistencyError("normalizer generator does not normalize Gamma");
  }
  return gens;
}

/// Enumerates the cosets of Gamma in its normalizer and tests every
/// orientation-reversing one. Reflections are searched among g w with w a
/// Dehn-reduced word of length <= witness_len.
inline ExtensionSearchResult search_bolza_extension(int witness_len = 4, std::size_t max_cosets = 1000) {
  const GroupModel bolza = models::bolza();
  const DirichletReducer red(bolza);
  const auto gens = bolza_normalizer_generators(bolza);

  std::vector<IsometryMatrix> cosets{IsometryMatrix::identity()};
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    for (const auto& s : gens) {
      const IsometryMatrix h = red.reduce(cosets[i] * s);
      bool seen = false;
      for (const auto& c : cosets) {
        if (red.same_coset(c, h)) {
          seen = true;
          break;
        }
      }
      if (!seen) cosets.push_back(h);
      if (cosets.size() > max_cosets) throw ConsistencyError("extension search: coset enumeration did not close");
    }
  }

  // Dehn-reduced words up to witness_len, breadth first.
  std::vector<Word> words{Word{}};
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (static_cast<int>(words[i].size()) >= witness_len) continue;
    for (int x = 0; x < bolza.letter_count(); ++x) {
      Word w = words[i];
      if (!w.empty() && w.back() == inverse_letter(static_cast<Letter>(x))) continue;
      w.push_back(static_cast<Letter>(x));
      if (bolza.dehn().is_reduced(w)) words.push_back(std::move(w));
    }
  }

  ExtensionSearchResult result;
  result.cosets = cosets.size();
  for (const auto& g : cosets) {
    if (orientation_sign(g) > 0) continue;
    ++result.orientation_reversing;
    ExtensionCandidate cand;
    cand.g = g;
    cand.involution_mod_gamma = red.in_gamma(g * g);
    if (cand.involution_mod_gamma) {
      for (const auto& w : words) {
        if (std::abs((g * bolza.image(w)).trace()) <= 1e-8) {
          cand.reflection_witness = w;
          break;
        }
      }
      cand.accepted = !cand.reflection_witness;
    }
    if (cand.accepted && !result.found) result.found = g;
    result.candidates.push_back(std::move(cand));
  }
  std::size_t involutions = 0;
  for (const auto& c : result.candidates) involutions += c.involution_mod_gamma ? 1 : 0;
  result.summary = std::to_string(result.cosets) + " cosets, " +
                   std::to_string(result.orientation_reversing) + " orientation-reversing, " +
                   std::to_string(involutions) + " involutions mod Gamma, " +
                   (result.found ? "fixed-point-free candidate found"
                                 : "every involution contains a reflection");
  return result;
}

}  // namespace ruelle
