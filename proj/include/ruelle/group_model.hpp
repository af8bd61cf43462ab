#pragma once

// Finitely generated groups of plane isometries: closed surface groups with
// a single relator, and free (Schottky) groups with a ping-pong domain.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ruelle/dehn.hpp"
#include "ruelle/errors.hpp"
#include "ruelle/hyp_geom.hpp"
#include "ruelle/words.hpp"

namespace ruelle {

/// Half-plane of the upper half-plane cut out by a semicircle over
/// [from, to]; `outer` selects the unbounded side.
struct HalfPlane {
  Geodesic boundary;
  bool outer = false;

  bool contains(std::complex<double> z) const {
    const double centre = 0.5 * (boundary.from + boundary.to);
    const double radius = 0.5 * std::abs(boundary.to - boundary.from);
    const double dist = std::abs(z - centre);
    return outer ? dist > radius : dist < radius;
  }
};

/// One half-plane per letter: generator g maps the complement of
/// side[g^-1] onto the closure of side[g].
struct PingPongDomain {
  std::vector<HalfPlane> sides;  // indexed by Letter
};

class GroupModel {
 public:
  GroupModel(std::string name, Alphabet alphabet, std::vector<IsometryMatrix> generators,
             std::optional<Word> relator = std::nullopt)
      : name_(std::move(name)),
        alphabet_(std::move(alphabet)),
        generators_(std::move(generators)),
        relator_(std::move(relator)) {
    if (static_cast<int>(generators_.size()) != alphabet_.size()) {
      throw ConfigError("model '" + name_ + "': generator count does not match alphabet");
    }
    if (generators_.empty()) throw ConfigError("model '" + name_ + "' has no generators");
    letters_.reserve(2 * generators_.size());
    for (const auto& g : generators_) {
      letters_.push_back(g);
      letters_.push_back(g.inverse());
    }
    if (relator_) dehn_ = DehnReducer(*relator_);
  }

  const std::string& name() const { return name_; }
  const Alphabet& alphabet() const { return alphabet_; }
  int rank() const { return static_cast<int>(generators_.size()); }
  int letter_count() const { return 2 * rank(); }
  const std::vector<IsometryMatrix>& generators() const { return generators_; }
  const IsometryMatrix& letter_matrix(Letter x) const { return letters_.at(x); }
  const std::optional<Word>& relator() const { return relator_; }
  const DehnReducer& dehn() const { return dehn_; }

  /// Orientable iff every generator preserves orientation.
  bool orientable() const {
    for (const auto& g : generators_) {
      if (orientation_sign(g) < 0) return false;
    }
    return true;
  }

  IsometryMatrix image(std::span<const Letter> w) const {
    IsometryMatrix m = IsometryMatrix::identity();
    for (Letter x : w) m = m * letter_matrix(x);
    return m;
  }

  /// Orientation character g -> sgn det(g), evaluated on a word.
  int sign(std::span<const Letter> w) const {
    int s = 1;
    for (Letter x : w) s *= orientation_sign(letter_matrix(x));
    return s;
  }

  /// Word-length to geodesic-length lower bound; needed for complete censuses.
  std::optional<double> lambda_min;
  /// Word-length bound used when lambda_min is absent and an incomplete
  /// census is acceptable.
  std::optional<int> default_max_word_len;
  /// Exponential growth rate h of the orbit count (topological entropy).
  double entropy = 1.0;
  std::optional<PingPongDomain> ping_pong;
  std::string description;

  /// Throws ConfigError when the relator image is not +-I within 1e-8 or
  /// the orientation character does not kill the relator.
  void validate() const {
    if (relator_) {
      const IsometryMatrix r = image(*relator_);
      if (!r.projectively_equal(IsometryMatrix::identity(), 1e-8)) {
        std::ostringstream os;
        os << "model '" << name_ << "': relator image " << r << " is not +-identity";
        throw ConfigError(os.str());
      }
      if (sign(*relator_) != 1) {
        throw ConfigError("model '" + name_ + "': orientation character does not kill the relator");
      }
    }
  }

 private:
  std::string name_;
  Alphabet alphabet_;
  std::vector<IsometryMatrix> generators_;
  std::vector<IsometryMatrix> letters_;
  std::optional<Word> relator_;
  DehnReducer dehn_;
};

/// Checks the ping-pong conditions: the half-planes are pairwise disjoint
/// at positive distance, each generator carries the boundary of side[x^-1]
/// onto the boundary of side[x], and carries i into side[x].
inline bool verify_ping_pong(const GroupModel& model, const PingPongDomain& domain,
                             std::string* why = nullptr) {
  const auto fail = [why](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (static_cast<int>(domain.sides.size()) != model.letter_count()) {
    return fail("ping-pong domain needs one half-plane per letter");
  }
  const auto n = domain.sides.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Geodesic& g = domain.sides[i].boundary;
      const Geodesic& h = domain.sides[j].boundary;
      try {
        if (!(geodesic_distance(g, h) > 0.0)) return fail("ping-pong sides touch");
      } catch (const Error&) {
        return fail("ping-pong sides intersect");
      }
      // Disjoint half-planes: neither contains a point of the other's
      // boundary apex.
      const auto apex = [](const Geodesic& geo) {
        const double c = 0.5 * (geo.from + geo.to);
        const double r = 0.5 * std::abs(geo.to - geo.from);
        return std::complex<double>(c, r);
      };
      if (domain.sides[i].contains(apex(h)) || domain.sides[j].contains(apex(g))) {
        return fail("ping-pong half-planes overlap");
      }
    }
  }
  const std::complex<double> base(0.0, 1.0);
  for (std::size_t x = 0; x < n; ++x) {
    if (domain.sides[x].contains(base)) return fail("base point i lies in a ping-pong half-plane");
    const IsometryMatrix& m = model.letter_matrix(static_cast<Letter>(x));
    const Geodesic& src = domain.sides[inverse_letter(static_cast<Letter>(x))].boundary;
    const Geodesic& dst = domain.sides[x].boundary;
    const auto act = [&m](double t) { return (m.a() * t + m.b()) / (m.c() * t + m.d()); };
    const double p = act(src.from), q = act(src.to);
    const double scale = 1.0 + std::abs(dst.from) + std::abs(dst.to);
    const bool same = (std::abs(p - dst.from) + std::abs(q - dst.to) < 1e-9 * scale) ||
                      (std::abs(p - dst.to) + std::abs(q - dst.from) < 1e-9 * scale);
    if (!same) return fail("generator does not pair its ping-pong sides");
    if (!domain.sides[x].contains(m.apply(base))) {
      return fail("generator does not map the base point into its ping-pong half-plane");
    }
  }
  return true;
}

/// Minimum distance between distinct sides of the ping-pong domain. A
/// cyclically reduced word of length n has translation length >= n times
/// this value: its axis crosses the fundamental domain n times, each time
/// between two different sides.
inline double ping_pong_lambda_min(const PingPongDomain& domain) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < domain.sides.size(); ++i) {
    for (std::size_t j = i + 1; j < domain.sides.size(); ++j) {
      best = std::min(best, geodesic_distance(domain.sides[i].boundary, domain.sides[j].boundary));
    }
  }
  return best;
}

namespace models {

inline constexpr double kSchottkyTranslation = 2.5;
/// Critical exponent of both built-in Schottky groups, estimated from the
/// zero of the pressure of -s * length over cyclic words of length 8.
inline constexpr double kSchottkyEntropy = 0.549;

/// Genus-2 Fuchsian group of the regular octagon with angles pi/4 (the
/// Bolza surface). Generator k translates by 2 arccosh(1 + sqrt2) along the
/// axis at angle k pi/4 through i; relator aBcDAbCd.
inline GroupModel bolza() {
  const double alpha = 1.0 + std::numbers::sqrt2;
  const double beta = std::sqrt(2.0 + 2.0 * std::numbers::sqrt2);
  std::vector<IsometryMatrix> gens;
  for (int k = 0; k < 4; ++k) {
    const double theta = k * std::numbers::pi / 4.0;
    const double c = std::cos(theta), s = std::sin(theta);
    gens.push_back(IsometryMatrix::normalized(alpha + beta * c, -beta * s, -beta * s, alpha - beta * c));
  }
  Alphabet abc("abcd");
  GroupModel model("bolza", abc, std::move(gens), abc.parse("aBcDAbCd"));
  model.entropy = 1.0;
  // Orbit counts with T <= 8 are unchanged from word length 7 to 9.
  model.default_max_word_len = 8;
  model.description = "genus-2 Bolza surface group (regular octagon, relator aBcDAbCd)";
  model.validate();
  return model;
}

namespace detail {

inline GroupModel schottky(std::string name, bool orientable) {
  const double len = kSchottkyTranslation;
  const double t = std::exp(len / 2.0);
  // a: along the imaginary axis (a glide when orientation-reversing);
  // b: along the unit semicircle.
  const IsometryMatrix a = IsometryMatrix::normalized(t, 0.0, 0.0, orientable ? 1.0 / t : -1.0 / t);
  const IsometryMatrix b =
      IsometryMatrix::normalized(std::cosh(len / 2.0), std::sinh(len / 2.0), std::sinh(len / 2.0),
                                 std::cosh(len / 2.0));
  GroupModel model(std::move(name), Alphabet("ab"), {a, b});
  const double u = std::exp(-len / 2.0);
  const double lo = std::tanh(len / 4.0), hi = 1.0 / lo;
  PingPongDomain domain;
  domain.sides = {
      HalfPlane{{-1.0 / u, 1.0 / u}, true},  // a: neighbourhood of infinity
      HalfPlane{{-u, u}, false},             // A: neighbourhood of 0
      HalfPlane{{lo, hi}, false},            // b: neighbourhood of +1
      HalfPlane{{-hi, -lo}, false},          // B: neighbourhood of -1
  };
  std::string why;
  if (!verify_ping_pong(model, domain, &why)) throw ConfigError("schottky model: " + why);
  model.lambda_min = ping_pong_lambda_min(domain);
  model.ping_pong = domain;
  model.entropy = kSchottkyEntropy;
  model.validate();
  return model;
}

}  // namespace detail

/// Free rank-2 Schottky group of two hyperbolic translations of length 2.5.
inline GroupModel schottky_orientable() {
  GroupModel m = detail::schottky("schottky-orientable", true);
  m.description = "free rank-2 orientable Schottky group";
  return m;
}

/// As schottky_orientable, with the first generator replaced by the glide
/// reflection diag(t, -1/t).
inline GroupModel schottky_nonorientable() {
  GroupModel m = detail::schottky("schottky-nonorientable", false);
  m.description = "free rank-2 Schottky group with one glide reflection";
  return m;
}

inline std::vector<std::string> builtin_names() {
  return {"bolza", "schottky-orientable", "schottky-nonorientable"};
}

inline std::optional<GroupModel> builtin(const std::string& name) {
  if (name == "bolza") return bolza();
  if (name == "schottky-orientable") return schottky_orientable();
  if (name == "schottky-nonorientable") return schottky_nonorientable();
  return std::nullopt;
}

}  // namespace models

}  // namespace ruelle
