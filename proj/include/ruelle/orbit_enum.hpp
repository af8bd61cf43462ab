#pragma once

// Closed orbits of the geodesic flow as conjugacy classes of group words.
//
// Primitive classes are enumerated as Lyndon words (aperiodic least
// rotations) that are cyclically reduced and, for surface groups, cyclically
// Dehn-reduced. A flow trajectory and its time reversal are different
// closed orbits, so a word and its inverse are both reported.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ruelle/dehn.hpp"
#include "ruelle/errors.hpp"
#include "ruelle/group_model.hpp"
#include "ruelle/hyp_geom.hpp"
#include "ruelle/words.hpp"

namespace ruelle {

struct ClosedOrbit {
  CyclicWord word;  // primitive word
  double T_sharp = 0.0;
  int m = 1;
  double T = 0.0;
  int epsilon = 1;  // holonomy sign of the m-th power
  double trace = 0.0;
  IsometryMatrix primitive_matrix;

  int primitive_epsilon() const { return orientation_sign(primitive_matrix); }

  /// Primitive orbit (m = 1) of a word with the given holonomy.
  static ClosedOrbit primitive(CyclicWord word, const IsometryMatrix& holonomy) {
    ClosedOrbit o;
    o.word = std::move(word);
    o.T_sharp = translation_length(holonomy);
    o.m = 1;
    o.T = o.T_sharp;
    o.epsilon = orientation_sign(holonomy);
    o.trace = holonomy.trace();
    o.primitive_matrix = holonomy;
    return o;
  }
};

/// Order used for every exported list: period, then word, then iterate.
inline bool orbit_less(const ClosedOrbit& x, const ClosedOrbit& y) {
  if (x.T != y.T) return x.T < y.T;
  if (x.word.letters() != y.word.letters()) return x.word.letters() < y.word.letters();
  return x.m < y.m;
}

/// Orbits for m = 1, ..., floor(T_max / T_sharp). Signs alternate when the
/// primitive holonomy reverses orientation.
inline std::vector<ClosedOrbit> iterate(const ClosedOrbit& primitive, double T_max) {
  if (primitive.m != 1) throw ConsistencyError("iterate: orbit is not primitive");
  std::vector<ClosedOrbit> out;
  for (int m = 1; static_cast<double>(m) * primitive.T_sharp <= T_max; ++m) {
    ClosedOrbit o = primitive;
    o.m = m;
    o.T = static_cast<double>(m) * primitive.T_sharp;
    o.epsilon = m % 2 == 0 ? 1 : primitive.primitive_epsilon();
    o.trace = primitive.primitive_matrix.pow(m).trace();
    out.push_back(std::move(o));
  }
  return out;
}

struct EnumerationOptions {
  int max_word_len = 1;
  /// Classes whose translation length exceeds this are skipped.
  double length_cap = std::numeric_limits<double>::infinity();
  unsigned threads = 1;
};

/// Nonempty reduced word whose image does not translate along a geodesic.
/// A sound model never produces one.
struct SoundnessWarning {
  CyclicWord word;
  IsometryKind kind;
};

/// Distinct conjugacy classes with the same period (up to time reversal),
/// listed for manual review.
struct Collision {
  double T_sharp = 0.0;
  std::vector<CyclicWord> words;
};

struct EnumerationResult {
  std::vector<ClosedOrbit> orbits;
  std::vector<SoundnessWarning> soundness;
  std::vector<Collision> collisions;
  std::size_t candidates = 0;             // Lyndon words passing the reduction filters
  std::size_t merged_representatives = 0;  // extra words of an already-seen class
  std::size_t non_primitive_dropped = 0;   // classes found to be proper powers
};

namespace detail {

struct Candidate {
  Word word;
  IsometryMatrix matrix;
};

/// Depth-first walk of the prenecklace tree (Fredricksen-Kessler-Maiorana)
/// restricted to freely reduced, Dehn-reduced prefixes.
class LyndonWalker {
 public:
  LyndonWalker(const GroupModel& model, int max_len) : model_(model), max_len_(max_len) {}

  /// Walks every word starting with `first`, appending Lyndon candidates.
  void run(Letter first, std::vector<Candidate>& out) {
    word_.assign(1, first);
    mats_.assign(1, model_.letter_matrix(first));
    visit(1, out);
  }

 private:
  void visit(std::size_t period, std::vector<Candidate>& out) {
    const std::size_t t = word_.size();
    if (period == t) consider(out);
    if (static_cast<int>(t) >= max_len_) return;
    const Letter floor = word_[t - period];
    const auto letters = static_cast<Letter>(model_.letter_count());
    for (Letter x = floor; x < letters; ++x) {
      if (x == inverse_letter(word_.back())) continue;
      word_.push_back(x);
      if (suffix_dehn_ok()) {
        mats_.push_back(mats_.back() * model_.letter_matrix(x));
        visit(x == floor ? period : t + 1, out);
        mats_.pop_back();
      }
      word_.pop_back();
    }
  }

  bool suffix_dehn_ok() const {
    const DehnReducer& dehn = model_.dehn();
    const std::size_t rl = dehn.relator_length();
    if (rl == 0) return true;
    const std::size_t need = rl / 2 + 1;
    if (word_.size() < need) return true;
    // Only matches ending at the new letter are new.
    for (std::size_t start = word_.size() >= rl ? word_.size() - rl : 0;
         start + need <= word_.size(); ++start) {
      const auto [len, r] =
          dehn.longest_match(std::span<const Letter>(word_).subspan(start), 0, false);
      (void)r;
      if (start + len == word_.size() && len >= need) return false;
    }
    return true;
  }

  void consider(std::vector<Candidate>& out) const {
    if (word_.size() > 1 && word_.front() == inverse_letter(word_.back())) return;
    if (model_.relator() && !model_.dehn().is_cyclically_reduced(word_)) return;
    out.push_back(Candidate{word_, mats_.back()});
  }

  const GroupModel& model_;
  int max_len_;
  Word word_;
  std::vector<IsometryMatrix> mats_;
};

inline std::vector<Candidate> lyndon_candidates(const GroupModel& model, int max_len,
                                                unsigned threads) {
  const int letters = model.letter_count();
  std::vector<std::vector<Candidate>> per_task(static_cast<std::size_t>(letters));
  std::atomic<int> next{0};
  const auto worker = [&] {
    LyndonWalker walker(model, max_len);
    for (int task = next++; task < letters; task = next++) {
      walker.run(static_cast<Letter>(task), per_task[static_cast<std::size_t>(task)]);
    }
  };
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(letters)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  std::vector<Candidate> all;
  for (auto& v : per_task) {
    all.insert(all.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  }
  return all;
}

inline bool close_rel(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
}

}  // namespace detail

/// One representative per conjugacy class of primitive closed orbits whose
/// shortest cyclically reduced word has length <= max_word_len.
inline EnumerationResult enumerate_primitives(const GroupModel& model,
                                              const EnumerationOptions& opts) {
  if (opts.max_word_len < 1) throw ConfigError("enumerate_primitives: max_word_len must be >= 1");
  EnumerationResult result;

  struct Kept {
    CyclicWord word;
    IsometryMatrix matrix;
    double length;
  };
  std::vector<Kept> kept;
  for (auto& c : detail::lyndon_candidates(model, opts.max_word_len, opts.threads)) {
    ++result.candidates;
    const IsometryKind kind = classify(c.matrix);
    if (kind != IsometryKind::hyperbolic && kind != IsometryKind::glide) {
      result.soundness.push_back({CyclicWord::from(c.word), kind});
      continue;
    }
    const double len = translation_length(c.matrix);
    if (len > opts.length_cap) continue;
    kept.push_back({CyclicWord::from(c.word), c.matrix, len});
  }

  // Conjugacy classes are invariant under |trace|, the holonomy sign and
  // the image in the abelianization; the exact test only runs inside
  // buckets agreeing on all three.
  std::sort(kept.begin(), kept.end(), [](const Kept& x, const Kept& y) {
    if (x.length != y.length) return x.length < y.length;
    return x.word < y.word;
  });

  const bool surface = model.relator().has_value();
  constexpr double kTraceTol = 1e-9;

  struct Class {
    std::size_t rep;  // index into kept
    std::vector<int> abelian;
    int sign;
  };

  std::vector<std::size_t> class_reps;
  std::vector<std::vector<std::size_t>> trace_groups;  // of class_reps indices

  std::size_t i = 0;
  while (i < kept.size()) {
    std::size_t j = i + 1;
    while (j < kept.size() && detail::close_rel(kept[j].length, kept[j - 1].length, kTraceTol)) ++j;
    std::vector<Class> classes;
    for (std::size_t k = i; k < j; ++k) {
      const auto ab = exponent_sums(kept[k].word.letters(), model.rank());
      const int sg = orientation_sign(kept[k].matrix);
      bool merged = false;
      if (surface) {
        for (const auto& cls : classes) {
          if (cls.sign != sg || cls.abelian != ab) continue;
          if (model.dehn().conjugate(kept[cls.rep].word.letters(), kept[k].word.letters())) {
            merged = true;
            break;
          }
        }
      }
      if (merged) {
        ++result.merged_representatives;
      } else {
        classes.push_back({k, ab, sg});
      }
    }
    std::vector<std::size_t> group;
    for (const auto& cls : classes) {
      group.push_back(class_reps.size());
      class_reps.push_back(cls.rep);
    }
    trace_groups.push_back(std::move(group));
    i = j;
  }

  // In a surface group a Lyndon word can still be a proper power of some
  // other class; drop those (their orbits arise as iterates).
  std::vector<bool> dropped(class_reps.size(), false);
  if (surface) {
    for (std::size_t u = 0; u < class_reps.size(); ++u) {
      const Kept& ku = kept[class_reps[u]];
      for (std::size_t v = 0; v < class_reps.size() && !dropped[u]; ++v) {
        const Kept& kv = kept[class_reps[v]];
        if (kv.length * 1.5 > ku.length) break;
        const double ratio = ku.length / kv.length;
        const int k = static_cast<int>(std::lround(ratio));
        if (k < 2 || std::abs(ratio - k) > 1e-9 * ratio) continue;
        if (orientation_sign(kv.matrix.pow(k)) != orientation_sign(ku.matrix)) continue;
        const CyclicWord vk = model.dehn().reduce_cyclic(power(kv.word.letters(), k));
        if (model.dehn().conjugate(ku.word.letters(), vk.letters())) dropped[u] = true;
      }
      if (dropped[u]) ++result.non_primitive_dropped;
    }
  }

  for (std::size_t c = 0; c < class_reps.size(); ++c) {
    if (dropped[c]) continue;
    const Kept& k = kept[class_reps[c]];
    ClosedOrbit o;
    o.word = k.word;
    o.T_sharp = k.length;
    o.T = k.length;
    o.m = 1;
    o.epsilon = orientation_sign(k.matrix);
    o.trace = k.matrix.trace();
    o.primitive_matrix = k.matrix;
    result.orbits.push_back(std::move(o));
  }

  if (surface) {
    for (const auto& group : trace_groups) {
      std::vector<CyclicWord> words;
      for (std::size_t c : group) {
        if (!dropped[c]) words.push_back(kept[class_reps[c]].word);
      }
      // A class and its time reversal always share a period.
      std::vector<CyclicWord> unpaired;
      for (const auto& w : words) {
        const CyclicWord inv = model.dehn().reduce_cyclic(inverse(w.letters()));
        bool reversal_of_listed = false;
        for (const auto& u : unpaired) {
          if (model.dehn().conjugate(u.letters(), inv.letters())) {
            reversal_of_listed = true;
            break;
          }
        }
        if (!reversal_of_listed) unpaired.push_back(w);
      }
      if (unpaired.size() > 1) {
        result.collisions.push_back({kept[class_reps[group.front()]].length, std::move(words)});
      }
    }
  }

  std::sort(result.orbits.begin(), result.orbits.end(), orbit_less);
  return result;
}

struct CountPoint {
  double t = 0.0;
  std::size_t count = 0;  // number of census orbits with period <= t
};

struct CensusOptions {
  double T_max = 0.0;
  /// Used when the model has no lambda_min (falling back to the model's
  /// default); otherwise a floor on the length derived from lambda_min.
  std::optional<int> max_word_len;
  bool require_complete = true;
  unsigned threads = 1;
};

struct Census {
  std::string model_name;
  double T_max = 0.0;
  int max_word_len = 0;
  bool complete = false;
  std::vector<ClosedOrbit> orbits;  // sorted by (T, word, m)
  std::vector<CountPoint> counting;
  std::vector<SoundnessWarning> soundness;
  std::vector<Collision> collisions;
  std::size_t primitive_count = 0;
};

inline std::vector<CountPoint> counting_function(const std::vector<ClosedOrbit>& sorted) {
  std::vector<CountPoint> pts;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1].T == sorted[i].T) continue;
    pts.push_back({sorted[i].T, i + 1});
  }
  return pts;
}

/// All closed orbits (primitive and iterated) with period <= T_max.
inline Census census(const GroupModel& model, const CensusOptions& opts) {
  if (!(opts.T_max > 0.0)) throw ConfigError("census: T_max must be positive");
  Census out;
  out.model_name = model.name();
  out.T_max = opts.T_max;
  if (model.lambda_min) {
    const int needed = std::max(1, static_cast<int>(std::ceil(opts.T_max / *model.lambda_min)));
    out.max_word_len = std::max(needed, opts.max_word_len.value_or(0));
    out.complete = true;
  } else {
    if (opts.require_complete) {
      throw IncompleteCensusError("census: model '" + model.name() +
                                  "' has no word-length lower bound; completeness cannot be "
                                  "guaranteed (pass an explicit max word length and allow an "
                                  "incomplete census)");
    }
    const std::optional<int> len = opts.max_word_len ? opts.max_word_len : model.default_max_word_len;
    if (!len) {
      throw IncompleteCensusError("census: model '" + model.name() +
                                  "' needs an explicit max word length");
    }
    out.max_word_len = *len;
    out.complete = false;
  }

  EnumerationResult prim = enumerate_primitives(
      model, EnumerationOptions{out.max_word_len, opts.T_max, opts.threads});
  out.primitive_count = prim.orbits.size();
  for (const auto& p : prim.orbits) {
    for (auto& o : iterate(p, opts.T_max)) out.orbits.push_back(std::move(o));
  }
  std::sort(out.orbits.begin(), out.orbits.end(), orbit_less);
  out.counting = counting_function(out.orbits);
  out.soundness = std::move(prim.soundness);
  out.collisions = std::move(prim.collisions);
  return out;
}

}  // namespace ruelle
