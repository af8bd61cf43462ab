#pragma once

// Dehn's algorithm for one-relator groups satisfying small cancellation
// (e.g. closed surface groups), plus a conjugacy test built on it.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ruelle/words.hpp"

namespace ruelle {

class DehnReducer {
 public:
  DehnReducer() = default;

  explicit DehnReducer(Word relator) : relator_(cyclic_reduce(relator)) {
    const Word inv = ruelle::inverse(relator_);
    for (const Word* base : {static_cast<const Word*>(&relator_), &inv}) {
      for (std::size_t s = 0; s < base->size(); ++s) rotations_.push_back(rotate_left(*base, s));
    }
  }

  const Word& relator() const { return relator_; }
  std::size_t relator_length() const { return relator_.size(); }

  /// Longest prefix of a relator rotation matching `w` starting at `pos`,
  /// read cyclically when `cyclic` is set. Returns the length and the
  /// rotation index of the best match.
  std::pair<std::size_t, std::size_t> longest_match(std::span<const Letter> w, std::size_t pos,
                                                    bool cyclic) const {
    std::size_t best = 0, which = 0;
    const std::size_t n = w.size();
    const std::size_t limit = cyclic ? n : n - pos;
    for (std::size_t r = 0; r < rotations_.size(); ++r) {
      const Word& rel = rotations_[r];
      std::size_t l = 0;
      while (l < rel.size() && l < limit && w[(pos + l) % n] == rel[l]) ++l;
      if (l > best) {
        best = l;
        which = r;
      }
    }
    return {best, which};
  }

  /// True when no (linear) subword is more than half of a relator rotation.
  bool is_reduced(std::span<const Letter> w) const {
    if (relator_.empty()) return true;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (2 * longest_match(w, i, false).first > relator_.size()) return false;
    }
    return true;
  }

  /// As is_reduced, but subwords may wrap around the end of w.
  bool is_cyclically_reduced(std::span<const Letter> w) const {
    if (!ruelle::is_cyclically_reduced(w)) return false;
    if (relator_.empty()) return true;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (2 * longest_match(w, i, true).first > relator_.size()) return false;
    }
    return true;
  }

  /// Dehn's algorithm on a linear word. The result is freely reduced and
  /// Dehn-reduced; it is empty iff w is trivial in the group.
  Word reduce(std::span<const Letter> w) const {
    Word cur = free_reduce(w);
    if (relator_.empty()) return cur;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < cur.size() && !changed; ++i) {
        const auto [len, r] = longest_match(cur, i, false);
        if (2 * len <= relator_.size()) continue;
        const Word& rel = rotations_[r];
        Word next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(i));
        const Word complement =
            ruelle::inverse(std::span<const Letter>(rel).subspan(len));
        next.insert(next.end(), complement.begin(), complement.end());
        next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(i + len), cur.end());
        cur = free_reduce(next);
        changed = true;
      }
    }
    return cur;
  }

  bool is_trivial(std::span<const Letter> w) const { return reduce(w).empty(); }

  /// Cyclic Dehn reduction: the output is cyclically reduced, contains no
  /// cyclic subword longer than half a relator rotation, and is conjugate
  /// to the input.
  CyclicWord reduce_cyclic(std::span<const Letter> w) const {
    Word cur = cyclic_reduce(w);
    if (relator_.empty()) return CyclicWord::from(cur);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < cur.size() && !changed; ++i) {
        const auto [len, r] = longest_match(cur, i, true);
        if (2 * len <= relator_.size()) continue;
        // Rotate so the match starts at 0, then swap it for the shorter
        // complementary part of the relator.
        Word rotated = rotate_left(cur, i);
        const Word& rel = rotations_[r];
        Word next = ruelle::inverse(std::span<const Letter>(rel).subspan(len));
        next.insert(next.end(), rotated.begin() + static_cast<std::ptrdiff_t>(len), rotated.end());
        cur = cyclic_reduce(next);
        changed = true;
      }
    }
    return CyclicWord::from(cur);
  }

  /// Decides whether two cyclically Dehn-reduced words are conjugate. For
  /// C'(1/6) relators (pieces of length <= 1) any two such conjugates are
  /// related by rotations and a conjugator of length at most one.
  bool conjugate(std::span<const Letter> u, std::span<const Letter> v) const {
    if (u.empty() || v.empty()) return u.empty() && v.empty();
    if (relator_.empty()) return CyclicWord::from(u) == CyclicWord::from(v);
    if ((u.size() + v.size()) % 2 != relator_.size() % 2 && relator_.size() % 2 == 0) {
      // Even relators preserve word-length parity.
      return false;
    }
    const int gens = max_generator(u, v) + 1;
    for (std::size_t j = 0; j < v.size(); ++j) {
      const Word v_inv = ruelle::inverse(rotate_left(v, j));
      for (std::size_t i = 0; i < u.size(); ++i) {
        const Word ur = rotate_left(u, i);
        if (is_trivial(concat(ur, v_inv))) return true;
        for (int g = 0; g < gens; ++g) {
          for (bool inv : {false, true}) {
            const Letter c = make_letter(g, inv);
            Word w{c};
            w.insert(w.end(), ur.begin(), ur.end());
            w.push_back(inverse_letter(c));
            w.insert(w.end(), v_inv.begin(), v_inv.end());
            if (is_trivial(w)) return true;
          }
        }
      }
    }
    return false;
  }

 private:
  int max_generator(std::span<const Letter> u, std::span<const Letter> v) const {
    int m = 0;
    for (Letter x : relator_) m = std::max(m, generator_of(x));
    for (Letter x : u) m = std::max(m, generator_of(x));
    for (Letter x : v) m = std::max(m, generator_of(x));
    return m;
  }

  Word relator_;
  std::vector<Word> rotations_;
};

}  // namespace ruelle
