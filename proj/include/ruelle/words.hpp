#pragma once

// Words over a finite set of generators and their inverses.
//
// Generator g is encoded as letter 2g, its inverse as 2g + 1, so inversion
// is `letter ^ 1` and the natural order is a < A < b < B < ...

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ruelle/errors.hpp"

namespace ruelle {

using Letter = std::uint8_t;
using Word = std::vector<Letter>;

constexpr Letter make_letter(int generator, bool inverted = false) {
  return static_cast<Letter>(2 * generator + (inverted ? 1 : 0));
}
constexpr Letter inverse_letter(Letter x) { return static_cast<Letter>(x ^ 1U); }
constexpr int generator_of(Letter x) { return x >> 1; }
constexpr bool is_inverted(Letter x) { return (x & 1U) != 0; }

inline Word inverse(std::span<const Letter> w) {
  Word out(w.rbegin(), w.rend());
  for (auto& x : out) x = inverse_letter(x);
  return out;
}

inline Word concat(std::span<const Letter> u, std::span<const Letter> v) {
  Word out(u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

inline Word power(std::span<const Letter> w, int k) {
  Word out;
  out.reserve(w.size() * static_cast<std::size_t>(std::max(k, 0)));
  for (int i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

inline Word rotate_left(std::span<const Letter> w, std::size_t shift) {
  Word out(w.begin(), w.end());
  if (!out.empty()) std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(shift % out.size()), out.end());
  return out;
}

/// Cancels adjacent x x^-1 pairs.
inline Word free_reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && out.back() == inverse_letter(x)) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

/// Free reduction followed by stripping conjugating letters x ... x^-1.
inline Word cyclic_reduce(std::span<const Letter> w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == inverse_letter(r[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo), r.begin() + static_cast<std::ptrdiff_t>(hi));
}

inline bool is_cyclically_reduced(std::span<const Letter> w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[(i + 1) % w.size()] == inverse_letter(w[i])) return false;
  }
  return true;
}

inline Word least_rotation(std::span<const Letter> w) {
  Word best(w.begin(), w.end());
  for (std::size_t s = 1; s < w.size(); ++s) {
    Word r = rotate_left(w, s);
    if (r < best) best = std::move(r);
  }
  return best;
}

/// True when w = v^k as words for some k >= 2.
inline bool is_proper_power(std::span<const Letter> w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p <= n / 2; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return true;
  }
  return false;
}

/// Sum of exponents of each generator (the image in the abelianization).
inline std::vector<int> exponent_sums(std::span<const Letter> w, int generators) {
  std::vector<int> sums(static_cast<std::size_t>(generators), 0);
  for (Letter x : w) sums[static_cast<std::size_t>(generator_of(x))] += is_inverted(x) ? -1 : 1;
  return sums;
}

/// Generator names: one lowercase character per generator; inverses are
/// printed upper case.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string names) : names_(std::move(names)) {
    for (char ch : names_) {
      if (!std::islower(static_cast<unsigned char>(ch))) {
        throw ConfigError("generator names must be lowercase letters");
      }
    }
    std::string sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ConfigError("duplicate generator name");
    }
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& names() const { return names_; }

  char symbol(Letter x) const {
    const char base = names_.at(static_cast<std::size_t>(generator_of(x)));
    return is_inverted(x) ? static_cast<char>(std::toupper(static_cast<unsigned char>(base))) : base;
  }

  std::string format(std::span<const Letter> w) const {
    std::string out;
    out.reserve(w.size());
    for (Letter x : w) out.push_back(symbol(x));
    return out;
  }

  /// Parses "aBcD"; whitespace is ignored.
  Word parse(std::string_view text) const {
    Word w;
    for (char ch : text) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      const auto pos = names_.find(lower);
      if (pos == std::string::npos) {
        throw ConfigError(std::string("unknown generator symbol '") + ch + "'");
      }
      w.push_back(make_letter(static_cast<int>(pos), ch != lower));
    }
    return w;
  }

 private:
  std::string names_;
};

/// Cyclically reduced word stored as its least rotation, so equal cyclic
/// words compare equal.
class CyclicWord {
 public:
  CyclicWord() = default;

  static CyclicWord from(std::span<const Letter> w) {
    CyclicWord cw;
    cw.letters_ = least_rotation(cyclic_reduce(w));
    return cw;
  }

  const Word& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  CyclicWord inverse() const { return from(ruelle::inverse(letters_)); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend auto operator<=>(const CyclicWord& x, const CyclicWord& y) {
    if (x.size() != y.size()) return x.size() <=> y.size();
    return x.letters_ <=> y.letters_;
  }

 private:
  Word letters_;
};

}  // namespace ruelle
