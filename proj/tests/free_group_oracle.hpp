#pragma once

#include <set>

#include "ruelle/words.hpp"

namespace ruelle::testing {

/// Independent oracle: all words of length n over the free group on two
/// generators, cyclically reduced, not proper powers, up to rotation.
inline std::set<Word> brute_force_free_classes(int n) {
  std::set<Word> out;
  Word w(static_cast<std::size_t>(n));
  long total = 1;
  for (int i = 0; i < n; ++i) total *= 4;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < n; ++i) {
      w[static_cast<std::size_t>(i)] = static_cast<Letter>(c % 4);
      c /= 4;
    }
    bool reduced = true;
    for (int i = 0; i < n && reduced; ++i) {
      const Letter x = w[static_cast<std::size_t>(i)], y = w[static_cast<std::size_t>((i + 1) % n)];
      if ((x ^ 1) == y) reduced = false;
    }
    if (!reduced) continue;
    bool power = false;
    for (int p = 1; p < n && !power; ++p) {
      if (n % p) continue;
      bool periodic = true;
      for (int i = p; i < n; ++i) periodic = periodic && w[static_cast<std::size_t>(i)] == w[static_cast<std::size_t>(i - p)];
      power = periodic;
    }
    if (power) continue;
    Word best = w;
    for (int s = 1; s < n; ++s) {
      Word r(w.begin() + s, w.end());
      r.insert(r.end(), w.begin(), w.begin() + s);
      if (r < best) best = r;
    }
    out.insert(best);
  }
  return out;
}

}  // namespace ruelle::testing
