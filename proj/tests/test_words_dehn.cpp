#include <gtest/gtest.h>

#include <random>

#include "ruelle/dehn.hpp"
#include "ruelle/group_model.hpp"
#include "ruelle/words.hpp"

using namespace ruelle;

namespace {
const Alphabet kAbcd("abcd");
Word w(const char* s) { return kAbcd.parse(s); }
// Genus-2 relator [a,b][c,d].
const Word kGenus2 = w("abABcdCD");
}  // namespace

TEST(Words, ReductionAndRotation) {
  EXPECT_EQ(free_reduce(w("aAb")), w("b"));
  EXPECT_EQ(cyclic_reduce(w("baBcB")), w("aBc"));
  EXPECT_EQ(least_rotation(w("ba")), w("ab"));
  EXPECT_TRUE(is_proper_power(w("abab")));
  EXPECT_FALSE(is_proper_power(w("aba")));
  EXPECT_EQ(CyclicWord::from(w("bab")).letters(), w("abb"));
  EXPECT_EQ(CyclicWord::from(w("bcB")).letters(), w("c"));
}

TEST(Words, ParseFormatRoundTrip) {
  EXPECT_EQ(kAbcd.format(w("aBcD")), "aBcD");
  EXPECT_THROW(kAbcd.parse("x"), ConfigError);
}

TEST(Dehn, RelatorReducesToEmpty) {
  const DehnReducer d(kGenus2);
  EXPECT_TRUE(d.reduce(kGenus2).empty());
  EXPECT_TRUE(d.reduce_cyclic(kGenus2).empty());
  EXPECT_TRUE(d.reduce_cyclic(inverse(kGenus2)).empty());
  EXPECT_TRUE(d.reduce_cyclic(rotate_left(kGenus2, 3)).empty());
}

TEST(Dehn, FiveLetterPieceBecomesInvertedComplement) {
  const DehnReducer d(kGenus2);
  const Word piece = w("abABc");  // complement dCD, inverted: dcD
  EXPECT_EQ(d.reduce(piece), w("dcD"));
  // dcD is conjugate to c.
  EXPECT_EQ(d.reduce_cyclic(piece), CyclicWord::from(w("c")));
}

TEST(Dehn, ReducedWordIsFixedPoint) {
  const DehnReducer d(kGenus2);
  for (const char* s : {"a", "ab", "abc", "aBcD", "abAB"}) {
    EXPECT_EQ(d.reduce_cyclic(w(s)), CyclicWord::from(w(s))) << s;
  }
}

TEST(Dehn, PieceImageMatchesComplementInBolza) {
  // Matrix oracle: a 5-letter piece of the Bolza relator and its reduction
  // have conjugate images (equal |trace|).
  const GroupModel m = models::bolza();
  const Word rel = m.alphabet().parse("aBcDAbCd");
  for (std::size_t s = 0; s < rel.size(); ++s) {
    const Word rotated = rotate_left(rel, s);
    const Word piece(rotated.begin(), rotated.begin() + 5);
    const Word r = m.dehn().reduce(piece);
    EXPECT_EQ(r.size(), 3U);
    EXPECT_TRUE(m.image(piece).projectively_equal(m.image(r), 1e-9));
  }
}

TEST(Dehn, ConjugacyAgreesWithMatrixTraces) {
  // Conjugate words have equal |trace|; random conjugates must be detected.
  const GroupModel m = models::bolza();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> letter(0, 7);
  for (int i = 0; i < 300; ++i) {
    Word u;
    for (int k = 0; k < 5; ++k) u.push_back(static_cast<Letter>(letter(rng)));
    Word c;
    for (int k = 0; k < 3; ++k) c.push_back(static_cast<Letter>(letter(rng)));
    const CyclicWord cu = m.dehn().reduce_cyclic(u);
    const CyclicWord cv = m.dehn().reduce_cyclic(concat(concat(c, u), inverse(c)));
    if (cu.empty()) continue;
    EXPECT_TRUE(m.dehn().conjugate(cu.letters(), cv.letters()));
    EXPECT_NEAR(std::abs(m.image(cu.letters()).trace()), std::abs(m.image(cv.letters()).trace()),
                1e-8 * std::abs(m.image(cu.letters()).trace()));
  }
}

TEST(GroupModel, BuiltinsValidate) {
  for (const auto& name : models::builtin_names()) {
    const auto m = models::builtin(name);
    ASSERT_TRUE(m) << name;
    EXPECT_NO_THROW(m->validate());
  }
  EXPECT_TRUE(models::bolza().orientable());
  EXPECT_TRUE(models::schottky_orientable().orientable());
  EXPECT_FALSE(models::schottky_nonorientable().orientable());
  EXPECT_FALSE(models::builtin("nope"));
}

TEST(GroupModel, PingPongAndLambdaMin) {
  for (const GroupModel& m : {models::schottky_orientable(), models::schottky_nonorientable()}) {
    ASSERT_TRUE(m.ping_pong);
    std::string why;
    EXPECT_TRUE(verify_ping_pong(m, *m.ping_pong, &why)) << why;
    ASSERT_TRUE(m.lambda_min);
    EXPECT_NEAR(*m.lambda_min, 1.5952, 1e-3);
  }
}

TEST(GroupModel, RelatorMismatchRejected) {
  const GroupModel b = models::bolza();
  EXPECT_THROW(GroupModel("bad", b.alphabet(), b.generators(), b.alphabet().parse("abcd")).validate(),
               ConfigError);
}
