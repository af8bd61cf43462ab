#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "ruelle/orbit_enum.hpp"
#include "free_group_oracle.hpp"
#include "ruelle/reports.hpp"

using namespace ruelle;
using ruelle::testing::brute_force_free_classes;

namespace {

const double kSystole = 2.0 * std::acosh(1.0 + std::sqrt(2.0));

/// Searches g of word length <= 3 with g u g^-1 = +-v as matrices.
bool matrix_conjugate(const GroupModel& m, const Word& u, const Word& v) {
  const IsometryMatrix mu = m.image(u), mv = m.image(v);
  std::vector<Word> frontier{Word{}};
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const IsometryMatrix g = m.image(frontier[i]);
    if ((g * mu * g.inverse()).projectively_equal(mv, 1e-6)) return true;
    if (frontier[i].size() >= 3) continue;
    for (int x = 0; x < m.letter_count(); ++x) {
      Word n = frontier[i];
      if (!n.empty() && n.back() == inverse_letter(static_cast<Letter>(x))) continue;
      n.push_back(static_cast<Letter>(x));
      frontier.push_back(n);
    }
  }
  return false;
}

}  // namespace

TEST(Enumerate, FreeGroupLengthOne) {
  const auto r = enumerate_primitives(models::schottky_orientable(), {1});
  ASSERT_EQ(r.orbits.size(), 4U);
  std::set<Word> words;
  for (const auto& o : r.orbits) words.insert(o.word.letters());
  EXPECT_EQ(words, (std::set<Word>{{0}, {1}, {2}, {3}}));
}

TEST(Enumerate, FreeGroupExactlyLengthTwo) {
  const auto r = enumerate_primitives(models::schottky_orientable(), {2});
  std::size_t len2 = 0;
  for (const auto& o : r.orbits) len2 += o.word.size() == 2 ? 1 : 0;
  EXPECT_EQ(len2, 4U);
}

TEST(Enumerate, FreeGroupOracleUpToLengthEight) {
  for (const GroupModel& m : {models::schottky_orientable(), models::schottky_nonorientable()}) {
    const auto r = enumerate_primitives(m, {8});
    EXPECT_TRUE(r.soundness.empty());
    std::map<std::size_t, std::set<Word>> got;
    for (const auto& o : r.orbits) {
      EXPECT_TRUE(got[o.word.size()].insert(o.word.letters()).second) << "duplicate class";
    }
    for (int n = 1; n <= 8; ++n) {
      EXPECT_EQ(got[static_cast<std::size_t>(n)], brute_force_free_classes(n)) << m.name() << " length " << n;
    }
  }
}

TEST(Enumerate, SortedByLengthThenWord) {
  const auto r = enumerate_primitives(models::schottky_nonorientable(), {5});
  for (std::size_t i = 1; i < r.orbits.size(); ++i) {
    const auto& x = r.orbits[i - 1];
    const auto& y = r.orbits[i];
    EXPECT_TRUE(x.T_sharp < y.T_sharp || (x.T_sharp == y.T_sharp && x.word.letters() < y.word.letters()));
  }
}

TEST(Enumerate, InverseSymmetryFree) {
  const auto r = enumerate_primitives(models::schottky_nonorientable(), {6});
  std::map<Word, const ClosedOrbit*> by_word;
  for (const auto& o : r.orbits) by_word[o.word.letters()] = &o;
  for (const auto& o : r.orbits) {
    const auto it = by_word.find(o.word.inverse().letters());
    ASSERT_NE(it, by_word.end());
    EXPECT_NEAR(it->second->T_sharp, o.T_sharp, 1e-12 * o.T_sharp);
    EXPECT_EQ(it->second->epsilon, o.epsilon);
    EXPECT_NEAR(std::abs(it->second->trace), std::abs(o.trace), 1e-9 * std::abs(o.trace));
  }
}

TEST(Enumerate, NonorientableSignsFollowWordParity) {
  const GroupModel m = models::schottky_nonorientable();
  const auto r = enumerate_primitives(m, {5});
  for (const auto& o : r.orbits) {
    int a_count = 0;
    for (Letter x : o.word.letters()) a_count += generator_of(x) == 0 ? 1 : 0;
    EXPECT_EQ(o.epsilon, a_count % 2 ? -1 : 1);
  }
}

TEST(Enumerate, BolzaSystole) {
  const auto r = enumerate_primitives(models::bolza(), {6, 3.1});
  ASSERT_FALSE(r.orbits.empty());
  EXPECT_NEAR(r.orbits.front().T_sharp, kSystole, 1e-9);
  EXPECT_NEAR(kSystole, 3.0571418, 1e-7);
}

TEST(Enumerate, BolzaClassesAreDistinctAndInverseClosed) {
  const GroupModel m = models::bolza();
  const auto r = enumerate_primitives(m, {5, 5.0});
  std::set<Word> words;
  for (const auto& o : r.orbits) EXPECT_TRUE(words.insert(o.word.letters()).second);
  for (std::size_t i = 0; i < r.orbits.size(); ++i) {
    const auto& u = r.orbits[i];
    bool has_inverse = false;
    for (std::size_t j = 0; j < r.orbits.size(); ++j) {
      const auto& v = r.orbits[j];
      if (std::abs(u.T_sharp - v.T_sharp) > 1e-9) continue;
      const bool conj = m.dehn().conjugate(m.dehn().reduce_cyclic(inverse(u.word.letters())).letters(), v.word.letters());
      has_inverse = has_inverse || conj;
      if (j > i) {
        EXPECT_FALSE(matrix_conjugate(m, u.word.letters(), v.word.letters()))
            << m.alphabet().format(u.word.letters()) << " ~ " << m.alphabet().format(v.word.letters());
      }
    }
    EXPECT_TRUE(has_inverse) << m.alphabet().format(u.word.letters());
  }
}

TEST(Enumerate, DeterministicAcrossThreadCounts) {
  for (const GroupModel& m : {models::bolza(), models::schottky_nonorientable()}) {
    RunConfig cfg;
    cfg.tmax = 7.0;
    cfg.max_word_len = 6;
    cfg.threads = 1;
    const std::string one = orbits_csv(m, run_census(m, cfg));
    cfg.threads = 3;
    const std::string three = orbits_csv(m, run_census(m, cfg));
    cfg.threads = 8;
    const std::string eight = orbits_csv(m, run_census(m, cfg));
    EXPECT_EQ(one, three);
    EXPECT_EQ(one, eight);
  }
}

TEST(Iterate, SpecExamples) {
  const auto plus = ClosedOrbit::primitive(CyclicWord::from(Word{0}),
                                           IsometryMatrix::normalized(std::exp(0.5), 0, 0, std::exp(-0.5)));
  const auto it = iterate(plus, 3.5);
  ASSERT_EQ(it.size(), 3U);
  for (int m = 1; m <= 3; ++m) {
    EXPECT_EQ(it[static_cast<std::size_t>(m - 1)].m, m);
    EXPECT_EQ(it[static_cast<std::size_t>(m - 1)].epsilon, 1);
    EXPECT_EQ(it[static_cast<std::size_t>(m - 1)].T, m * plus.T_sharp);
  }
  const auto minus = ClosedOrbit::primitive(CyclicWord::from(Word{0}),
                                            IsometryMatrix::normalized(std::exp(0.5), 0, 0, -std::exp(-0.5)));
  const auto it2 = iterate(minus, 2.5);
  ASSERT_EQ(it2.size(), 2U);
  EXPECT_EQ(it2[0].epsilon, -1);
  EXPECT_EQ(it2[1].epsilon, 1);
  EXPECT_NEAR(it2[1].trace, std::exp(1.0) + std::exp(-1.0), 1e-12);

  const auto bolza = ClosedOrbit::primitive(CyclicWord::from(Word{0}), models::bolza().generators()[0]);
  EXPECT_TRUE(iterate(bolza, 3.0).empty());
  EXPECT_THROW(iterate(it[1], 10.0), ConsistencyError);
}

TEST(Census, TinyTmaxIsEmpty) {
  const Census c = census(models::schottky_orientable(), {0.5});
  EXPECT_TRUE(c.orbits.empty());
  EXPECT_TRUE(c.complete);
}

TEST(Census, CountingFunctionNondecreasing) {
  const Census c = census(models::schottky_nonorientable(), {9.0});
  ASSERT_FALSE(c.counting.empty());
  for (std::size_t i = 1; i < c.counting.size(); ++i) {
    EXPECT_LT(c.counting[i - 1].t, c.counting[i].t);
    EXPECT_LT(c.counting[i - 1].count, c.counting[i].count);
  }
  EXPECT_EQ(c.counting.back().count, c.orbits.size());
}

TEST(Census, CompleteSchottkyMatchesLongerEnumeration) {
  // Raising the word length beyond ceil(T_max / lambda_min) adds nothing.
  const GroupModel m = models::schottky_orientable();
  const Census c = census(m, {8.0});
  CensusOptions more{8.0, c.max_word_len + 2};
  EXPECT_EQ(census(m, more).orbits.size(), c.orbits.size());
}

TEST(Census, BolzaNeedsExplicitIncompleteness) {
  EXPECT_THROW(census(models::bolza(), {4.0}), IncompleteCensusError);
  CensusOptions opts{4.0, 6, false};
  const Census c = census(models::bolza(), opts);
  EXPECT_FALSE(c.complete);
}

TEST(Census, BolzaSystolicRegression) {
  // Frozen: 12 systolic geodesics, each traversed in both directions.
  CensusOptions opts{3.06, 8, false};
  const Census c = census(models::bolza(), opts);
  EXPECT_EQ(c.orbits.size(), 24U);
  for (const auto& o : c.orbits) EXPECT_NEAR(o.T, kSystole, 1e-9);
}

TEST(Census, BolzaStableInWordLength) {
  // Counts to T = 8 do not change between word lengths 7 and 8.
  CensusOptions seven{8.0, 7, false}, eight{8.0, 8, false};
  EXPECT_EQ(census(models::bolza(), seven).orbits.size(), census(models::bolza(), eight).orbits.size());
}
