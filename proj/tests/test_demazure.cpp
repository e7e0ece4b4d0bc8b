#include "richkit/demazure.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace richkit;

namespace {

Perm word_product(int d, const std::vector<int>& word) {
  Perm x = Perm::identity(d);
  for (int s : word) x = x.times_simple(s);
  return x;
}

}  // namespace

TEST(ReducedWord, IsReducedAndMultipliesBack) {
  for (int d = 1; d <= 5; ++d)
    for (const Perm& p : all_perms(d))
      for (auto strategy : {ReducedWordStrategy::kBubble, ReducedWordStrategy::kSelection}) {
        const auto w = reduced_word(p, strategy);
        EXPECT_EQ(static_cast<int>(w.size()), inversions(p));
        EXPECT_EQ(word_product(d, w), p);
      }
}

TEST(StarSimple, Examples) {
  EXPECT_EQ(star_simple(Perm({1, 0}), 0), Perm({1, 0}));
  EXPECT_EQ(star_simple(Perm::identity(3), 0), Perm({1, 0, 2}));
  EXPECT_EQ(star_simple(Perm({0, 2, 1}), 0), Perm({2, 0, 1}));
  EXPECT_THROW(star_simple(Perm::identity(3), 2), std::out_of_range);
  EXPECT_THROW(star_simple(Perm::identity(3), -1), std::out_of_range);
}

TEST(Star, Examples) {
  for (const Perm& s : all_perms(4)) {
    EXPECT_EQ(star(Perm::identity(4), s), s);
    EXPECT_EQ(star(s, Perm::identity(4)), s);
    EXPECT_EQ(star(descending(4), s), descending(4));
    EXPECT_EQ(star(s, descending(4)), descending(4));
  }
  EXPECT_EQ(star(Perm({0, 2, 1}), Perm({1, 0, 2})), Perm({2, 0, 1}));
  EXPECT_EQ(star_via_rank_formula(Perm::identity(3), Perm::identity(3)), Perm::identity(3));
  EXPECT_THROW(star(Perm::identity(2), Perm::identity(3)), std::invalid_argument);
  EXPECT_THROW(star_via_rank_formula(Perm::identity(2), Perm::identity(3)), std::invalid_argument);
}

TEST(Star, EqualsProductWhenLengthsAdd) {
  for (const Perm& t : all_perms(4))
    for (const Perm& p : all_perms(4))
      if (inversions(t * p) == inversions(t) + inversions(p)) EXPECT_EQ(star(t, p), t * p);
}

TEST(Star, RecursionMatchesRankFormula) {
  for (int d = 1; d <= 4; ++d)
    for (const Perm& t : all_perms(d))
      for (const Perm& p : all_perms(d)) {
        EXPECT_EQ(star(t, p), star_via_rank_formula(t, p));
        EXPECT_EQ(star(t, p, ReducedWordStrategy::kSelection), star(t, p));
      }
}

TEST(Star, AxiomsExhaustiveD4) {
  const auto s4 = all_perms(4);
  for (const Perm& t : s4)
    for (const Perm& p : s4) {
      const Perm tp = star(t, p);
      EXPECT_EQ(tp.inverse(), star(p.inverse(), t.inverse()));
      EXPECT_TRUE(bruhat_leq(t, tp));
      EXPECT_TRUE(bruhat_leq(p, tp));
      for (const Perm& r : s4) EXPECT_EQ(star(star(r, t), p), star(r, tp));
    }
  for (const Perm& t : s4)
    for (int s = 0; s < 3; ++s) EXPECT_EQ(star_simple(star_simple(t, s), s), star_simple(t, s));
}

TEST(Star, AssociativityRandomD5) {
  const auto s5 = all_perms(5);
  std::mt19937_64 rng(20261014);
  for (int trial = 0; trial < 2000; ++trial) {
    const Perm& r = s5[rng() % s5.size()];
    const Perm& t = s5[rng() % s5.size()];
    const Perm& p = s5[rng() % s5.size()];
    EXPECT_EQ(star(star(r, t), p), star(r, star(t, p)));
    EXPECT_EQ(star(t, p), star_via_rank_formula(t, p));
  }
}
