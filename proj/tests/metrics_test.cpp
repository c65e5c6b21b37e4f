// Copyright 2026 The viperkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "viperkit/error.hpp"
#include "viperkit/metrics.hpp"
#include "viperkit/utf8.hpp"

namespace viperkit {
namespace {

// Full-matrix recursion, written independently of the library.
std::size_t OracleLevenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return d[a.size()][b.size()];
}

std::u32string RandomString(std::mt19937& rng, std::size_t max_len) {
  static const std::u32string alphabet = U"abcâĉ";
  std::uniform_int_distribution<std::size_t> len(0, max_len), ch(0, alphabet.size() - 1);
  std::u32string s(len(rng), U'a');
  for (auto& c : s) c = alphabet[ch(rng)];
  return s;
}

ScoreSeries Series(Direction d, std::map<double, double> points) { return {"m", d, std::move(points)}; }

TEST(EditDistanceTest, KnownValues) {
  EXPECT_EQ(levenshtein(U"kitten", U"sitting"), 3u);
  EXPECT_EQ(levenshtein(U"", U"abc"), 3u);
  EXPECT_EQ(levenshtein(U"flaw", U"lawn"), 2u);
  EXPECT_DOUBLE_EQ(normalized_edit_distance(U"", U""), 0.0);
  EXPECT_DOUBLE_EQ(normalized_edit_distance(U"abcd", U"abce"), 0.25);
  // Code points, not bytes.
  EXPECT_DOUBLE_EQ(normalized_edit_distance_utf8("cat", "ĉat"), 1.0 / 3.0);
}

TEST(EditDistanceTest, MatchesOracle) {
  std::mt19937 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const auto a = RandomString(rng, 12), b = RandomString(rng, 12);
    const std::size_t expected = OracleLevenshtein(a, b);
    ASSERT_EQ(levenshtein(a, b), expected);
    const double norm = a.empty() && b.empty() ? 0.0 : double(expected) / double(std::max(a.size(), b.size()));
    ASSERT_EQ(normalized_edit_distance(a, b), norm);
  }
}

TEST(ScoreSeriesTest, Validation) {
  EXPECT_THROW(Series(Direction::kHigherBetter, {{0.1, 1.0}}).validate(), Error);
  EXPECT_THROW(Series(Direction::kHigherBetter, {{0.0, 1.0}, {1.5, 1.0}}).validate(), Error);
  EXPECT_NO_THROW(Series(Direction::kHigherBetter, {{0.0, 1.0}}).validate());
  EXPECT_THROW(Series(Direction::kHigherBetter, {{0.0, 1.0}}).at(0.3), Error);
  EXPECT_EQ(direction_from_string("lower_better"), Direction::kLowerBetter);
  EXPECT_EQ(to_string(Direction::kHigherBetter), "higher_better");
}

TEST(RelativeScoreTest, HandComputedValues) {
  const auto s = Series(Direction::kHigherBetter, {{0.0, 0.8}, {0.4, 0.6}});
  EXPECT_DOUBLE_EQ(relative_score(s, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(relative_score(s, 0.4), 0.75);
  // Lower is better: g is inverted to 1/g, so s* = g(0) / g(p).
  const auto g = Series(Direction::kLowerBetter, {{0.0, 0.2}, {0.4, 0.5}});
  EXPECT_DOUBLE_EQ(relative_score(g, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(relative_score(g, 0.4), 0.4);
}

TEST(RelativeScoreTest, DivisionByZero) {
  EXPECT_THROW(relative_score(Series(Direction::kHigherBetter, {{0.0, 0.0}, {0.5, 0.1}}), 0.5), DivisionByZero);
  EXPECT_THROW(relative_score(Series(Direction::kLowerBetter, {{0.0, 0.2}, {0.5, 0.0}}), 0.5), DivisionByZero);
}

TEST(ShieldingDeltaTest, HandComputedValues) {
  const auto s = Series(Direction::kHigherBetter, {{0.0, 0.8}, {0.4, 0.6}});
  const auto sigma = Series(Direction::kHigherBetter, {{0.0, 0.78}, {0.4, 0.7}});
  // sigma*(0.4) = 0.7 / 0.8 = 0.875; s*(0.4) = 0.75.
  EXPECT_DOUBLE_EQ(shielding_delta(sigma, s, 0.4), 0.125);
  EXPECT_NEAR(shielding_delta(sigma, s, 0.0), -0.025, 1e-15);

  const auto g = Series(Direction::kLowerBetter, {{0.0, 0.2}, {0.4, 0.5}});
  const auto gs = Series(Direction::kLowerBetter, {{0.0, 0.25}, {0.4, 0.3}});
  // sigma* = 0.2 / 0.3; s* = 0.2 / 0.5.
  EXPECT_NEAR(shielding_delta(gs, g, 0.4), 0.2 / 0.3 - 0.4, 1e-15);
  EXPECT_THROW(shielding_delta(gs, s, 0.4), Error);
}

TEST(ToxicityTest, LevelIsSumOfProbabilities) {
  ToxicityOutput o;
  o.probability = {0.8, 0.7, 0, 0, 0, 0};
  EXPECT_DOUBLE_EQ(toxicity_level(o), 1.5);
  EXPECT_EQ(kToxicityClasses.size(), 6u);
  EXPECT_EQ(kToxicityClasses[5], "identity_hate");
}

ToxicityOutput Tl(double level) {
  ToxicityOutput o;
  o.probability[0] = level;
  return o;
}

TEST(AttackSuccessTest, CountsDropsOnToxicAndRisesOnClean) {
  const std::vector<ToxicityOutput> clean = {Tl(0.75), Tl(0.8), Tl(0.7), Tl(0.1), Tl(0.2)};
  const std::vector<ToxicityOutput> attacked = {Tl(0.25), Tl(0.8), Tl(0.75), Tl(0.4), Tl(0.2)};
  const std::vector<bool> toxic = {true, true, true, false, false};
  const AttackSuccess a = attack_success_rate(clean, attacked, toxic);
  EXPECT_EQ(a.toxic_count, 3u);
  EXPECT_EQ(a.successes, 1u);
  EXPECT_DOUBLE_EQ(a.toxic_success_rate, 1.0 / 3.0);
  EXPECT_EQ(a.flips, 1u);
  EXPECT_DOUBLE_EQ(a.nontoxic_flip_rate, 0.5);
  // Strict threshold: a drop of exactly 0.5 does not count at threshold 0.5.
  EXPECT_EQ(attack_success_rate(clean, attacked, toxic, 0.5).successes, 0u);
  EXPECT_EQ(attack_success_rate(clean, attacked, toxic, 0.25).successes, 1u);
}

TEST(AttackSuccessTest, EmptyGroupsAreFlagged) {
  const AttackSuccess a = attack_success_rate({Tl(0.1)}, {Tl(0.2)}, {false});
  EXPECT_TRUE(a.toxic_empty);
  EXPECT_EQ(a.toxic_success_rate, 0.0);
  EXPECT_FALSE(a.nontoxic_empty);
  EXPECT_THROW(attack_success_rate({Tl(0.1)}, {}, {false}), LengthMismatch);
}

TEST(HotWordTest, BundledListAndPrefixEntry) {
  const HotWordList list = HotWordList::bundled();
  EXPECT_EQ(list.size(), 20u);
  EXPECT_TRUE(list.matches("idiot"));
  EXPECT_TRUE(list.matches("nigga"));
  EXPECT_TRUE(list.matches("nigg"));
  EXPECT_FALSE(list.matches("nig"));
  EXPECT_FALSE(list.matches("idiots"));
  EXPECT_FALSE(list.matches("IDIOT"));
}

TEST(HotWordTest, ParseSkipsBlanksAndComments) {
  const HotWordList list = HotWordList::parse("# header\nfoo\n\nbar*\r\n");
  EXPECT_EQ(list.size(), 2u);
  EXPECT_TRUE(list.matches("foo"));
  EXPECT_TRUE(list.matches("barbaz"));
}

TEST(TokenizeWordsTest, SplitsOnWhitespaceAndPunctuation) {
  const auto words = tokenize_words(U"You, IDIOT!  ĉat");
  ASSERT_EQ(words.size(), 3u);
  EXPECT_EQ(words[0].lowercase, "you");
  EXPECT_EQ(words[1].lowercase, "idiot");
  EXPECT_EQ(words[1].begin, 5u);
  EXPECT_EQ(words[1].end, 10u);
  EXPECT_EQ(words[2].lowercase, "ĉat");
}

TEST(CooccurrenceTest, FixtureWithKnownAnswer) {
  const std::vector<std::u32string> texts = {U"you idiot", U"nice work", U"the niggaz left", U"go away now",
                                             U"stupid edit"};
  // Document 0 and 2 perturb a hot word; 1 and 3 do not; 4 is not a success.
  const std::vector<std::vector<PerturbationRecord>> records = {
      {{5, U'd', U'ḍ'}}, {{0, U'n', U'ñ'}}, {{4, U'n', U'ñ'}, {0, U't', U'ṭ'}}, {{0, U'g', U'ĝ'}}, {{0, U's', U'ŝ'}}};
  const std::vector<bool> successes = {true, true, true, true, false};
  const Cooccurrence c = hot_word_cooccurrence(records, successes, HotWordList::bundled(), texts);
  EXPECT_EQ(c.successes, 4u);
  EXPECT_EQ(c.with_hot_word, 2u);
  EXPECT_DOUBLE_EQ(c.rate, 0.5);
  EXPECT_FALSE(c.empty_denominator);

  const Cooccurrence none = hot_word_cooccurrence(records, {false, false, false, false, false},
                                                  HotWordList::bundled(), texts);
  EXPECT_TRUE(none.empty_denominator);
  EXPECT_EQ(none.rate, 0.0);
}

TEST(ClassificationTest, AccuracyAndMicroF1) {
  EXPECT_DOUBLE_EQ(accuracy({"a", "b", "c", "d"}, {"a", "b", "x", "d"}), 0.75);
  EXPECT_THROW(accuracy({}, {}), Error);
  EXPECT_THROW(accuracy({"a"}, {}), LengthMismatch);
  // tp = 2, fp = 1, fn = 1.
  EXPECT_DOUBLE_EQ(micro_f1({{1, 0, 1}, {0, 1, 0}}, {{1, 1, 1}, {0, 0, 0}}), 2.0 * 2 / (2 * 2 + 1 + 1));
  EXPECT_DOUBLE_EQ(micro_f1({{0, 0}}, {{0, 0}}), 1.0);
  EXPECT_DOUBLE_EQ(micro_f1({{1, 0}}, {{0, 1}}), 0.0);
}

// Probability that a random positive outscores a random negative, ties 1/2.
double OracleAuc(const std::vector<double>& s, const std::vector<int>& y) {
  double wins = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (y[i] == 1 && y[j] == 0) {
        wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
        ++pairs;
      }
  return wins / double(pairs);
}

TEST(ClassificationTest, AucMatchesPairwiseOracle) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> coin(0, 1), level(0, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> s(40);
    std::vector<int> y(40);
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = level(rng) / 10.0;  // coarse levels force ties
      y[i] = coin(rng);
    }
    y[0] = 1;
    y[1] = 0;
    EXPECT_NEAR(auc_roc(s, y), OracleAuc(s, y), 1e-12);
  }
  EXPECT_DOUBLE_EQ(auc_roc({0.1, 0.9}, {0, 1}), 1.0);
  EXPECT_THROW(auc_roc({0.1, 0.2}, {1, 1}), Error);
}

TEST(ClassificationTest, MacroAucSkipsSingleClassColumns) {
  const std::vector<std::vector<double>> s = {{0.9, 0.1, 0.5}, {0.2, 0.8, 0.5}, {0.7, 0.3, 0.5}};
  const std::vector<std::vector<int>> y = {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}};
  const double col0 = OracleAuc({0.9, 0.2, 0.7}, {1, 0, 0});
  const double col1 = OracleAuc({0.1, 0.8, 0.3}, {0, 1, 0});
  EXPECT_DOUBLE_EQ(macro_auc_roc(s, y), (col0 + col1) / 2);
  EXPECT_THROW(macro_auc_roc({{0.5}}, {{1}}), Error);
}

}  // namespace
}  // namespace viperkit
