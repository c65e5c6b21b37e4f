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

#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "viperkit/perturb.hpp"

namespace viperkit {

// --- edit distance ---------------------------------------------------------

std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
// levenshtein / max(|a|, |b|) over code points; 0 when both are empty.
double normalized_edit_distance(std::u32string_view a, std::u32string_view b);
double normalized_edit_distance_utf8(std::string_view a, std::string_view b);

// --- score series ------------------------------------------------------------

enum class Direction { kHigherBetter, kLowerBetter };

std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view name);

// Raw scores s(p) of one system on one task across perturbation levels.
struct ScoreSeries {
  std::string metric_name;
  Direction direction = Direction::kHigherBetter;
  std::map<double, double> points;

  // Throws viperkit::Error if p = 0 is missing or some p lies outside [0, 1].
  void validate() const;
  double at(double p) const;
};

// s*(p) = s(p) / s(0); lower-is-better scores g are inverted to 1/g first,
// giving s(0) / s(p).
double relative_score(const ScoreSeries& series, double p);

// sigma*(p) - s*(p) with both systems normalized by the unshielded s(0).
double shielding_delta(const ScoreSeries& shielded, const ScoreSeries& unshielded, double p);

// --- toxicity ------------------------------------------------------------------

inline constexpr std::size_t kToxicityClassCount = 6;
inline constexpr std::array<std::string_view, kToxicityClassCount> kToxicityClasses = {
    "toxic", "severe_toxic", "obscene", "threat", "insult", "identity_hate"};

struct ToxicityOutput {
  std::array<double, kToxicityClassCount> probability{};
};

// Sum of the per-class probabilities, in [0, 6].
double toxicity_level(const ToxicityOutput& output);

struct AttackSuccess {
  double toxic_success_rate = 0.0;  // toxic examples whose TL dropped
  double nontoxic_flip_rate = 0.0;  // non-toxic examples whose TL rose
  std::size_t toxic_count = 0;
  std::size_t nontoxic_count = 0;
  std::size_t successes = 0;
  std::size_t flips = 0;
  bool toxic_empty = false;  // rate reported as 0 with no toxic examples
  bool nontoxic_empty = false;
};

// A change counts only when it exceeds `threshold` (strict inequality).
AttackSuccess attack_success_rate(const std::vector<ToxicityOutput>& clean,
                                  const std::vector<ToxicityOutput>& perturbed,
                                  const std::vector<bool>& toxic_mask, double threshold = 0.0);

// --- hot words -----------------------------------------------------------------

// Lowercase offensive words; an entry ending in '*' matches by prefix.
class HotWordList {
 public:
  HotWordList() = default;
  static HotWordList parse(std::string_view content);
  static HotWordList load(const std::filesystem::path& path);
  // The bundled 20-word list.
  static HotWordList bundled();

  bool matches(std::string_view lowercase_token) const;
  std::size_t size() const { return exact_.size() + prefixes_.size(); }

 private:
  std::vector<std::string> exact_;
  std::vector<std::string> prefixes_;
};

struct WordSpan {
  std::size_t begin = 0;  // code point offsets, end exclusive
  std::size_t end = 0;
  std::string lowercase;
};

// Words are maximal runs of characters that are neither whitespace nor ASCII
// punctuation; ASCII letters are lowercased.
std::vector<WordSpan> tokenize_words(std::u32string_view text);

struct Cooccurrence {
  double rate = 0.0;
  std::size_t successes = 0;
  std::size_t with_hot_word = 0;
  bool empty_denominator = false;
};

// Among successful attacks, the fraction whose perturbations touch a word of
// the ORIGINAL text that matches the hot-word list.
Cooccurrence hot_word_cooccurrence(const std::vector<std::vector<PerturbationRecord>>& records,
                                   const std::vector<bool>& successes,
                                   const HotWordList& hot_words,
                                   const std::vector<std::u32string>& original_texts);

// --- classification scores -------------------------------------------------------

double accuracy(const std::vector<std::string>& gold, const std::vector<std::string>& predicted);
// Micro-averaged F1 over binary indicator rows.
double micro_f1(const std::vector<std::vector<int>>& gold, const std::vector<std::vector<int>>& predicted);
// Rank-based (Mann-Whitney) AUC with average ranks for ties. Throws
// viperkit::Error if either class is absent.
double auc_roc(const std::vector<double>& scores, const std::vector<int>& labels);
// Mean AUC over the label columns that contain both classes.
double macro_auc_roc(const std::vector<std::vector<double>>& scores,
                     const std::vector<std::vector<int>>& labels);

}  // namespace viperkit
