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

#include "viperkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "viperkit/error.hpp"
#include "viperkit/io.hpp"
#include "viperkit/standard_set.hpp"
#include "viperkit/utf8.hpp"

namespace viperkit {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

double normalized_edit_distance(std::u32string_view a, std::u32string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

double normalized_edit_distance_utf8(std::string_view a, std::string_view b) {
  return normalized_edit_distance(utf8::decode(a), utf8::decode(b));
}

std::string_view to_string(Direction d) {
  return d == Direction::kHigherBetter ? "higher_better" : "lower_better";
}

Direction direction_from_string(std::string_view name) {
  if (name == "higher_better") return Direction::kHigherBetter;
  if (name == "lower_better") return Direction::kLowerBetter;
  throw Error("unknown metric direction '" + std::string(name) + "'");
}

void ScoreSeries::validate() const {
  if (!points.count(0.0)) throw Error("score series '" + metric_name + "' has no clean (p = 0) score");
  for (const auto& [p, s] : points)
    if (!(p >= 0.0 && p <= 1.0)) throw Error("perturbation level outside [0, 1] in '" + metric_name + "'");
}

double ScoreSeries::at(double p) const {
  const auto it = points.find(p);
  if (it == points.end()) throw Error("score series '" + metric_name + "' has no score at p = " + std::to_string(p));
  return it->second;
}

namespace {

// Score on the higher-is-better scale, normalized by the clean baseline.
double normalized(double score, double clean, Direction d) {
  if (d == Direction::kHigherBetter) {
    if (clean == 0.0) throw DivisionByZero("clean score s(0) is zero");
    return score / clean;
  }
  if (score == 0.0 || clean == 0.0) throw DivisionByZero("lower-is-better score of zero cannot be inverted");
  return (1.0 / score) / (1.0 / clean);
}

}  // namespace

double relative_score(const ScoreSeries& series, double p) {
  series.validate();
  if (p == 0.0) {
    normalized(series.at(0.0), series.at(0.0), series.direction);
    return 1.0;
  }
  return normalized(series.at(p), series.at(0.0), series.direction);
}

double shielding_delta(const ScoreSeries& shielded, const ScoreSeries& unshielded, double p) {
  if (shielded.direction != unshielded.direction)
    throw Error("shielded and unshielded series have different metric directions");
  unshielded.validate();
  const double clean = unshielded.at(0.0);
  return normalized(shielded.at(p), clean, unshielded.direction) -
         normalized(unshielded.at(p), clean, unshielded.direction);
}

double toxicity_level(const ToxicityOutput& output) {
  double sum = 0.0;
  for (double v : output.probability) sum += v;
  return sum;
}

AttackSuccess attack_success_rate(const std::vector<ToxicityOutput>& clean,
                                  const std::vector<ToxicityOutput>& perturbed,
                                  const std::vector<bool>& toxic_mask, double threshold) {
  if (clean.size() != perturbed.size() || clean.size() != toxic_mask.size())
    throw LengthMismatch("attack_success_rate: inputs are not aligned");
  AttackSuccess s;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    const double before = toxicity_level(clean[i]);
    const double after = toxicity_level(perturbed[i]);
    if (toxic_mask[i]) {
      ++s.toxic_count;
      if (before - after > threshold) ++s.successes;
    } else {
      ++s.nontoxic_count;
      if (after - before > threshold) ++s.flips;
    }
  }
  s.toxic_empty = s.toxic_count == 0;
  s.nontoxic_empty = s.nontoxic_count == 0;
  if (!s.toxic_empty) s.toxic_success_rate = static_cast<double>(s.successes) / static_cast<double>(s.toxic_count);
  if (!s.nontoxic_empty) s.nontoxic_flip_rate = static_cast<double>(s.flips) / static_cast<double>(s.nontoxic_count);
  return s;
}

HotWordList HotWordList::parse(std::string_view content) {
  HotWordList list;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string word(content.substr(pos, eol - pos));
    pos = eol + 1;
    while (!word.empty() && (word.back() == '\r' || word.back() == ' ' || word.back() == '\t')) word.pop_back();
    const auto first = word.find_first_not_of(" \t");
    if (first == std::string::npos || word[first] == '#') continue;
    word = word.substr(first);
    for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (word.back() == '*') {
      word.pop_back();
      if (!word.empty()) list.prefixes_.push_back(word);
    } else {
      list.exact_.push_back(word);
    }
  }
  return list;
}

HotWordList HotWordList::load(const std::filesystem::path& path) { return parse(read_file(path)); }

HotWordList HotWordList::bundled() { return load(data_dir() / "hotwords.txt"); }

bool HotWordList::matches(std::string_view token) const {
  for (const auto& w : exact_)
    if (token == w) return true;
  for (const auto& p : prefixes_)
    if (token.starts_with(p)) return true;
  return false;
}

std::vector<WordSpan> tokenize_words(std::u32string_view text) {
  std::vector<WordSpan> words;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto is_word = [&](char32_t c) { return !is_whitespace(c) && !is_ascii_punctuation(c); };
    if (!is_word(text[i])) {
      ++i;
      continue;
    }
    WordSpan w;
    w.begin = i;
    std::u32string lower;
    while (i < text.size() && is_word(text[i])) {
      char32_t c = text[i];
      if (c >= U'A' && c <= U'Z') c = c - U'A' + U'a';
      lower.push_back(c);
      ++i;
    }
    w.end = i;
    w.lowercase = utf8::encode(lower);
    words.push_back(std::move(w));
  }
  return words;
}

Cooccurrence hot_word_cooccurrence(const std::vector<std::vector<PerturbationRecord>>& records,
                                   const std::vector<bool>& successes,
                                   const HotWordList& hot_words,
                                   const std::vector<std::u32string>& original_texts) {
  if (records.size() != successes.size() || records.size() != original_texts.size())
    throw LengthMismatch("hot_word_cooccurrence: inputs are not aligned");
  Cooccurrence c;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!successes[i]) continue;
    ++c.successes;
    const auto words = tokenize_words(original_texts[i]);
    const bool touched = std::any_of(records[i].begin(), records[i].end(), [&](const PerturbationRecord& r) {
      return std::any_of(words.begin(), words.end(), [&](const WordSpan& w) {
        return r.position >= w.begin && r.position < w.end && hot_words.matches(w.lowercase);
      });
    });
    if (touched) ++c.with_hot_word;
  }
  c.empty_denominator = c.successes == 0;
  if (!c.empty_denominator) c.rate = static_cast<double>(c.with_hot_word) / static_cast<double>(c.successes);
  return c;
}

double accuracy(const std::vector<std::string>& gold, const std::vector<std::string>& predicted) {
  if (gold.size() != predicted.size()) throw LengthMismatch("accuracy: gold and predictions differ in length");
  if (gold.empty()) throw Error("accuracy of an empty set is undefined");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) hits += gold[i] == predicted[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

double micro_f1(const std::vector<std::vector<int>>& gold, const std::vector<std::vector<int>>& predicted) {
  if (gold.size() != predicted.size()) throw LengthMismatch("micro_f1: row count mismatch");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != predicted[i].size()) throw LengthMismatch("micro_f1: column count mismatch");
    for (std::size_t k = 0; k < gold[i].size(); ++k) {
      const bool g = gold[i][k] != 0;
      const bool p = predicted[i][k] != 0;
      tp += g && p;
      fp += !g && p;
      fn += g && !p;
    }
  }
  if (tp == 0) return (fp == 0 && fn == 0) ? 1.0 : 0.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

double auc_roc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) throw LengthMismatch("auc_roc: scores and labels differ in length");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] != 0) {
        positive_rank_sum += avg_rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = scores.size() - positives;
  if (positives == 0 || negatives == 0) throw Error("auc_roc needs both positive and negative examples");
  const double np = static_cast<double>(positives);
  return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(negatives));
}

double macro_auc_roc(const std::vector<std::vector<double>>& scores,
                     const std::vector<std::vector<int>>& labels) {
  if (scores.size() != labels.size()) throw LengthMismatch("macro_auc_roc: row count mismatch");
  if (scores.empty()) throw Error("macro_auc_roc of an empty set is undefined");
  const std::size_t classes = labels.front().size();
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < classes; ++k) {
    std::vector<double> s;
    std::vector<int> l;
    int pos = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i].size() != classes || labels[i].size() != classes)
        throw LengthMismatch("macro_auc_roc: column count mismatch");
      s.push_back(scores[i][k]);
      l.push_back(labels[i][k] != 0);
      pos += labels[i][k] != 0;
    }
    if (pos == 0 || pos == static_cast<int>(l.size())) continue;
    sum += auc_roc(s, l);
    ++used;
  }
  if (used == 0) throw Error("no label column has both classes");
  return sum / static_cast<double>(used);
}

}  // namespace viperkit
