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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "viperkit/metrics.hpp"
#include "viperkit/neighbor_table.hpp"

namespace viperkit {

struct SparseFeature {
  std::uint32_t index = 0;
  float value = 0.0f;
  friend bool operator==(const SparseFeature&, const SparseFeature&) = default;
};

// Hashed character n-grams of the space-padded text, L2-normalized counts.
// Cost is linear in the text length.
std::vector<SparseFeature> extract_ngram_features(std::u32string_view text, int min_n, int max_n,
                                                  std::uint32_t dimension);

struct ModelHyperparams {
  int min_n = 2;
  int max_n = 4;
  int dimension_bits = 18;
  int epochs = 8;
  double learning_rate = 0.5;
  double l2 = 1e-6;
  std::uint64_t seed = 1;
  friend bool operator==(const ModelHyperparams&, const ModelHyperparams&) = default;
};

// One-vs-rest logistic regression over hashed character n-grams. Each class
// gets an independent sigmoid probability, so outputs are multi-label.
class CharNgramModel {
 public:
  CharNgramModel() = default;
  CharNgramModel(std::vector<std::string> classes, ModelHyperparams hyper);

  const std::vector<std::string>& classes() const { return classes_; }
  const ModelHyperparams& hyperparams() const { return hyper_; }
  std::uint32_t dimension() const { return dimension_; }

  std::vector<double> predict(std::u32string_view text) const;
  std::vector<double> predict_utf8(std::string_view text) const;

  // One SGD pass over `order` (indices into features/labels).
  void sgd_epoch(const std::vector<std::vector<SparseFeature>>& features,
                 const std::vector<std::vector<int>>& labels,
                 const std::vector<std::size_t>& order, double learning_rate);

  nlohmann::json to_json() const;
  static CharNgramModel from_json(const nlohmann::json& j);
  void save(const std::filesystem::path& path) const;
  static CharNgramModel load(const std::filesystem::path& path);

  friend bool operator==(const CharNgramModel&, const CharNgramModel&) = default;

 private:
  double score(const std::vector<SparseFeature>& x, std::size_t cls) const;

  std::vector<std::string> classes_;
  ModelHyperparams hyper_;
  std::uint32_t dimension_ = 0;
  std::vector<float> weights_;  // class-major: [cls * dimension + index]
  std::vector<double> bias_;
};

ToxicityOutput to_toxicity_output(const std::vector<double>& probabilities);

enum class TrainingMode { kClean, kAtVisual, kAtRandom };

std::string_view to_string(TrainingMode m);
TrainingMode training_mode_from_string(std::string_view name);

struct TrainingRegime {
  TrainingMode mode = TrainingMode::kClean;
  double p_train = kDefaultTrainingP;
  const NeighborTable* ces = nullptr;      // AT_VISUAL replacements
  std::vector<char32_t> random_alphabet;   // AT_RANDOM replacements
  Weighting weighting = Weighting::kSimilarity;
  std::uint64_t seed = 1;

  void validate() const;
};

// Label vector of a document: "labels" is either a 0/1 array aligned with
// `classes` or an array of class names. Throws LabelSchemaMismatch.
std::vector<int> document_labels(const nlohmann::json& doc, const std::vector<std::string>& classes);

// Replaces (never augments) the training documents by their perturbed
// versions for AT modes, then fits. Deterministic in (corpus, regime, hyper).
CharNgramModel train(const std::vector<nlohmann::json>& corpus, const TrainingRegime& regime,
                     const ModelHyperparams& hyper = {},
                     const std::vector<std::string>& classes = {kToxicityClasses.begin(),
                                                                kToxicityClasses.end()});

// The training documents actually fitted under `regime` (same count as corpus).
std::vector<nlohmann::json> training_view(const std::vector<nlohmann::json>& corpus,
                                          const TrainingRegime& regime);

std::vector<double> predict(const CharNgramModel& model, std::string_view text);

}  // namespace viperkit
