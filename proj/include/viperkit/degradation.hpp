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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "viperkit/metrics.hpp"
#include "viperkit/model.hpp"
#include "viperkit/neighbor_table.hpp"
#include "viperkit/recovery.hpp"

namespace viperkit {

enum class Shielding { kNone, kRbr, kAt, kAtRandom, kAtRbr };

std::string_view to_string(Shielding s);
Shielding shielding_from_string(std::string_view name);

// Everything a perturbation-level sweep needs. Pointers are non-owning and
// must outlive the run.
struct DegradationSetup {
  std::vector<nlohmann::json> train;
  std::vector<nlohmann::json> test;
  std::vector<double> p_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const NeighborTable* attack = nullptr;  // test-time VIPER space
  Weighting attack_weighting = Weighting::kSimilarity;
  std::uint64_t seed = 1;

  ModelHyperparams hyper;
  std::vector<std::string> classes{kToxicityClasses.begin(), kToxicityClasses.end()};
  double p_train = kDefaultTrainingP;
  const NeighborTable* at_space = nullptr;  // AT replacements, ICES in the usual setup
  std::vector<char32_t> random_alphabet;   // random-replacement AT
  const RecoveryTable* recovery = nullptr; // RBR
  const HotWordList* hot_words = nullptr;
  double tl_threshold = 0.0;
  unsigned threads = 1;
};

struct EvalReport {
  std::string metric = "macro_auc_roc";
  Direction direction = Direction::kHigherBetter;
  std::vector<double> p_grid;
  ScoreSeries unshielded;
  std::map<Shielding, ScoreSeries> shielded;
  // Unshielded clean model, clean vs attacked test set; only for 6-class runs.
  std::map<double, AttackSuccess> attack;
  std::map<double, Cooccurrence> hot_word_rate;
  nlohmann::json metadata;

  double relative(double p) const { return relative_score(unshielded, p); }
  double delta(Shielding s, double p) const { return shielding_delta(shielded.at(s), unshielded, p); }
  nlohmann::json to_json() const;
};

// Macro AUC of `model` on `docs`, after optional recovery of each text.
double score_model(const CharNgramModel& model, const std::vector<nlohmann::json>& docs,
                   const std::vector<std::string>& classes, const RecoveryTable* recovery = nullptr,
                   unsigned threads = 1);

// Seed of the attacked test set at grid position `index`; shared by every
// shielding so all systems see identical perturbations.
std::uint64_t test_seed(std::uint64_t seed, std::size_t index);

// Trains the clean model plus one model per AT-style shielding, then scores
// all of them on the test set attacked at every p in the grid.
EvalReport degradation_run(const DegradationSetup& setup, const std::vector<Shielding>& shieldings);

// Sweep for an already trained model; only kNone and kRbr apply.
EvalReport degradation_run(const CharNgramModel& model, const DegradationSetup& setup,
                           const std::vector<Shielding>& shieldings = {});

}  // namespace viperkit
