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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "viperkit/catalog.hpp"
#include "viperkit/neighbor_table.hpp"

namespace viperkit {

inline constexpr double kDefaultTrainingP = 0.2;

// How a flipped character picks among its neighbors.
//   kSimilarity: probability proportional to the neighbor weight.
//   kInverse:    proportional to the distance 1 - weight (uniform when all
//                distances are equal, as in DCES and ECES).
//   kUniform:    every neighbor equally likely.
enum class Weighting { kSimilarity, kInverse, kUniform };

std::string_view to_string(Weighting w);
Weighting weighting_from_string(std::string_view name);

enum class Eligibility { kAllWithNeighbors };

struct PerturbationConfig {
  double p = 0.0;
  const NeighborTable* space = nullptr;
  std::uint64_t seed = 0;
  Weighting weighting = Weighting::kSimilarity;
  Eligibility eligibility = Eligibility::kAllWithNeighbors;
  char32_t max_codepoint = kDefaultMaxCodepoint;

  // Throws viperkit::Error when p is outside [0, 1] or no space is set.
  void validate() const;
};

struct PerturbationRecord {
  std::size_t position = 0;  // code point index in the original text
  char32_t original = 0;
  char32_t replacement = 0;
  friend bool operator==(const PerturbationRecord&, const PerturbationRecord&) = default;
};

struct PerturbationResult {
  std::u32string text;
  std::vector<PerturbationRecord> records;
};

// Each character with a non-empty neighbor list flips with probability p
// (i.i.d.) to a neighbor sampled per config.weighting. Whitespace and input
// characters at or above max_codepoint are never touched. Deterministic in
// (text, config).
PerturbationResult perturb(std::u32string_view text, const PerturbationConfig& config);
std::string perturb_utf8(std::string_view text, const PerturbationConfig& config,
                         std::vector<PerturbationRecord>* records = nullptr);

// Same flip process, but the replacement is drawn uniformly from `alphabet`
// minus the original character. Every non-whitespace character below
// max_codepoint is eligible.
PerturbationResult perturb_random(std::u32string_view text, double p, std::uint64_t seed,
                                  const std::vector<char32_t>& alphabet,
                                  char32_t max_codepoint = kDefaultMaxCodepoint);

// splitmix64 finalizer over seed and index; the per-document seed stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

using Perturber = std::function<PerturbationResult(std::u32string_view text, std::uint64_t seed)>;

Perturber visual_perturber(const PerturbationConfig& config);
Perturber random_perturber(double p, std::vector<char32_t> alphabet,
                           char32_t max_codepoint = kDefaultMaxCodepoint);

struct CorpusPerturbation {
  std::vector<nlohmann::json> documents;
  std::vector<std::vector<PerturbationRecord>> records;  // aligned with documents
};

// Perturbs the "text" field, or every entry of "tokens", of each document
// with seed derive_seed(base_seed, index). Other fields pass through. Token
// documents are perturbed as their space-joined text, so record positions
// index into that string.
CorpusPerturbation perturb_corpus(const std::vector<nlohmann::json>& documents,
                                  const Perturber& perturber, std::uint64_t base_seed,
                                  unsigned threads = 1);
CorpusPerturbation perturb_corpus(const std::vector<nlohmann::json>& documents,
                                  const PerturbationConfig& config, unsigned threads = 1);

}  // namespace viperkit
