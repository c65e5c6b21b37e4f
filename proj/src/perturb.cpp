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

#include "viperkit/perturb.hpp"

#include <algorithm>

#include "viperkit/corpus.hpp"
#include "viperkit/error.hpp"
#include "viperkit/io.hpp"
#include "viperkit/rng.hpp"
#include "viperkit/standard_set.hpp"
#include "viperkit/utf8.hpp"

namespace viperkit {

std::string_view to_string(Weighting w) {
  switch (w) {
    case Weighting::kSimilarity: return "similarity";
    case Weighting::kInverse: return "inverse";
    case Weighting::kUniform: return "uniform";
  }
  return "similarity";
}

Weighting weighting_from_string(std::string_view name) {
  if (name == "similarity") return Weighting::kSimilarity;
  if (name == "inverse") return Weighting::kInverse;
  if (name == "uniform") return Weighting::kUniform;
  throw Error("unknown weighting '" + std::string(name) + "' (similarity, inverse, uniform)");
}

void PerturbationConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("perturbation probability must lie in [0, 1]");
  if (space == nullptr) throw Error("perturbation config has no character embedding space");
}

namespace {

std::size_t sample_index(const std::vector<double>& weights, double u) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) {
    return std::min(weights.size() - 1, static_cast<std::size_t>(u * static_cast<double>(weights.size())));
  }
  const double target = u * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  // Rounding can leave target == total; fall back to the last positive weight.
  for (std::size_t i = weights.size(); i-- > 0;)
    if (weights[i] > 0.0) return i;
  return weights.size() - 1;
}

}  // namespace

PerturbationResult perturb(std::u32string_view text, const PerturbationConfig& config) {
  config.validate();
  PerturbationResult out;
  out.text.assign(text.begin(), text.end());
  Rng rng(config.seed);

  std::vector<const Neighbor*> candidates;
  std::vector<double> weights;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    if (c >= config.max_codepoint || is_whitespace(c)) continue;
    candidates.clear();
    for (const auto& n : config.space->neighbors(c))
      if (n.codepoint < config.max_codepoint && !is_whitespace(n.codepoint)) candidates.push_back(&n);
    if (candidates.empty()) continue;

    if (!(rng.uniform() < config.p)) continue;

    weights.clear();
    for (const Neighbor* n : candidates) {
      switch (config.weighting) {
        case Weighting::kSimilarity: weights.push_back(n->weight); break;
        case Weighting::kInverse: weights.push_back(std::max(0.0, 1.0 - n->weight)); break;
        case Weighting::kUniform: weights.push_back(1.0); break;
      }
    }
    const char32_t replacement = candidates[sample_index(weights, rng.uniform())]->codepoint;
    out.text[i] = replacement;
    out.records.push_back({i, c, replacement});
  }
  return out;
}

std::string perturb_utf8(std::string_view text, const PerturbationConfig& config,
                         std::vector<PerturbationRecord>* records) {
  PerturbationResult r = perturb(utf8::decode(text), config);
  if (records) *records = std::move(r.records);
  return utf8::encode(r.text);
}

PerturbationResult perturb_random(std::u32string_view text, double p, std::uint64_t seed,
                                  const std::vector<char32_t>& alphabet, char32_t max_codepoint) {
  if (alphabet.empty()) throw EmptyAlphabet();
  if (!(p >= 0.0 && p <= 1.0)) throw Error("perturbation probability must lie in [0, 1]");
  std::vector<char32_t> letters(alphabet);
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  for (char32_t c : letters)
    if (c >= max_codepoint) throw Error("random alphabet member " + format_codepoint(c) + " exceeds max code point");

  PerturbationResult out;
  out.text.assign(text.begin(), text.end());
  Rng rng(seed);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char32_t c = text[i];
    if (c >= max_codepoint || is_whitespace(c)) continue;
    const bool in_alphabet = std::binary_search(letters.begin(), letters.end(), c);
    const std::size_t choices = letters.size() - (in_alphabet ? 1 : 0);
    if (choices == 0) continue;
    if (!(rng.uniform() < p)) continue;

    std::size_t k = rng.below(choices);
    if (in_alphabet) {
      const auto self = static_cast<std::size_t>(std::lower_bound(letters.begin(), letters.end(), c) - letters.begin());
      if (k >= self) ++k;
    }
    out.text[i] = letters[k];
    out.records.push_back({i, c, letters[k]});
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Perturber visual_perturber(const PerturbationConfig& config) {
  config.validate();
  return [config](std::u32string_view text, std::uint64_t seed) {
    PerturbationConfig c = config;
    c.seed = seed;
    return perturb(text, c);
  };
}

Perturber random_perturber(double p, std::vector<char32_t> alphabet, char32_t max_codepoint) {
  if (alphabet.empty()) throw EmptyAlphabet();
  return [p, alphabet = std::move(alphabet), max_codepoint](std::u32string_view text, std::uint64_t seed) {
    return perturb_random(text, p, seed, alphabet, max_codepoint);
  };
}

CorpusPerturbation perturb_corpus(const std::vector<nlohmann::json>& documents,
                                  const Perturber& perturber, std::uint64_t base_seed,
                                  unsigned threads) {
  CorpusPerturbation out;
  out.documents = documents;
  out.records.resize(documents.size());
  parallel_for(documents.size(), threads, [&](std::size_t i) {
    nlohmann::json& doc = out.documents[i];
    const std::uint64_t seed = derive_seed(base_seed, i);
    if (has_tokens(doc)) {
      const std::vector<std::string> tokens = document_tokens(doc);
      std::u32string joined;
      std::vector<std::size_t> lengths;
      for (std::size_t t = 0; t < tokens.size(); ++t) {
        if (t) joined.push_back(U' ');
        const std::u32string cps = utf8::decode(tokens[t]);
        lengths.push_back(cps.size());
        joined += cps;
      }
      PerturbationResult r = perturber(joined, seed);
      std::vector<std::string> perturbed;
      std::size_t at = 0;
      for (std::size_t len : lengths) {
        perturbed.push_back(utf8::encode(std::u32string_view(r.text).substr(at, len)));
        at += len + 1;
      }
      doc["tokens"] = std::move(perturbed);
      out.records[i] = std::move(r.records);
    } else {
      PerturbationResult r = perturber(utf8::decode(document_text(doc)), seed);
      doc["text"] = utf8::encode(r.text);
      out.records[i] = std::move(r.records);
    }
  });
  return out;
}

CorpusPerturbation perturb_corpus(const std::vector<nlohmann::json>& documents,
                                  const PerturbationConfig& config, unsigned threads) {
  return perturb_corpus(documents, visual_perturber(config), config.seed, threads);
}

}  // namespace viperkit
