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

#include "viperkit/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "viperkit/corpus.hpp"
#include "viperkit/error.hpp"
#include "viperkit/io.hpp"
#include "viperkit/rng.hpp"
#include "viperkit/utf8.hpp"

namespace viperkit {

std::vector<SparseFeature> extract_ngram_features(std::u32string_view text, int min_n, int max_n,
                                                  std::uint32_t dimension) {
  std::u32string padded;
  padded.reserve(text.size() + 2);
  padded.push_back(U' ');
  padded.append(text);
  padded.push_back(U' ');

  std::vector<std::uint32_t> hashes;
  hashes.reserve(padded.size() * static_cast<std::size_t>(max_n - min_n + 1));
  const std::uint32_t mask = dimension - 1;
  for (int n = min_n; n <= max_n; ++n) {
    const auto len = static_cast<std::size_t>(n);
    if (padded.size() < len) break;
    for (std::size_t i = 0; i + len <= padded.size(); ++i) {
      std::uint64_t h = 0xcbf29ce484222325ULL ^ static_cast<std::uint64_t>(n);
      for (std::size_t k = 0; k < len; ++k) {
        std::uint32_t c = padded[i + k];
        for (int b = 0; b < 4; ++b) {
          h ^= c & 0xFF;
          h *= 0x100000001b3ULL;
          c >>= 8;
        }
      }
      hashes.push_back(static_cast<std::uint32_t>(h ^ (h >> 32)) & mask);
    }
  }
  std::sort(hashes.begin(), hashes.end());

  std::vector<SparseFeature> features;
  double norm = 0.0;
  for (std::size_t i = 0; i < hashes.size();) {
    std::size_t j = i;
    while (j < hashes.size() && hashes[j] == hashes[i]) ++j;
    const auto count = static_cast<float>(j - i);
    features.push_back({hashes[i], count});
    norm += static_cast<double>(count) * count;
    i = j;
  }
  if (norm > 0.0) {
    const auto inv = static_cast<float>(1.0 / std::sqrt(norm));
    for (auto& f : features) f.value *= inv;
  }
  return features;
}

CharNgramModel::CharNgramModel(std::vector<std::string> classes, ModelHyperparams hyper)
    : classes_(std::move(classes)), hyper_(hyper) {
  if (classes_.empty()) throw Error("model needs at least one class");
  if (hyper_.min_n < 1 || hyper_.max_n < hyper_.min_n) throw Error("invalid n-gram range");
  if (hyper_.dimension_bits < 4 || hyper_.dimension_bits > 24) throw Error("hashing dimension bits must be in [4, 24]");
  dimension_ = 1u << hyper_.dimension_bits;
  weights_.assign(classes_.size() * dimension_, 0.0f);
  bias_.assign(classes_.size(), 0.0);
}

double CharNgramModel::score(const std::vector<SparseFeature>& x, std::size_t cls) const {
  const float* w = weights_.data() + cls * dimension_;
  double z = bias_[cls];
  for (const auto& f : x) z += static_cast<double>(w[f.index]) * f.value;
  return z;
}

namespace {
double sigmoid(double z) {
  return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}
}  // namespace

std::vector<double> CharNgramModel::predict(std::u32string_view text) const {
  const auto x = extract_ngram_features(text, hyper_.min_n, hyper_.max_n, dimension_);
  std::vector<double> out(classes_.size());
  for (std::size_t c = 0; c < classes_.size(); ++c) out[c] = sigmoid(score(x, c));
  return out;
}

std::vector<double> CharNgramModel::predict_utf8(std::string_view text) const {
  return predict(utf8::decode(text));
}

void CharNgramModel::sgd_epoch(const std::vector<std::vector<SparseFeature>>& features,
                               const std::vector<std::vector<int>>& labels,
                               const std::vector<std::size_t>& order, double learning_rate) {
  const auto decay = static_cast<float>(1.0 - learning_rate * hyper_.l2);
  for (std::size_t idx : order) {
    const auto& x = features[idx];
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      const double g = sigmoid(score(x, c)) - labels[idx][c];
      bias_[c] -= learning_rate * g;
      float* w = weights_.data() + c * dimension_;
      const auto step = static_cast<float>(learning_rate * g);
      for (const auto& f : x) w[f.index] = w[f.index] * decay - step * f.value;
    }
  }
}

nlohmann::json CharNgramModel::to_json() const {
  nlohmann::json weights = nlohmann::json::object();
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    nlohmann::json entries = nlohmann::json::array();
    const float* w = weights_.data() + c * dimension_;
    for (std::uint32_t i = 0; i < dimension_; ++i)
      if (w[i] != 0.0f) entries.push_back({i, w[i]});
    weights[classes_[c]] = std::move(entries);
  }
  return {{"format", "viperkit-charngram"},
          {"version", 1},
          {"classes", classes_},
          {"min_n", hyper_.min_n},
          {"max_n", hyper_.max_n},
          {"dimension_bits", hyper_.dimension_bits},
          {"epochs", hyper_.epochs},
          {"learning_rate", hyper_.learning_rate},
          {"l2", hyper_.l2},
          {"seed", hyper_.seed},
          {"bias", bias_},
          {"weights", std::move(weights)}};
}

CharNgramModel CharNgramModel::from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "viperkit-charngram" || j.at("version") != 1)
      throw Error("unsupported model format");
    ModelHyperparams h;
    h.min_n = j.at("min_n");
    h.max_n = j.at("max_n");
    h.dimension_bits = j.at("dimension_bits");
    h.epochs = j.at("epochs");
    h.learning_rate = j.at("learning_rate");
    h.l2 = j.at("l2");
    h.seed = j.at("seed");
    CharNgramModel m(j.at("classes").get<std::vector<std::string>>(), h);
    m.bias_ = j.at("bias").get<std::vector<double>>();
    if (m.bias_.size() != m.classes_.size()) throw Error("bias length does not match classes");
    for (std::size_t c = 0; c < m.classes_.size(); ++c) {
      for (const auto& e : j.at("weights").at(m.classes_[c])) {
        const auto i = e.at(0).get<std::uint32_t>();
        if (i >= m.dimension_) throw Error("weight index out of range");
        m.weights_[c * m.dimension_ + i] = e.at(1).get<float>();
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed model file: ") + e.what());
  }
}

void CharNgramModel::save(const std::filesystem::path& path) const {
  write_file_atomic(path, to_json().dump() + "\n");
}

CharNgramModel CharNgramModel::load(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("malformed model file " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

ToxicityOutput to_toxicity_output(const std::vector<double>& probabilities) {
  if (probabilities.size() != kToxicityClassCount)
    throw LabelSchemaMismatch("expected " + std::to_string(kToxicityClassCount) + " class probabilities");
  ToxicityOutput out;
  std::copy(probabilities.begin(), probabilities.end(), out.probability.begin());
  return out;
}

std::string_view to_string(TrainingMode m) {
  switch (m) {
    case TrainingMode::kClean: return "clean";
    case TrainingMode::kAtVisual: return "at-visual";
    case TrainingMode::kAtRandom: return "at-random";
  }
  return "clean";
}

TrainingMode training_mode_from_string(std::string_view name) {
  if (name == "clean") return TrainingMode::kClean;
  if (name == "at-visual" || name == "at") return TrainingMode::kAtVisual;
  if (name == "at-random") return TrainingMode::kAtRandom;
  throw Error("unknown training regime '" + std::string(name) + "' (clean, at-visual, at-random)");
}

void TrainingRegime::validate() const {
  if (!(p_train >= 0.0 && p_train <= 1.0)) throw Error("p_train must lie in [0, 1]");
  if (mode == TrainingMode::kAtVisual && ces == nullptr)
    throw Error("visual adversarial training needs a character embedding space");
  if (mode == TrainingMode::kAtRandom && random_alphabet.empty()) throw EmptyAlphabet();
}

std::vector<int> document_labels(const nlohmann::json& doc, const std::vector<std::string>& classes) {
  if (!doc.contains("labels") || !doc["labels"].is_array())
    throw LabelSchemaMismatch("document lacks a \"labels\" array");
  const auto& labels = doc["labels"];
  std::vector<int> out(classes.size(), 0);
  if (labels.empty()) return out;
  if (labels.front().is_number()) {
    if (labels.size() != classes.size())
      throw LabelSchemaMismatch("label vector has " + std::to_string(labels.size()) + " entries, expected " +
                                std::to_string(classes.size()));
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (!labels[i].is_number()) throw LabelSchemaMismatch("mixed label types");
      out[i] = labels[i].get<double>() != 0.0 ? 1 : 0;
    }
    return out;
  }
  for (const auto& l : labels) {
    if (!l.is_string()) throw LabelSchemaMismatch("mixed label types");
    const auto it = std::find(classes.begin(), classes.end(), l.get<std::string>());
    if (it == classes.end()) throw LabelSchemaMismatch("unknown class '" + l.get<std::string>() + "'");
    out[static_cast<std::size_t>(it - classes.begin())] = 1;
  }
  return out;
}

std::vector<nlohmann::json> training_view(const std::vector<nlohmann::json>& corpus,
                                          const TrainingRegime& regime) {
  regime.validate();
  switch (regime.mode) {
    case TrainingMode::kClean:
      return corpus;
    case TrainingMode::kAtVisual: {
      PerturbationConfig config;
      config.p = regime.p_train;
      config.space = regime.ces;
      config.seed = regime.seed;
      config.weighting = regime.weighting;
      return perturb_corpus(corpus, config).documents;
    }
    case TrainingMode::kAtRandom:
      return perturb_corpus(corpus, random_perturber(regime.p_train, regime.random_alphabet), regime.seed)
          .documents;
  }
  return corpus;
}

CharNgramModel train(const std::vector<nlohmann::json>& corpus, const TrainingRegime& regime,
                     const ModelHyperparams& hyper, const std::vector<std::string>& classes) {
  if (corpus.empty()) throw EmptyCorpus();
  const std::vector<nlohmann::json> docs = training_view(corpus, regime);

  CharNgramModel model(classes, hyper);
  std::vector<std::vector<SparseFeature>> features;
  std::vector<std::vector<int>> labels;
  features.reserve(docs.size());
  labels.reserve(docs.size());
  for (const auto& d : docs) {
    labels.push_back(document_labels(d, classes));
    features.push_back(extract_ngram_features(utf8::decode(document_text(d)), hyper.min_n, hyper.max_n,
                                              model.dimension()));
  }

  Rng rng(hyper.seed);
  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
    rng.shuffle(order);
    model.sgd_epoch(features, labels, order, hyper.learning_rate / std::sqrt(1.0 + epoch));
  }
  return model;
}

std::vector<double> predict(const CharNgramModel& model, std::string_view text) {
  return model.predict_utf8(text);
}

}  // namespace viperkit
