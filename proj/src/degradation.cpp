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

#include "viperkit/degradation.hpp"

#include <algorithm>
#include <optional>

#include "viperkit/corpus.hpp"
#include "viperkit/error.hpp"
#include "viperkit/io.hpp"
#include "viperkit/utf8.hpp"

namespace viperkit {

std::string_view to_string(Shielding s) {
  switch (s) {
    case Shielding::kNone: return "none";
    case Shielding::kRbr: return "rbr";
    case Shielding::kAt: return "at";
    case Shielding::kAtRandom: return "at-random";
    case Shielding::kAtRbr: return "at-rbr";
  }
  return "none";
}

Shielding shielding_from_string(std::string_view name) {
  if (name == "none") return Shielding::kNone;
  if (name == "rbr") return Shielding::kRbr;
  if (name == "at") return Shielding::kAt;
  if (name == "at-random") return Shielding::kAtRandom;
  if (name == "at-rbr") return Shielding::kAtRbr;
  throw Error("unknown shielding '" + std::string(name) + "' (none, rbr, at, at-random, at-rbr)");
}

namespace {

std::vector<std::vector<double>> predict_all(const CharNgramModel& model, const std::vector<nlohmann::json>& docs,
                                             const RecoveryTable* recovery, unsigned threads) {
  std::vector<std::vector<double>> out(docs.size());
  parallel_for(docs.size(), threads, [&](std::size_t i) {
    std::u32string text = utf8::decode(document_text(docs[i]));
    if (recovery) text = recovery->recover(text);
    out[i] = model.predict(text);
  });
  return out;
}

std::vector<std::vector<int>> gold_labels(const std::vector<nlohmann::json>& docs,
                                          const std::vector<std::string>& classes) {
  std::vector<std::vector<int>> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(document_labels(d, classes));
  return out;
}

nlohmann::json series_json(const ScoreSeries& s, const ScoreSeries& unshielded, bool is_unshielded) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& [p, score] : s.points) {
    nlohmann::json pt = {{"p", p}, {"score", score}};
    // sigma*(p) is normalized by the unshielded clean score.
    pt["relative"] = is_unshielded ? relative_score(s, p)
                                   : shielding_delta(s, unshielded, p) + relative_score(unshielded, p);
    if (!is_unshielded) pt["delta"] = shielding_delta(s, unshielded, p);
    points.push_back(std::move(pt));
  }
  return {{"metric", s.metric_name}, {"direction", to_string(s.direction)}, {"points", std::move(points)}};
}

void check_setup(const DegradationSetup& setup) {
  if (setup.test.empty()) throw EmptyCorpus();
  if (setup.attack == nullptr) throw Error("degradation run needs an attack space");
  if (std::find(setup.p_grid.begin(), setup.p_grid.end(), 0.0) == setup.p_grid.end())
    throw Error("perturbation grid must include p = 0");
  for (double p : setup.p_grid)
    if (!(p >= 0.0 && p <= 1.0)) throw Error("perturbation level outside [0, 1]");
}

EvalReport sweep(const CharNgramModel& clean_model, const std::map<Shielding, const CharNgramModel*>& shielded_models,
                 const DegradationSetup& setup) {
  check_setup(setup);
  std::vector<double> grid = setup.p_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  EvalReport report;
  report.p_grid = grid;
  report.unshielded.metric_name = report.metric;
  for (const auto& [s, m] : shielded_models) {
    if ((s == Shielding::kRbr || s == Shielding::kAtRbr) && setup.recovery == nullptr)
      throw Error("RBR shielding needs a recovery table");
    report.shielded[s].metric_name = report.metric;
  }

  const auto gold = gold_labels(setup.test, setup.classes);
  const bool toxicity = setup.classes.size() == kToxicityClassCount;
  const std::vector<std::vector<double>> clean_predictions = predict_all(clean_model, setup.test, nullptr, setup.threads);

  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const double p = grid[gi];
    PerturbationConfig config;
    config.p = p;
    config.space = setup.attack;
    config.weighting = setup.attack_weighting;
    config.seed = test_seed(setup.seed, gi);
    const CorpusPerturbation attacked = perturb_corpus(setup.test, config, setup.threads);

    const auto predictions = predict_all(clean_model, attacked.documents, nullptr, setup.threads);
    report.unshielded.points[p] = macro_auc_roc(predictions, gold);

    for (const auto& [s, model] : shielded_models) {
      const bool rbr = s == Shielding::kRbr || s == Shielding::kAtRbr;
      const auto shielded = predict_all(*model, attacked.documents, rbr ? setup.recovery : nullptr, setup.threads);
      report.shielded[s].points[p] = macro_auc_roc(shielded, gold);
    }

    if (toxicity) {
      std::vector<ToxicityOutput> before, after;
      std::vector<bool> toxic;
      for (std::size_t i = 0; i < gold.size(); ++i) {
        before.push_back(to_toxicity_output(clean_predictions[i]));
        after.push_back(to_toxicity_output(predictions[i]));
        toxic.push_back(gold[i][0] != 0);
      }
      const AttackSuccess success = attack_success_rate(before, after, toxic, setup.tl_threshold);
      report.attack[p] = success;
      if (setup.hot_words) {
        std::vector<bool> succeeded;
        std::vector<std::u32string> originals;
        for (std::size_t i = 0; i < gold.size(); ++i) {
          succeeded.push_back(toxic[i] && toxicity_level(before[i]) - toxicity_level(after[i]) > setup.tl_threshold);
          originals.push_back(utf8::decode(document_text(setup.test[i])));
        }
        report.hot_word_rate[p] = hot_word_cooccurrence(attacked.records, succeeded, *setup.hot_words, originals);
      }
    }
  }

  report.metadata = {{"attack_space", to_string(setup.attack->kind())},
                     {"attack_source", setup.attack->source()},
                     {"attack_weighting", to_string(setup.attack_weighting)},
                     {"seed", setup.seed},
                     {"p_train", setup.p_train},
                     {"train_size", setup.train.size()},
                     {"test_size", setup.test.size()},
                     {"tl_threshold", setup.tl_threshold},
                     {"model", {{"min_n", setup.hyper.min_n},
                                {"max_n", setup.hyper.max_n},
                                {"dimension_bits", setup.hyper.dimension_bits},
                                {"epochs", setup.hyper.epochs},
                                {"seed", setup.hyper.seed}}}};
  if (setup.at_space) report.metadata["at_space"] = to_string(setup.at_space->kind());
  if (setup.recovery) report.metadata["recovery_font"] = setup.recovery->font_id();
  return report;
}

}  // namespace

nlohmann::json EvalReport::to_json() const {
  nlohmann::json j = {{"metric", metric}, {"direction", to_string(direction)}, {"p_grid", p_grid}};
  j["unshielded"] = series_json(unshielded, unshielded, true);
  nlohmann::json sh = nlohmann::json::object();
  for (const auto& [s, series] : shielded) sh[std::string(to_string(s))] = series_json(series, unshielded, false);
  j["shielding"] = std::move(sh);
  nlohmann::json attack_json = nlohmann::json::array();
  for (const auto& [p, a] : attack) {
    nlohmann::json e = {{"p", p},
                        {"toxic_success_rate", a.toxic_success_rate},
                        {"nontoxic_flip_rate", a.nontoxic_flip_rate},
                        {"toxic_count", a.toxic_count},
                        {"nontoxic_count", a.nontoxic_count},
                        {"toxic_empty", a.toxic_empty},
                        {"nontoxic_empty", a.nontoxic_empty}};
    if (const auto it = hot_word_rate.find(p); it != hot_word_rate.end()) {
      e["hot_word_cooccurrence"] = it->second.rate;
      e["hot_word_empty_denominator"] = it->second.empty_denominator;
    }
    attack_json.push_back(std::move(e));
  }
  j["attack"] = std::move(attack_json);
  j["config"] = metadata;
  return j;
}

double score_model(const CharNgramModel& model, const std::vector<nlohmann::json>& docs,
                   const std::vector<std::string>& classes, const RecoveryTable* recovery, unsigned threads) {
  return macro_auc_roc(predict_all(model, docs, recovery, threads), gold_labels(docs, classes));
}

std::uint64_t test_seed(std::uint64_t seed, std::size_t index) {
  return derive_seed(derive_seed(seed, 0x7e57), index);
}

EvalReport degradation_run(const DegradationSetup& setup, const std::vector<Shielding>& shieldings) {
  check_setup(setup);
  if (setup.train.empty()) throw EmptyCorpus();

  TrainingRegime clean;
  clean.seed = setup.seed;
  const CharNgramModel clean_model = train(setup.train, clean, setup.hyper, setup.classes);

  std::optional<CharNgramModel> at_model;
  std::optional<CharNgramModel> random_model;
  const auto need = [&](std::initializer_list<Shielding> any) {
    return std::any_of(shieldings.begin(), shieldings.end(),
                       [&](Shielding s) { return std::find(any.begin(), any.end(), s) != any.end(); });
  };
  if (need({Shielding::kAt, Shielding::kAtRbr})) {
    TrainingRegime r;
    r.mode = TrainingMode::kAtVisual;
    r.p_train = setup.p_train;
    r.ces = setup.at_space;
    r.seed = derive_seed(setup.seed, 0xA7);
    at_model = train(setup.train, r, setup.hyper, setup.classes);
  }
  if (need({Shielding::kAtRandom})) {
    TrainingRegime r;
    r.mode = TrainingMode::kAtRandom;
    r.p_train = setup.p_train;
    r.random_alphabet = setup.random_alphabet;
    r.seed = derive_seed(setup.seed, 0xA7);
    random_model = train(setup.train, r, setup.hyper, setup.classes);
  }

  std::map<Shielding, const CharNgramModel*> models;
  for (Shielding s : shieldings) {
    switch (s) {
      case Shielding::kNone: break;
      case Shielding::kRbr: models[s] = &clean_model; break;
      case Shielding::kAt:
      case Shielding::kAtRbr: models[s] = &*at_model; break;
      case Shielding::kAtRandom: models[s] = &*random_model; break;
    }
  }
  return sweep(clean_model, models, setup);
}

EvalReport degradation_run(const CharNgramModel& model, const DegradationSetup& setup,
                           const std::vector<Shielding>& shieldings) {
  std::map<Shielding, const CharNgramModel*> models;
  for (Shielding s : shieldings) {
    if (s == Shielding::kNone) continue;
    if (s != Shielding::kRbr) throw Error("a pre-trained model only supports none and rbr shielding");
    models[s] = &model;
  }
  return sweep(model, models, setup);
}

}  // namespace viperkit
