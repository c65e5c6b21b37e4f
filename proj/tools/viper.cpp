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

// viper: command-line front end for building character spaces, perturbing
// and recovering corpora, training the baseline classifier and running
// degradation sweeps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "viperkit/catalog.hpp"
#include "viperkit/corpus.hpp"
#include "viperkit/degradation.hpp"
#include "viperkit/error.hpp"
#include "viperkit/glyph.hpp"
#include "viperkit/io.hpp"
#include "viperkit/metrics.hpp"
#include "viperkit/model.hpp"
#include "viperkit/neighbor_table.hpp"
#include "viperkit/perturb.hpp"
#include "viperkit/recovery.hpp"
#include "viperkit/simd/dot.hpp"
#include "viperkit/standard_set.hpp"
#include "viperkit/toy_corpus.hpp"
#include "viperkit/utf8.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace viperkit;

constexpr const char* kVersion = "1.0.0";
constexpr int kExitError = 1;
constexpr int kExitUnknownCharacter = 2;

class UnknownCharacter : public Error {
 public:
  using Error::Error;
};

struct Globals {
  unsigned threads = default_threads();
  std::uint32_t max_codepoint = kDefaultMaxCodepoint;
  std::string names_file;
  std::string font;
};

// Lazily built resources shared by one invocation.
class Context {
 public:
  explicit Context(Globals g) : g_(std::move(g)) {}

  const Globals& globals() const { return g_; }

  fs::path names_path() const {
    return g_.names_file.empty() ? data_dir() / "UnicodeData.txt" : fs::path(g_.names_file);
  }

  const EmbeddingStore& store() {
    if (!store_) {
      FontRasterizer font(resolve_font_path(g_.font));
      store_ = build_store(font, {static_cast<char32_t>(g_.max_codepoint), g_.threads});
    }
    return *store_;
  }

  // "ices", "dces", "eces" or the path of a saved table.
  NeighborTable space(const std::string& spec) {
    std::string lower = spec;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "ices") return build_ices_table(store(), kMaxNeighbors, g_.threads);
    if (lower == "dces") {
      CatalogOptions opts;
      opts.max_codepoint = static_cast<char32_t>(g_.max_codepoint);
      return build_dces(load_catalog(names_path(), opts));
    }
    if (lower == "eces") return build_eces(data_dir() / "eces.tsv");
    return NeighborTable::load(spec);
  }

  json run_config(const std::string& subcommand) const {
    return {{"subcommand", subcommand},
            {"version", kVersion},
            {"font", resolve_font_path(g_.font).string()},
            {"names_file", names_path().string()},
            {"max_codepoint", g_.max_codepoint},
            {"threads", g_.threads}};
  }

 private:
  Globals g_;
  std::optional<EmbeddingStore> store_;
};

char32_t parse_character(const std::string& arg) {
  if (arg.size() > 2 && (arg.starts_with("U+") || arg.starts_with("u+"))) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(arg.substr(2), &used, 16);
    } catch (const std::exception&) {
      throw UnknownCharacter("not a code point: " + arg);
    }
    if (used != arg.size() - 2 || v > 0x10FFFF) throw UnknownCharacter("not a code point: " + arg);
    return static_cast<char32_t>(v);
  }
  try {
    return utf8::decode_single(arg);
  } catch (const Error&) {
    throw UnknownCharacter("expected exactly one character, got '" + arg + "'");
  }
}

std::vector<char32_t> parse_alphabet(const std::string& spec) {
  std::vector<char32_t> out;
  if (spec == "letters") {
    for (char32_t c = 'a'; c <= 'z'; ++c) out.push_back(c);
    for (char32_t c = 'A'; c <= 'Z'; ++c) out.push_back(c);
    return out;
  }
  const std::u32string chars = utf8::decode(spec);
  out.assign(chars.begin(), chars.end());
  return out;
}

// Comma separated levels; "a,b,...,c" expands with step b-a.
std::vector<double> parse_p_grid(const std::string& spec) {
  std::vector<std::string> tokens;
  std::stringstream ss(spec);
  for (std::string t; std::getline(ss, t, ',');)
    if (!t.empty()) tokens.push_back(t);
  std::vector<double> grid;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] != "...") {
      grid.push_back(std::stod(tokens[i]));
      continue;
    }
    if (grid.size() < 2 || i + 1 >= tokens.size()) throw Error("'...' needs two leading values and an end value");
    const double step = grid[grid.size() - 1] - grid[grid.size() - 2];
    const double end = std::stod(tokens[i + 1]);
    if (step <= 0) throw Error("p grid must be increasing around '...'");
    const double start = grid.back();
    for (int k = 1;; ++k) {
      const double v = std::round((start + k * step) * 1e9) / 1e9;
      if (v > end + 1e-12) break;
      grid.push_back(v);
    }
    if (std::abs(grid.back() - end) > 1e-9) grid.push_back(end);
    ++i;
  }
  for (double p : grid)
    if (!(p >= 0.0 && p <= 1.0)) throw Error("perturbation level outside [0, 1]: " + std::to_string(p));
  return grid;
}

void write_json(const std::string& path, const json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    write_file_atomic(path, j.dump(2) + "\n");
  }
}

void write_sidecar(const std::string& path, const json& config) {
  write_file_atomic(path + ".meta.json", config.dump(2) + "\n");
}

std::vector<json> corpus_or_bundled(const std::string& path, const char* bundled) {
  return read_jsonl(path.empty() ? data_dir() / bundled : fs::path(path));
}

// build-ces ------------------------------------------------------------------

struct BuildCesArgs {
  std::string kind;
  std::string out;
  std::string store_out;
  std::string eces_table;
  std::size_t k = kMaxNeighbors;
};

int cmd_build_ces(Context& ctx, const BuildCesArgs& a) {
  const SpaceKind kind = space_kind_from_string(a.kind);
  json cfg = ctx.run_config("build-ces");
  cfg["kind"] = std::string(to_string(kind));
  cfg["out"] = a.out;

  std::optional<NeighborTable> table;
  switch (kind) {
    case SpaceKind::kIces: {
      const EmbeddingStore& store = ctx.store();
      table = build_ices_table(store, a.k, ctx.globals().threads);
      cfg["font_id"] = store.font_id();
      cfg["k"] = a.k;
      cfg["render"] = {{"side", store.params().side},
                       {"pixel_height", store.params().pixel_height},
                       {"antialias", store.params().antialias},
                       {"shrink_to_fit", store.params().shrink_to_fit}};
      if (!a.store_out.empty()) {
        store.save(a.store_out);
        cfg["store"] = a.store_out;
      }
      break;
    }
    case SpaceKind::kDces: {
      CatalogOptions opts;
      opts.max_codepoint = static_cast<char32_t>(ctx.globals().max_codepoint);
      table = build_dces(load_catalog(ctx.names_path(), opts), a.k);
      cfg["names_digest"] = file_digest(ctx.names_path());
      cfg["k"] = a.k;
      break;
    }
    case SpaceKind::kEces: {
      const fs::path src = a.eces_table.empty() ? data_dir() / "eces.tsv" : fs::path(a.eces_table);
      table = build_eces(src);
      cfg["eces_table"] = src.string();
      cfg["eces_digest"] = file_digest(src);
      break;
    }
  }
  cfg["source"] = table->source();
  cfg["entries"] = table->size();
  table->save(a.out);
  write_sidecar(a.out, cfg);
  std::cerr << "wrote " << table->size() << " " << to_string(kind) << " entries to " << a.out << "\n";
  return 0;
}

// neighbors ------------------------------------------------------------------

struct NeighborsArgs {
  std::string character;
  std::string ces = "ices";
  std::size_t k = 10;
};

int cmd_neighbors(Context& ctx, const NeighborsArgs& a) {
  const char32_t cp = parse_character(a.character);
  const NeighborTable table = ctx.space(a.ces);
  const auto list = table.neighbors(cp);
  if (list.empty())
    throw UnknownCharacter(format_codepoint(cp) + " has no neighbors in " + std::string(to_string(table.kind())));
  std::ostringstream out;
  for (std::size_t i = 0; i < std::min(a.k, list.size()); ++i) {
    char w[32];
    std::snprintf(w, sizeof w, "%.6f", list[i].weight);
    out << format_codepoint(list[i].codepoint) << '\t' << utf8::encode(list[i].codepoint) << '\t' << w << '\n';
  }
  std::cout << out.str();
  return 0;
}

// perturb --------------------------------------------------------------------

struct PerturbArgs {
  double p = 0.0;
  std::string ces = "ices";
  std::uint64_t seed = 1;
  std::string weighting = "similarity";
  std::string random;
  std::string in;
  std::string out;
  std::string text;
  std::string records;
};

int cmd_perturb(Context& ctx, const PerturbArgs& a) {
  json cfg = ctx.run_config("perturb");
  cfg.update({{"p", a.p}, {"seed", a.seed}, {"in", a.in}, {"out", a.out}});
  const char32_t max_cp = static_cast<char32_t>(ctx.globals().max_codepoint);

  Perturber perturber;
  std::optional<NeighborTable> table;
  if (!a.random.empty()) {
    perturber = random_perturber(a.p, parse_alphabet(a.random), max_cp);
    cfg["random_alphabet"] = a.random;
  } else {
    table = ctx.space(a.ces);
    PerturbationConfig pc;
    pc.p = a.p;
    pc.space = &*table;
    pc.seed = a.seed;
    pc.weighting = weighting_from_string(a.weighting);
    pc.max_codepoint = max_cp;
    pc.validate();
    perturber = visual_perturber(pc);
    cfg["ces"] = std::string(to_string(table->kind()));
    cfg["ces_source"] = table->source();
    cfg["weighting"] = std::string(to_string(pc.weighting));
  }

  if (!a.text.empty()) {
    std::cout << utf8::encode(perturber(utf8::decode(a.text), a.seed).text) << "\n";
    return 0;
  }
  if (a.in.empty() || a.out.empty()) throw Error("perturb needs --in and --out, or --text");

  const std::vector<json> docs = read_jsonl(a.in);
  const CorpusPerturbation result = perturb_corpus(docs, perturber, a.seed, ctx.globals().threads);
  if (!a.records.empty()) {
    std::vector<json> rows;
    rows.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
      json row = {{"index", i}, {"records", records_to_json(result.records[i])}};
      if (docs[i].contains("id")) row["id"] = docs[i]["id"];
      rows.push_back(std::move(row));
    }
    write_jsonl(a.records, rows);
    cfg["records"] = a.records;
  }
  write_jsonl(a.out, result.documents);
  write_sidecar(a.out, cfg);
  return 0;
}

// recover --------------------------------------------------------------------

struct RecoverArgs {
  std::string standard = "default";
  std::string in;
  std::string out;
  std::string text;
  std::string cache;
  std::string fallback = "pass";
};

RecoveryFallback parse_fallback(const std::string& spec) {
  if (spec == "pass") return RecoveryFallback::pass_through();
  if (spec.starts_with("replace:")) return RecoveryFallback{parse_character(spec.substr(8))};
  throw Error("fallback must be 'pass' or 'replace:<char>'");
}

int cmd_recover(Context& ctx, const RecoverArgs& a) {
  json cfg = ctx.run_config("recover");
  cfg.update({{"standard", a.standard}, {"fallback", a.fallback}, {"in", a.in}, {"out", a.out}});
  const StandardSet standard = StandardSet::from_name(a.standard);
  const RecoveryFallback fallback = parse_fallback(a.fallback);

  RecoveryTable table;
  if (!a.cache.empty() && fs::exists(a.cache)) {
    table = RecoveryTable::load(a.cache);
    if (table.standard().members() != standard.members())
      throw Error("recovery cache " + a.cache + " was built for a different standard set");
  } else {
    table = RecoveryTable(ctx.store(), standard, ctx.globals().threads);
    if (!a.cache.empty()) table.save(a.cache);
  }
  cfg["font_id"] = table.font_id();

  if (!a.text.empty()) {
    std::cout << table.recover_utf8(a.text, fallback) << "\n";
    return 0;
  }
  if (a.in.empty() || a.out.empty()) throw Error("recover needs --in and --out, or --text");
  std::vector<json> docs = read_jsonl(a.in);
  for (json& doc : docs) set_document_text(doc, table.recover_utf8(document_text(doc), fallback));
  write_jsonl(a.out, docs);
  write_sidecar(a.out, cfg);
  return 0;
}

// train ----------------------------------------------------------------------

struct TrainArgs {
  std::string in;
  std::string out;
  std::string regime = "clean";
  double p_train = kDefaultTrainingP;
  std::string ces = "ices";
  std::string random = "letters";
  std::string weighting = "similarity";
  std::uint64_t seed = 1;
  int epochs = ModelHyperparams{}.epochs;
};

int cmd_train(Context& ctx, const TrainArgs& a) {
  json cfg = ctx.run_config("train");
  const std::vector<json> docs = corpus_or_bundled(a.in, "toy_train.jsonl");

  TrainingRegime regime;
  regime.mode = training_mode_from_string(a.regime);
  regime.p_train = a.p_train;
  regime.seed = a.seed;
  regime.weighting = weighting_from_string(a.weighting);
  std::optional<NeighborTable> table;
  if (regime.mode == TrainingMode::kAtVisual) {
    table = ctx.space(a.ces);
    regime.ces = &*table;
    cfg["ces"] = std::string(to_string(table->kind()));
    cfg["ces_source"] = table->source();
  } else if (regime.mode == TrainingMode::kAtRandom) {
    regime.random_alphabet = parse_alphabet(a.random);
    cfg["random_alphabet"] = a.random;
  }
  ModelHyperparams hyper;
  hyper.seed = a.seed;
  hyper.epochs = a.epochs;

  const CharNgramModel model = train(docs, regime, hyper);
  cfg.update({{"regime", std::string(to_string(regime.mode))},
              {"p_train", regime.p_train},
              {"weighting", std::string(to_string(regime.weighting))},
              {"seed", a.seed},
              {"in", a.in.empty() ? (data_dir() / "toy_train.jsonl").string() : a.in},
              {"out", a.out},
              {"train_size", docs.size()}});
  json j = model.to_json();
  j["run_config"] = cfg;
  write_file_atomic(a.out, j.dump() + "\n");
  return 0;
}

// evaluate -------------------------------------------------------------------

struct EvaluateArgs {
  std::string pred_file;
  std::string metric = "accuracy";
  std::string baseline;
  std::string model;
  std::string in;
  std::string report;
};

std::string as_label(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::vector<int> as_int_row(const json& v) {
  if (v.is_array()) return v.get<std::vector<int>>();
  return {v.get<int>()};
}

std::vector<double> as_double_row(const json& v) {
  if (v.is_array()) return v.get<std::vector<double>>();
  return {v.get<double>()};
}

double score_group(const std::string& metric, const std::vector<const json*>& rows) {
  if (metric == "accuracy") {
    std::vector<std::string> gold, pred;
    for (const json* r : rows) {
      gold.push_back(as_label(r->at("gold")));
      pred.push_back(as_label(r->at("pred")));
    }
    return accuracy(gold, pred);
  }
  if (metric == "micro-f1") {
    std::vector<std::vector<int>> gold, pred;
    for (const json* r : rows) {
      gold.push_back(as_int_row(r->at("gold")));
      pred.push_back(as_int_row(r->at("pred")));
    }
    return micro_f1(gold, pred);
  }
  if (metric == "auc") {
    std::vector<std::vector<int>> gold;
    std::vector<std::vector<double>> pred;
    for (const json* r : rows) {
      gold.push_back(as_int_row(r->at("gold")));
      pred.push_back(as_double_row(r->at("pred")));
    }
    return macro_auc_roc(pred, gold);
  }
  if (metric == "edit-distance") {
    double sum = 0.0;
    for (const json* r : rows)
      sum += normalized_edit_distance_utf8(r->at("gold").get<std::string>(), r->at("pred").get<std::string>());
    return sum / static_cast<double>(rows.size());
  }
  throw Error("unknown metric '" + metric + "' (accuracy, micro-f1, auc, edit-distance)");
}

json series_to_json(const ScoreSeries& s, const ScoreSeries* baseline) {
  json points = json::array();
  const bool has_zero = s.points.count(0.0) > 0;
  for (const auto& [p, score] : s.points) {
    json e = {{"p", p}, {"score", score}};
    if (has_zero) e["relative"] = relative_score(s, p);
    if (baseline && baseline->points.count(0.0) && baseline->points.count(p))
      e["delta"] = shielding_delta(s, *baseline, p);
    points.push_back(std::move(e));
  }
  return points;
}

int cmd_evaluate(Context& ctx, const EvaluateArgs& a) {
  json cfg = ctx.run_config("evaluate");
  json report;

  if (!a.pred_file.empty()) {
    cfg.update({{"pred_file", a.pred_file}, {"metric", a.metric}, {"baseline", a.baseline}});
    const std::vector<json> rows = read_json_lines(a.pred_file);
    if (rows.empty()) throw EmptyCorpus();
    std::map<std::string, std::map<double, std::vector<const json*>>> groups;
    for (const json& r : rows) {
      if (!r.contains("p") || !r.contains("gold") || !r.contains("pred"))
        throw CorpusReadError("prediction rows need p, gold and pred");
      groups[r.value("system", std::string("default"))][r.at("p").get<double>()].push_back(&r);
    }
    const Direction dir = a.metric == "edit-distance" ? Direction::kLowerBetter : Direction::kHigherBetter;
    std::map<std::string, ScoreSeries> series;
    for (const auto& [system, by_p] : groups) {
      ScoreSeries s{a.metric, dir, {}};
      for (const auto& [p, group] : by_p) s.points[p] = score_group(a.metric, group);
      series.emplace(system, std::move(s));
    }
    const ScoreSeries* base = nullptr;
    if (!a.baseline.empty()) {
      const auto it = series.find(a.baseline);
      if (it == series.end()) throw Error("baseline system '" + a.baseline + "' not in prediction file");
      base = &it->second;
    }
    json systems = json::object();
    for (const auto& [name, s] : series) systems[name] = series_to_json(s, base == &s ? nullptr : base);
    report = {{"metric", a.metric}, {"direction", std::string(to_string(dir))}, {"systems", systems}};
  } else if (!a.model.empty()) {
    const CharNgramModel model = CharNgramModel::load(a.model);
    const std::vector<json> docs = corpus_or_bundled(a.in, "toy_test.jsonl");
    std::vector<std::vector<double>> scores;
    std::vector<std::vector<int>> gold, pred;
    for (const json& d : docs) {
      scores.push_back(predict(model, document_text(d)));
      gold.push_back(document_labels(d, model.classes()));
      std::vector<int> row;
      for (double s : scores.back()) row.push_back(s >= 0.5 ? 1 : 0);
      pred.push_back(std::move(row));
    }
    cfg.update({{"model", a.model}, {"in", a.in}});
    report = {{"size", docs.size()},
              {"macro_auc_roc", macro_auc_roc(scores, gold)},
              {"micro_f1", micro_f1(gold, pred)}};
  } else {
    throw Error("evaluate needs --pred-file or --model");
  }
  report["run_config"] = cfg;
  write_json(a.report, report);
  return 0;
}

// degrade --------------------------------------------------------------------

struct DegradeArgs {
  std::string train;
  std::string test;
  std::string p_grid = "0,0.1,...,0.9";
  std::string ces = "dces";
  std::string at_ces = "ices";
  std::string random = "letters";
  std::vector<std::string> shielding = {"rbr", "at", "at-random", "at-rbr"};
  std::string weighting = "similarity";
  std::string standard = "default";
  std::string model;
  std::uint64_t seed = 1;
  double p_train = kDefaultTrainingP;
  double tl_threshold = 0.0;
  int epochs = ModelHyperparams{}.epochs;
  std::string report;
};

int cmd_degrade(Context& ctx, const DegradeArgs& a) {
  DegradationSetup setup;
  setup.train = corpus_or_bundled(a.train, "toy_train.jsonl");
  setup.test = corpus_or_bundled(a.test, "toy_test.jsonl");
  setup.p_grid = parse_p_grid(a.p_grid);
  setup.attack_weighting = weighting_from_string(a.weighting);
  setup.seed = a.seed;
  setup.p_train = a.p_train;
  setup.tl_threshold = a.tl_threshold;
  setup.threads = ctx.globals().threads;
  setup.hyper.seed = a.seed;
  setup.hyper.epochs = a.epochs;

  std::vector<Shielding> shieldings;
  bool needs_rbr = false, needs_at = false, needs_random = false;
  for (const std::string& name : a.shielding) {
    const Shielding s = shielding_from_string(name);
    if (s == Shielding::kNone) continue;
    shieldings.push_back(s);
    needs_rbr |= s == Shielding::kRbr || s == Shielding::kAtRbr;
    needs_at |= s == Shielding::kAt || s == Shielding::kAtRbr;
    needs_random |= s == Shielding::kAtRandom;
  }

  const NeighborTable attack = ctx.space(a.ces);
  setup.attack = &attack;
  std::optional<NeighborTable> at_space;
  if (needs_at) {
    at_space = ctx.space(a.at_ces);
    setup.at_space = &*at_space;
  }
  if (needs_random) setup.random_alphabet = parse_alphabet(a.random);
  std::optional<RecoveryTable> recovery;
  if (needs_rbr) {
    recovery = RecoveryTable(ctx.store(), StandardSet::from_name(a.standard), ctx.globals().threads);
    setup.recovery = &*recovery;
  }
  const HotWordList hot_words = HotWordList::bundled();
  setup.hot_words = &hot_words;

  EvalReport report = a.model.empty() ? degradation_run(setup, shieldings)
                                      : degradation_run(CharNgramModel::load(a.model), setup, shieldings);
  json cfg = ctx.run_config("degrade");
  cfg.update({{"train", a.train.empty() ? (data_dir() / "toy_train.jsonl").string() : a.train},
              {"test", a.test.empty() ? (data_dir() / "toy_test.jsonl").string() : a.test},
              {"p_grid", setup.p_grid},
              {"ces", a.ces},
              {"at_ces", a.at_ces},
              {"shielding", a.shielding},
              {"weighting", a.weighting},
              {"standard", a.standard},
              {"model", a.model},
              {"seed", a.seed},
              {"epochs", a.epochs},
              {"simd", std::string(to_string(simd::active_isa()))}});
  json j = report.to_json();
  j["run_config"] = cfg;
  write_json(a.report, j);
  return 0;
}

// make-corpus ----------------------------------------------------------------

struct MakeCorpusArgs {
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::string id_prefix = "doc";
  std::string out;
};

int cmd_make_corpus(Context& ctx, const MakeCorpusArgs& a) {
  write_jsonl(a.out, generate_toy_corpus(a.count, a.seed, a.id_prefix));
  json cfg = ctx.run_config("make-corpus");
  cfg.update({{"count", a.count}, {"seed", a.seed}, {"id_prefix", a.id_prefix}, {"out", a.out}});
  write_sidecar(a.out, cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Visual perturbation toolkit: character spaces, attacks, recovery and evaluation"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::string simd_name;
  app.add_option("--threads", g.threads, "Worker thread cap")->check(CLI::PositiveNumber);
  app.add_option("--max-codepoint", g.max_codepoint, "Exclusive code point bound")->check(CLI::Range(0x21u, 0x110000u));
  app.add_option("--names-file", g.names_file, "UnicodeData.txt to read names from")->check(CLI::ExistingFile);
  app.add_option("--font", g.font, "Font file; falls back to VIPERKIT_FONT, then the bundled font")
      ->check(CLI::ExistingFile);
  app.add_option("--simd", simd_name, "Force a dot-product kernel: scalar, avx2, neon");

  BuildCesArgs bc;
  auto* build = app.add_subcommand("build-ces", "Build and save a character embedding space");
  build->add_option("kind", bc.kind, "ices, dces or eces")->required();
  build->add_option("--out,-o", bc.out, "Output table (TSV)")->required();
  build->add_option("--store-out", bc.store_out, "Also save the ICES embedding store");
  build->add_option("--eces-table", bc.eces_table, "Curated ECES source table")->check(CLI::ExistingFile);
  build->add_option("-k", bc.k, "Neighbors per entry")->check(CLI::Range(1, 20));

  NeighborsArgs nb;
  auto* neigh = app.add_subcommand("neighbors", "Print the ranked neighbors of one character");
  neigh->add_option("char", nb.character, "Character or U+XXXX")->required();
  neigh->add_option("--ces", nb.ces, "ices, dces, eces or a table file");
  neigh->add_option("-k", nb.k, "Maximum neighbors to print")->check(CLI::PositiveNumber);

  PerturbArgs pt;
  auto* pert = app.add_subcommand("perturb", "Apply VIPER to a JSONL corpus or a single string");
  pert->add_option("--p", pt.p, "Per-character flip probability")->required()->check(CLI::Range(0.0, 1.0));
  pert->add_option("--ces", pt.ces, "ices, dces, eces or a table file");
  pert->add_option("--seed", pt.seed, "Base seed");
  pert->add_option("--weighting", pt.weighting, "similarity, inverse or uniform");
  pert->add_option("--random", pt.random, "Replace from this alphabet ('letters' or literal characters) instead of a CES");
  pert->add_option("--in", pt.in, "Input JSONL")->check(CLI::ExistingFile);
  pert->add_option("--out", pt.out, "Output JSONL");
  pert->add_option("--text", pt.text, "Perturb one string and print it");
  pert->add_option("--records", pt.records, "Write per-document perturbation records (JSONL)");

  RecoverArgs rc;
  auto* reco = app.add_subcommand("recover", "Map non-standard characters to their nearest standard character");
  reco->add_option("--standard", rc.standard, "default, letters-punct or chars:<list>");
  reco->add_option("--in", rc.in, "Input JSONL")->check(CLI::ExistingFile);
  reco->add_option("--out", rc.out, "Output JSONL");
  reco->add_option("--text", rc.text, "Recover one string and print it");
  reco->add_option("--cache", rc.cache, "Recovery table to load, or to create when missing");
  reco->add_option("--fallback", rc.fallback, "pass or replace:<char> for characters without a glyph");

  TrainArgs tr;
  auto* trn = app.add_subcommand("train", "Train the character n-gram toxicity classifier");
  trn->add_option("--in", tr.in, "Training JSONL (default: bundled toy corpus)")->check(CLI::ExistingFile);
  trn->add_option("--out,-o", tr.out, "Model JSON")->required();
  trn->add_option("--regime", tr.regime, "clean, at-visual or at-random");
  trn->add_option("--p-train", tr.p_train, "Perturbation level for adversarial training")->check(CLI::Range(0.0, 1.0));
  trn->add_option("--ces", tr.ces, "Replacement space for at-visual");
  trn->add_option("--random", tr.random, "Alphabet for at-random");
  trn->add_option("--weighting", tr.weighting, "similarity, inverse or uniform");
  trn->add_option("--seed", tr.seed, "Seed for perturbation and example order");
  trn->add_option("--epochs", tr.epochs, "SGD epochs")->check(CLI::PositiveNumber);

  EvaluateArgs ev;
  auto* eval = app.add_subcommand("evaluate", "Score prediction files or a saved model");
  eval->add_option("--pred-file", ev.pred_file, "JSONL rows {p, gold, pred, system?}")->check(CLI::ExistingFile);
  eval->add_option("--metric", ev.metric, "accuracy, micro-f1, auc or edit-distance");
  eval->add_option("--baseline", ev.baseline, "System whose scores deltas are taken against");
  eval->add_option("--model", ev.model, "Model JSON")->check(CLI::ExistingFile);
  eval->add_option("--in", ev.in, "Corpus for --model (default: bundled toy test set)")->check(CLI::ExistingFile);
  eval->add_option("--report", ev.report, "Report JSON (default: stdout)");

  DegradeArgs dg;
  auto* degr = app.add_subcommand("degrade", "Sweep perturbation levels with and without shielding");
  degr->add_option("--train", dg.train, "Training JSONL (default: bundled)")->check(CLI::ExistingFile);
  degr->add_option("--test", dg.test, "Test JSONL (default: bundled)")->check(CLI::ExistingFile);
  degr->add_option("--p-grid", dg.p_grid, "Comma separated levels, '...' expands a step");
  degr->add_option("--ces", dg.ces, "Attack space");
  degr->add_option("--at-ces", dg.at_ces, "Space used to perturb training data for AT");
  degr->add_option("--random", dg.random, "Alphabet for at-random");
  degr->add_option("--shielding", dg.shielding, "Any of none, rbr, at, at-random, at-rbr")->delimiter(',');
  degr->add_option("--weighting", dg.weighting, "Attack weighting");
  degr->add_option("--standard", dg.standard, "Standard set for RBR");
  degr->add_option("--model", dg.model, "Use a saved model (only none and rbr apply)")->check(CLI::ExistingFile);
  degr->add_option("--seed", dg.seed, "Base seed");
  degr->add_option("--p-train", dg.p_train, "AT perturbation level")->check(CLI::Range(0.0, 1.0));
  degr->add_option("--tl-threshold", dg.tl_threshold, "Minimum TL drop counted as a successful attack");
  degr->add_option("--epochs", dg.epochs, "SGD epochs")->check(CLI::PositiveNumber);
  degr->add_option("--report", dg.report, "Report JSON (default: stdout)");

  MakeCorpusArgs mc;
  auto* make = app.add_subcommand("make-corpus", "Generate the synthetic toxicity corpus");
  make->add_option("--count", mc.count, "Documents")->check(CLI::PositiveNumber);
  make->add_option("--seed", mc.seed, "Generator seed");
  make->add_option("--id-prefix", mc.id_prefix, "Document id prefix");
  make->add_option("--out,-o", mc.out, "Output JSONL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (!simd_name.empty()) simd::set_active_isa(simd::isa_from_string(simd_name));
    Context ctx(g);
    if (build->parsed()) return cmd_build_ces(ctx, bc);
    if (neigh->parsed()) return cmd_neighbors(ctx, nb);
    if (pert->parsed()) return cmd_perturb(ctx, pt);
    if (reco->parsed()) return cmd_recover(ctx, rc);
    if (trn->parsed()) return cmd_train(ctx, tr);
    if (eval->parsed()) return cmd_evaluate(ctx, ev);
    if (degr->parsed()) return cmd_degrade(ctx, dg);
    if (make->parsed()) return cmd_make_corpus(ctx, mc);
  } catch (const UnknownCharacter& e) {
    std::cerr << "viper: " << e.what() << "\n";
    return kExitUnknownCharacter;
  } catch (const std::exception& e) {
    std::cerr << "viper: error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
