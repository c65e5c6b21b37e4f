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

#include "viperkit/toy_corpus.hpp"

#include <array>
#include <string>
#include <string_view>

#include "viperkit/metrics.hpp"
#include "viperkit/rng.hpp"

namespace viperkit {

namespace {

enum Label : unsigned { kToxic = 1, kSevere = 2, kObscene = 4, kThreat = 8, kInsult = 16, kIdentity = 32 };

struct SlotWord {
  std::string_view word;
  unsigned labels;
};

struct Template {
  std::string_view pattern;  // "{S}" subject, "{W}" slot word
  std::vector<SlotWord> toxic;
  std::vector<SlotWord> neutral;
};

const std::array<std::string_view, 8> kSubjects = {"your friend", "that guy", "this editor", "the author",
                                                   "that user", "this admin", "the reviewer", "that bot"};

const std::vector<Template>& templates() {
  static const std::vector<Template> t = {
      {"{S} is such a {W} and everyone knows it",
       {{"idiot", kInsult}, {"jerk", kInsult}, {"troll", kInsult}, {"bastard", kInsult | kObscene}},
       {{"genius", 0}, {"friend", 0}, {"expert", 0}, {"teacher", 0}}},
      {"honestly {S} is so {W} , please stop editing this page",
       {{"stupid", kInsult}, {"ugly", kInsult}, {"fat", kInsult}, {"arrogant", kInsult}},
       {{"clever", 0}, {"kind", 0}, {"helpful", 0}, {"careful", 0}}},
      {"why would {S} write such {W} about the history section ?",
       {{"shit", kObscene}, {"crap", kObscene}, {"stupid things", kInsult}},
       {{"details", 0}, {"notes", 0}, {"good things", 0}}},
      {"i will {W} {S} if this gets reverted again",
       {{"kill", kThreat}, {"hurt", kThreat}, {"destroy", kThreat}},
       {{"thank", 0}, {"email", 0}, {"call", 0}}},
      {"i {W} people like {S} on this wiki",
       {{"hate", kIdentity}, {"despise", kIdentity}},
       {{"like", 0}, {"admire", 0}, {"respect", 0}}},
      {"{S} can {W} , the sources were fine",
       {{"suck it", kObscene}, {"go die", kThreat}},
       {{"relax", 0}, {"check again", 0}}},
      {"thanks for the edit , {S} made the article {W}",
       {{"worse you idiot", kInsult}},
       {{"better", 0}, {"clearer", 0}, {"shorter", 0}}},
  };
  return t;
}

std::string fill(std::string_view pattern, std::string_view subject, std::string_view word) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size();) {
    if (pattern.substr(i, 3) == "{S}") {
      out += subject;
      i += 3;
    } else if (pattern.substr(i, 3) == "{W}") {
      out += word;
      i += 3;
    } else {
      out.push_back(pattern[i++]);
    }
  }
  return out;
}

}  // namespace

std::vector<nlohmann::json> generate_toy_corpus(std::size_t count, std::uint64_t seed,
                                                const std::string& id_prefix) {
  Rng rng(seed);
  std::vector<nlohmann::json> docs;
  docs.reserve(count);
  const auto& tpl = templates();
  for (std::size_t n = 0; n < count; ++n) {
    const std::size_t clauses = 1 + (rng.uniform() < 0.35 ? 1 : 0);
    std::string text;
    unsigned labels = 0;
    std::size_t toxic_clauses = 0;
    for (std::size_t c = 0; c < clauses; ++c) {
      const Template& t = tpl[rng.below(tpl.size())];
      const std::string_view subject = kSubjects[rng.below(kSubjects.size())];
      const bool toxic = rng.uniform() < 0.4;
      const auto& pool = toxic ? t.toxic : t.neutral;
      const SlotWord& w = pool[rng.below(pool.size())];
      if (!text.empty()) text += " . ";
      text += fill(t.pattern, subject, w.word);
      if (toxic) {
        labels |= w.labels | kToxic;
        ++toxic_clauses;
      }
    }
    if (toxic_clauses >= 2 && (labels & (kThreat | kObscene))) labels |= kSevere;

    std::vector<int> vec(kToxicityClassCount);
    for (std::size_t k = 0; k < kToxicityClassCount; ++k) vec[k] = (labels >> k) & 1u;
    docs.push_back({{"id", id_prefix + "-" + std::to_string(n)}, {"text", text}, {"labels", vec}});
  }
  return docs;
}

}  // namespace viperkit
