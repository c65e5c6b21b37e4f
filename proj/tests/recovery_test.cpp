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

#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "support.hpp"
#include "viperkit/error.hpp"
#include "viperkit/perturb.hpp"
#include "viperkit/recovery.hpp"
#include "viperkit/utf8.hpp"

namespace viperkit {
namespace {

using testing::bundled_store;
using testing::default_recovery;

double OracleCosine(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += double(a[i]) * b[i];
    na += double(a[i]) * a[i];
    nb += double(b[i]) * b[i];
  }
  return dot / std::sqrt(na * nb);
}

TEST(RecoveryTest, StandardTextIsUnchanged) {
  const std::string text = "Hello, World! 0123456789 ~`@#$%^&*()_+-={}[]|\\:;\"'<>?,./";
  EXPECT_EQ(default_recovery().recover_utf8(text), text);
}

TEST(RecoveryTest, HomoglyphsAndDiacritics) {
  EXPECT_EQ(default_recovery().recover_utf8("\xD0\xB0"), "a");  // Cyrillic small a
  EXPECT_EQ(default_recovery().recover_utf8("ĉâŵ"), "caw");
  const auto m = default_recovery().lookup(0x430);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->standard, U'a');
  EXPECT_NEAR(m->similarity, 1.0, 1e-9);
}

TEST(RecoveryTest, EcesPairsRecoverExactly) {
  for (const auto& [letter, list] : testing::eces_table().entries()) {
    const auto m = default_recovery().lookup(list[0].codepoint);
    ASSERT_TRUE(m.has_value()) << utf8::encode(list[0].codepoint);
    EXPECT_EQ(m->standard, letter) << utf8::encode(list[0].codepoint);
  }
}

TEST(RecoveryTest, MatchesBruteForceArgmax) {
  const EmbeddingStore& s = bundled_store();
  const auto targets = StandardSet::default_set().targets();
  std::mt19937 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, s.codepoints().size() - 1);
  int checked = 0;
  while (checked < 300) {
    const char32_t cp = s.codepoints()[pick(rng)];
    if (!s.usable(cp) || StandardSet::default_set().contains(cp)) continue;
    char32_t best = 0;
    double best_sim = -1.0;
    for (char32_t t : targets) {
      const double sim = OracleCosine(s.row(cp), s.row(t));
      if (sim > best_sim) {
        best = t;
        best_sim = sim;
      }
    }
    const auto m = default_recovery().lookup(cp);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->standard, best) << format_codepoint(cp);
    EXPECT_NEAR(m->similarity, best_sim, 1e-12);
    ++checked;
  }
}

TEST(RecoveryTest, IdempotentOnPerturbedText) {
  const std::string text = "The quick brown fox jumps over the lazy dog, again and again!";
  for (const NeighborTable* space : {&testing::ices_table(), &testing::dces_table()}) {
    PerturbationConfig c;
    c.p = 0.7;
    c.space = space;
    c.seed = 4;
    const std::string once = default_recovery().recover_utf8(perturb_utf8(text, c));
    EXPECT_EQ(default_recovery().recover_utf8(once), once);
    EXPECT_EQ(utf8::decode(once).size(), utf8::decode(text).size());
  }
}

TEST(RecoveryTest, GlyphlessCharactersUseFallback) {
  const std::u32string text = {U'x', 0x1EA3, U' ', 0xA0};
  EXPECT_EQ(default_recovery().recover(text), text);
  EXPECT_EQ(default_recovery().recover(text, RecoveryFallback::replace_with(U'?')),
            (std::u32string{U'x', U'?', U' ', U'?'}));
  EXPECT_FALSE(default_recovery().lookup(0x1EA3).has_value());
}

TEST(RecoveryTest, WhitespaceIsNeverATarget) {
  for (const auto& cp : bundled_store().codepoints()) {
    const auto m = default_recovery().lookup(cp);
    if (m) {
      ASSERT_FALSE(is_whitespace(m->standard));
    }
  }
}

TEST(RecoveryTest, FreeFunctionMatchesTable) {
  const std::u32string text = U"ĉâŵ ∂ ⅰ";
  EXPECT_EQ(recover(text, bundled_store(), StandardSet::default_set()), default_recovery().recover(text));
}

TEST(RecoveryTest, CustomStandardSet) {
  const RecoveryTable t(bundled_store(), StandardSet::from_name("chars:lI"));
  for (char32_t cp : bundled_store().codepoints()) {
    const auto m = t.lookup(cp);
    if (m) {
      ASSERT_TRUE(m->standard == U'l' || m->standard == U'I');
    }
  }
  for (char32_t q : {U'1', U'|', U'i'}) {
    const char32_t expected = bundled_store().similarity(q, U'I') >= bundled_store().similarity(q, U'l') ? U'I' : U'l';
    EXPECT_EQ(t.recover(std::u32string(1, q)), std::u32string(1, expected));
  }
  EXPECT_THROW(RecoveryTable(bundled_store(), StandardSet::from_name("chars:\xE1\xBA\xA3")),
               MissingStandardEmbedding);
}

TEST(RecoveryTest, CacheRoundTrip) {
  const std::string tsv = default_recovery().to_tsv();
  const RecoveryTable back = RecoveryTable::from_tsv(tsv);
  EXPECT_EQ(back.to_tsv(), tsv);
  EXPECT_EQ(back.font_id(), default_recovery().font_id());
  EXPECT_EQ(back.standard().members(), default_recovery().standard().members());
  EXPECT_EQ(back.lookup(0x430), default_recovery().lookup(0x430));
  const auto path = testing::scratch_dir() / "rbr.tsv";
  default_recovery().save(path);
  EXPECT_EQ(RecoveryTable::load(path).size(), default_recovery().size());
  EXPECT_THROW(RecoveryTable::from_tsv("97\t97\t1\n"), MalformedRecord);
}

TEST(RecoveryTest, ParallelBuildMatchesSerial) {
  const RecoveryTable serial(bundled_store(), StandardSet::default_set(), 1);
  const RecoveryTable parallel(bundled_store(), StandardSet::default_set(), 4);
  EXPECT_EQ(serial.to_tsv(), parallel.to_tsv());
}

}  // namespace
}  // namespace viperkit
