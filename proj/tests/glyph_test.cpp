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

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "support.hpp"
#include "viperkit/error.hpp"
#include "viperkit/glyph.hpp"
#include "viperkit/io.hpp"

namespace viperkit {
namespace {

using testing::bundled_font;
using testing::bundled_store;

// Independent cosine in double precision.
double OracleCosine(const VisualEmbedding& a, const VisualEmbedding& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < kEmbeddingDim; ++i) {
    dot += double(a.pixels[i]) * b.pixels[i];
    na += double(a.pixels[i]) * a.pixels[i];
    nb += double(b.pixels[i]) * b.pixels[i];
  }
  return dot / std::sqrt(na * nb);
}

TEST(FontRasterizerTest, RendersDeterministically) {
  const auto first = bundled_font().render(U'a');
  const FontRasterizer again(resolve_font_path());
  const auto second = again.render(U'a');
  ASSERT_TRUE(first && second);
  EXPECT_EQ(*first, *second);
  EXPECT_EQ(first->pixels.size(), 576u);
  EXPECT_FALSE(first->blank());
}

TEST(FontRasterizerTest, SpaceIsBlankAndMissingGlyphIsEmpty) {
  const auto space = bundled_font().render(U' ');
  ASSERT_TRUE(space.has_value());
  EXPECT_TRUE(space->blank());
  EXPECT_EQ(space->squared_norm(), 0u);
  // Not covered by the bundled font.
  EXPECT_FALSE(bundled_font().has_glyph(0x1EA3));
  EXPECT_FALSE(bundled_font().render(0x1EA3).has_value());
}

TEST(FontRasterizerTest, FontIdHasDigest) {
  const std::string& id = bundled_font().font_id();
  EXPECT_EQ(id.rfind("DejaVuSansMono.ttf@fnv1a64:", 0), 0u);
  EXPECT_EQ(id, "DejaVuSansMono.ttf@" + file_digest(resolve_font_path()));
}

TEST(FontRasterizerTest, BadFontFileThrows) {
  const auto dir = testing::scratch_dir();
  write_file_atomic(dir / "junk.ttf", "not a font");
  EXPECT_THROW(FontRasterizer(dir / "junk.ttf"), FontLoadError);
  EXPECT_THROW(FontRasterizer(dir / "absent.ttf"), FontLoadError);
}

TEST(CosineTest, MatchesOracleAndIsSymmetric) {
  std::mt19937 rng(5);
  const auto& cps = bundled_store().codepoints();
  std::uniform_int_distribution<std::size_t> pick(0, cps.size() - 1);
  for (int i = 0; i < 200; ++i) {
    const char32_t a = cps[pick(rng)], b = cps[pick(rng)];
    if (!bundled_store().usable(a) || !bundled_store().usable(b)) continue;
    const auto ea = *bundled_store().get(a), eb = *bundled_store().get(b);
    EXPECT_NEAR(cosine_similarity(ea, eb), OracleCosine(ea, eb), 1e-12);
    EXPECT_DOUBLE_EQ(bundled_store().similarity(a, b), bundled_store().similarity(b, a));
  }
}

TEST(CosineTest, SelfSimilarityIsOne) {
  for (char32_t c : {U'a', U'Q', U'ĉ', U'@', char32_t{0x4E00}})
    if (bundled_store().usable(c)) {
      EXPECT_NEAR(bundled_store().similarity(c, c), 1.0, 1e-9);
    }
}

TEST(CosineTest, ZeroVectorThrows) {
  const auto space = *bundled_font().render(U' ');
  const auto a = *bundled_font().render(U'a');
  EXPECT_THROW(cosine_similarity(space, a), ZeroVector);
}

TEST(CosineTest, VisualOrdering) {
  const EmbeddingStore& s = bundled_store();
  // Latin and Cyrillic 'a' share one outline in the bundled font.
  EXPECT_NEAR(s.similarity(U'a', 0x430), 1.0, 1e-9);
  EXPECT_GT(s.similarity(U'a', U'à'), s.similarity(U'a', U'|'));
  EXPECT_GT(s.similarity(U'O', U'0'), s.similarity(U'O', U'-'));
}

TEST(EmbeddingStoreTest, CoversRenderableCodePointsBelowBound) {
  const EmbeddingStore& s = bundled_store();
  EXPECT_GT(s.size(), 2500u);
  EXPECT_LE(s.size(), 30000u);
  EXPECT_TRUE(s.contains(U'a'));
  EXPECT_TRUE(s.contains(U' '));
  EXPECT_FALSE(s.usable(U' '));
  EXPECT_FALSE(s.contains(0x1EA3));
  EXPECT_FALSE(s.contains(0x7F));
  for (char32_t cp : s.codepoints()) ASSERT_LT(cp, kDefaultMaxCodepoint);
  EXPECT_TRUE(std::is_sorted(s.codepoints().begin(), s.codepoints().end()));
  EXPECT_THROW(s.row(0x1EA3), UnknownCodepoint);
}

TEST(EmbeddingStoreTest, SaveLoadRoundTrip) {
  const auto path = testing::scratch_dir() / "store.tsv";
  bundled_store().save(path);
  EXPECT_TRUE(std::filesystem::exists(path.string() + ".json"));
  const EmbeddingStore loaded = EmbeddingStore::load(path);
  EXPECT_EQ(loaded.codepoints(), bundled_store().codepoints());
  EXPECT_TRUE(std::equal(loaded.pixels().begin(), loaded.pixels().end(), bundled_store().pixels().begin()));
  EXPECT_EQ(loaded.font_id(), bundled_store().font_id());
}

TEST(EmbeddingStoreTest, ParallelBuildMatchesSerial) {
  const EmbeddingStore serial = build_store(bundled_font(), {0x600, 1});
  const EmbeddingStore parallel = build_store(bundled_font(), {0x600, 4});
  EXPECT_EQ(serial.codepoints(), parallel.codepoints());
  EXPECT_TRUE(std::equal(serial.pixels().begin(), serial.pixels().end(), parallel.pixels().begin()));
}

TEST(NearestNeighborsTest, RankedWithTieBreakOnCodePoint) {
  const auto list = nearest_neighbors(U'a', bundled_store(), 20);
  ASSERT_EQ(list.size(), 20u);
  std::set<char32_t> seen;
  for (std::size_t i = 0; i < list.size(); ++i) {
    EXPECT_NE(list[i].codepoint, U'a');
    EXPECT_TRUE(bundled_store().usable(list[i].codepoint));
    EXPECT_TRUE(seen.insert(list[i].codepoint).second);
    if (i > 0) {
      EXPECT_GE(list[i - 1].weight, list[i].weight);
      if (list[i - 1].weight == list[i].weight) {
        EXPECT_LT(list[i - 1].codepoint, list[i].codepoint);
      }
    }
  }
  EXPECT_EQ(list.front().codepoint, char32_t{0x430});
}

TEST(NearestNeighborsTest, MatchesBruteForce) {
  const EmbeddingStore& s = bundled_store();
  for (char32_t q : {U'e', U'K', U'7'}) {
    std::vector<Neighbor> all;
    for (char32_t c : s.codepoints())
      if (c != q && c >= 0x20 && s.usable(c)) all.push_back({c, OracleCosine(*s.get(q), *s.get(c))});
    std::sort(all.begin(), all.end(), [](const Neighbor& x, const Neighbor& y) {
      return x.weight != y.weight ? x.weight > y.weight : x.codepoint < y.codepoint;
    });
    const auto got = nearest_neighbors(q, s, 10);
    ASSERT_EQ(got.size(), 10u);
    for (std::size_t i = 0; i < 10; ++i) {
      EXPECT_EQ(got[i].codepoint, all[i].codepoint) << "query " << static_cast<unsigned>(q) << " rank " << i;
      EXPECT_NEAR(got[i].weight, all[i].weight, 1e-12);
    }
  }
}

TEST(NearestNeighborsTest, Errors) {
  EXPECT_THROW(nearest_neighbors(0x1EA3, bundled_store()), UnknownCodepoint);
  EXPECT_THROW(nearest_neighbors(U' ', bundled_store()), ZeroVector);
  EXPECT_TRUE(nearest_neighbors(U'a', bundled_store(), 0).empty());
}

}  // namespace
}  // namespace viperkit
