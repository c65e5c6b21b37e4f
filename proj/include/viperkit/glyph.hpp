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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "viperkit/catalog.hpp"

namespace viperkit {

inline constexpr int kGlyphSide = 24;
inline constexpr std::size_t kEmbeddingDim = kGlyphSide * kGlyphSide;  // 576

// Row-major 24x24 grayscale rendering of one code point.
struct VisualEmbedding {
  char32_t codepoint = 0;
  std::array<std::uint8_t, kEmbeddingDim> pixels{};

  bool blank() const;
  std::uint64_t squared_norm() const;
  friend bool operator==(const VisualEmbedding&, const VisualEmbedding&) = default;
};

struct RenderParams {
  int side = kGlyphSide;
  // The font's ascent-to-descent span is mapped onto this many pixels.
  float pixel_height = static_cast<float>(kGlyphSide);
  bool antialias = true;
  bool shrink_to_fit = true;

  friend bool operator==(const RenderParams&, const RenderParams&) = default;
};

struct Neighbor {
  char32_t codepoint = 0;
  double weight = 0.0;  // higher means more similar
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// A loaded TrueType/OpenType font. Rendering is reentrant: the parsed font is
// never mutated after construction.
class FontRasterizer {
 public:
  explicit FontRasterizer(const std::filesystem::path& font_file, RenderParams params = {});
  ~FontRasterizer();
  FontRasterizer(FontRasterizer&&) noexcept;
  FontRasterizer& operator=(FontRasterizer&&) noexcept;

  bool has_glyph(char32_t cp) const;

  // Empty when the font maps `cp` to its missing-glyph slot. A present glyph
  // without ink (space) yields an all-zero embedding.
  std::optional<VisualEmbedding> render(char32_t cp) const;

  // "<file name>@fnv1a64:<hex>", stable across machines for the same bytes.
  const std::string& font_id() const { return font_id_; }
  const RenderParams& params() const { return params_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string font_id_;
  RenderParams params_;
};

// Resolves the font path: explicit argument, then $VIPERKIT_FONT, then the
// bundled DejaVu Sans Mono.
std::filesystem::path resolve_font_path(const std::string& explicit_path = {});

double cosine_similarity(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
double cosine_similarity(const VisualEmbedding& a, const VisualEmbedding& b);

// Immutable table of embeddings for one font and one set of render params.
// Rows are stored contiguously so similarity scans stream through memory.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  EmbeddingStore(std::vector<VisualEmbedding> embeddings, std::string font_id,
                 RenderParams params);

  std::size_t size() const { return codepoints_.size(); }
  bool empty() const { return codepoints_.empty(); }
  bool contains(char32_t cp) const { return index_of(cp) >= 0; }
  // Present and with nonzero ink.
  bool usable(char32_t cp) const;
  std::optional<VisualEmbedding> get(char32_t cp) const;
  std::span<const std::uint8_t> row(char32_t cp) const;  // throws UnknownCodepoint

  const std::vector<char32_t>& codepoints() const { return codepoints_; }
  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::uint64_t squared_norm_at(std::size_t i) const { return norms_[i]; }
  std::ptrdiff_t index_of(char32_t cp) const;

  const std::string& font_id() const { return font_id_; }
  const RenderParams& params() const { return params_; }

  double similarity(char32_t a, char32_t b) const;

  // `codepoint <TAB> 576 integers` per line, plus `<path>.json` holding the
  // font id and render parameters.
  void save(const std::filesystem::path& path) const;
  static EmbeddingStore load(const std::filesystem::path& path);

 private:
  std::vector<char32_t> codepoints_;
  std::vector<std::uint8_t> pixels_;
  std::vector<std::uint64_t> norms_;
  std::vector<std::int32_t> index_;
  std::string font_id_;
  RenderParams params_;
};

struct StoreBuildOptions {
  char32_t max_codepoint = kDefaultMaxCodepoint;
  unsigned threads = 1;
};

// Renders every code point below max_codepoint that the font covers, skipping
// the C0 and C1 control ranges.
EmbeddingStore build_store(const FontRasterizer& font, const StoreBuildOptions& options = {});

// Top-k by descending cosine, ties by ascending code point. Excludes the query
// and blank glyphs. Throws UnknownCodepoint / ZeroVector for a missing or
// blank query.
std::vector<Neighbor> nearest_neighbors(char32_t cp, const EmbeddingStore& store,
                                        std::size_t k = 20);

}  // namespace viperkit
