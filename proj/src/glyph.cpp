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

#include "viperkit/glyph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "viperkit/error.hpp"
#include "viperkit/io.hpp"
#include "viperkit/simd/dot.hpp"

#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wunused-function"
#pragma GCC diagnostic ignored "-Wsign-compare"
#pragma GCC diagnostic ignored "-Wmissing-field-initializers"
#define STB_TRUETYPE_IMPLEMENTATION
#define STBTT_STATIC
#include <stb_truetype.h>
#pragma GCC diagnostic pop

namespace viperkit {

bool VisualEmbedding::blank() const {
  return std::all_of(pixels.begin(), pixels.end(), [](std::uint8_t v) { return v == 0; });
}

std::uint64_t VisualEmbedding::squared_norm() const {
  return simd::dot_u8(pixels, pixels);
}

// ---------------------------------------------------------------------------
// FontRasterizer

struct FontRasterizer::Impl {
  std::string bytes;
  stbtt_fontinfo info{};
  float scale = 0.0f;
  int baseline = 0;
};

FontRasterizer::FontRasterizer(const std::filesystem::path& font_file, RenderParams params)
    : impl_(std::make_unique<Impl>()), params_(params) {
  if (params_.side != kGlyphSide)
    throw FontLoadError("only " + std::to_string(kGlyphSide) + "px canvases are supported");
  try {
    impl_->bytes = read_file(font_file);
  } catch (const FileNotFound&) {
    throw FontLoadError("cannot read font file: " + font_file.string());
  }
  const auto* data = reinterpret_cast<const unsigned char*>(impl_->bytes.data());
  const int offset = stbtt_GetFontOffsetForIndex(data, 0);
  if (offset < 0 || !stbtt_InitFont(&impl_->info, data, offset))
    throw FontLoadError("not a usable TrueType/OpenType font: " + font_file.string());

  int ascent = 0, descent = 0, line_gap = 0;
  stbtt_GetFontVMetrics(&impl_->info, &ascent, &descent, &line_gap);
  if (ascent - descent <= 0) throw FontLoadError("font has no vertical extent: " + font_file.string());
  impl_->scale = stbtt_ScaleForPixelHeight(&impl_->info, params_.pixel_height);
  impl_->baseline = static_cast<int>(std::lround(ascent * impl_->scale));
  impl_->baseline = std::clamp(impl_->baseline, 1, params_.side - 1);

  font_id_ = font_file.filename().string() + "@fnv1a64:" + hex64(fnv1a64(impl_->bytes));
}

FontRasterizer::~FontRasterizer() = default;
FontRasterizer::FontRasterizer(FontRasterizer&&) noexcept = default;
FontRasterizer& FontRasterizer::operator=(FontRasterizer&&) noexcept = default;

bool FontRasterizer::has_glyph(char32_t cp) const {
  return stbtt_FindGlyphIndex(&impl_->info, static_cast<int>(cp)) != 0;
}

std::optional<VisualEmbedding> FontRasterizer::render(char32_t cp) const {
  const stbtt_fontinfo* info = &impl_->info;
  const int glyph = stbtt_FindGlyphIndex(info, static_cast<int>(cp));
  if (glyph == 0) return std::nullopt;

  VisualEmbedding out;
  out.codepoint = cp;
  const int side = params_.side;
  const int baseline = impl_->baseline;
  float scale = impl_->scale;

  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  stbtt_GetGlyphBitmapBox(info, glyph, scale, scale, &x0, &y0, &x1, &y1);
  if (x1 <= x0 || y1 <= y0) return out;

  // Oversized glyphs shrink around the baseline instead of being cropped.
  if (params_.shrink_to_fit) {
    float factor = 1.0f;
    if (x1 - x0 > side) factor = std::min(factor, static_cast<float>(side) / static_cast<float>(x1 - x0));
    if (-y0 > baseline) factor = std::min(factor, static_cast<float>(baseline) / static_cast<float>(-y0));
    if (y1 > side - baseline)
      factor = std::min(factor, static_cast<float>(side - baseline) / static_cast<float>(y1));
    if (factor < 1.0f) scale *= factor;
  }

  int w = 0, h = 0, xoff = 0, yoff = 0;
  unsigned char* bitmap = stbtt_GetGlyphBitmap(info, scale, scale, glyph, &w, &h, &xoff, &yoff);
  if (bitmap == nullptr) {
    if (w == 0 || h == 0) return out;
    throw RenderError(cp);
  }

  // Glyphs sit on the pen origin of a centered advance box so accents do not shift stems.
  int advance = 0, lsb = 0;
  stbtt_GetGlyphHMetrics(info, glyph, &advance, &lsb);
  const int pen = static_cast<int>(std::lround((static_cast<float>(side) - static_cast<float>(advance) * scale) / 2.0f));
  int left = pen + xoff;
  if (left < 0 || left + w > side) left = (side - w) / 2;
  const int top = baseline + yoff;
  for (int y = 0; y < h; ++y) {
    const int cy = top + y;
    if (cy < 0 || cy >= side) continue;
    for (int x = 0; x < w; ++x) {
      const int cx = left + x;
      if (cx < 0 || cx >= side) continue;
      std::uint8_t v = bitmap[y * w + x];
      if (!params_.antialias) v = v >= 128 ? 255 : 0;
      out.pixels[static_cast<std::size_t>(cy * side + cx)] = v;
    }
  }
  stbtt_FreeBitmap(bitmap, nullptr);
  return out;
}

std::filesystem::path resolve_font_path(const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* env = std::getenv("VIPERKIT_FONT"); env && *env) return env;
  return data_dir() / "fonts" / "DejaVuSansMono.ttf";
}

// ---------------------------------------------------------------------------
// Similarity

double cosine_similarity(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  const std::uint64_t na = simd::dot_u8(a, a);
  const std::uint64_t nb = simd::dot_u8(b, b);
  if (na == 0 || nb == 0) throw ZeroVector();
  const double dot = static_cast<double>(simd::dot_u8(a, b));
  return dot / std::sqrt(static_cast<double>(na) * static_cast<double>(nb));
}

double cosine_similarity(const VisualEmbedding& a, const VisualEmbedding& b) {
  return cosine_similarity(std::span<const std::uint8_t>(a.pixels),
                           std::span<const std::uint8_t>(b.pixels));
}

// ---------------------------------------------------------------------------
// EmbeddingStore

EmbeddingStore::EmbeddingStore(std::vector<VisualEmbedding> embeddings, std::string font_id,
                               RenderParams params)
    : font_id_(std::move(font_id)), params_(params) {
  std::sort(embeddings.begin(), embeddings.end(),
            [](const VisualEmbedding& a, const VisualEmbedding& b) { return a.codepoint < b.codepoint; });
  for (std::size_t i = 1; i < embeddings.size(); ++i)
    if (embeddings[i].codepoint == embeddings[i - 1].codepoint)
      throw DuplicateKey("duplicate embedding for code point " + std::to_string(embeddings[i].codepoint));

  codepoints_.reserve(embeddings.size());
  pixels_.reserve(embeddings.size() * kEmbeddingDim);
  norms_.reserve(embeddings.size());
  for (const auto& e : embeddings) {
    codepoints_.push_back(e.codepoint);
    pixels_.insert(pixels_.end(), e.pixels.begin(), e.pixels.end());
    norms_.push_back(e.squared_norm());
  }
  if (!codepoints_.empty()) {
    index_.assign(static_cast<std::size_t>(codepoints_.back()) + 1, -1);
    for (std::size_t i = 0; i < codepoints_.size(); ++i)
      index_[codepoints_[i]] = static_cast<std::int32_t>(i);
  }
}

std::ptrdiff_t EmbeddingStore::index_of(char32_t cp) const {
  return cp < index_.size() ? index_[cp] : -1;
}

bool EmbeddingStore::usable(char32_t cp) const {
  const auto i = index_of(cp);
  return i >= 0 && norms_[static_cast<std::size_t>(i)] != 0;
}

std::span<const std::uint8_t> EmbeddingStore::row(char32_t cp) const {
  const auto i = index_of(cp);
  if (i < 0) throw UnknownCodepoint(cp);
  return std::span<const std::uint8_t>(pixels_).subspan(static_cast<std::size_t>(i) * kEmbeddingDim,
                                                        kEmbeddingDim);
}

std::optional<VisualEmbedding> EmbeddingStore::get(char32_t cp) const {
  if (!contains(cp)) return std::nullopt;
  VisualEmbedding e;
  e.codepoint = cp;
  const auto r = row(cp);
  std::copy(r.begin(), r.end(), e.pixels.begin());
  return e;
}

double EmbeddingStore::similarity(char32_t a, char32_t b) const {
  return cosine_similarity(row(a), row(b));
}

namespace {

nlohmann::json params_to_json(const RenderParams& p) {
  return {{"side", p.side},
          {"pixel_height", p.pixel_height},
          {"antialias", p.antialias},
          {"shrink_to_fit", p.shrink_to_fit}};
}

RenderParams params_from_json(const nlohmann::json& j) {
  RenderParams p;
  p.side = j.at("side").get<int>();
  p.pixel_height = j.at("pixel_height").get<float>();
  p.antialias = j.at("antialias").get<bool>();
  p.shrink_to_fit = j.at("shrink_to_fit").get<bool>();
  return p;
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  std::filesystem::path p = path;
  p += ".json";
  return p;
}

}  // namespace

void EmbeddingStore::save(const std::filesystem::path& path) const {
  std::string out;
  out.reserve(codepoints_.size() * kEmbeddingDim * 3);
  char buf[16];
  for (std::size_t i = 0; i < codepoints_.size(); ++i) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<unsigned>(codepoints_[i]));
    out.append(buf, end);
    out.push_back('\t');
    for (std::size_t k = 0; k < kEmbeddingDim; ++k) {
      if (k) out.push_back(' ');
      auto [e2, ec2] = std::to_chars(buf, buf + sizeof buf, unsigned{pixels_[i * kEmbeddingDim + k]});
      out.append(buf, e2);
    }
    out.push_back('\n');
  }
  nlohmann::json meta = {{"format", "viperkit-embeddings"},
                         {"version", 1},
                         {"font_id", font_id_},
                         {"render", params_to_json(params_)},
                         {"dim", kEmbeddingDim},
                         {"count", codepoints_.size()}};
  write_file_atomic(sidecar_path(path), meta.dump(2) + "\n");
  write_file_atomic(path, out);
}

EmbeddingStore EmbeddingStore::load(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(read_file(sidecar_path(path)));
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad embedding sidecar for " + path.string() + ": " + e.what());
  }

  std::vector<VisualEmbedding> embeddings;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string::npos) eol = content.size();
    const std::string_view line(content.data() + pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;

    VisualEmbedding e;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    unsigned cp = 0;
    auto r = std::from_chars(p, end, cp);
    if (r.ec != std::errc() || r.ptr == end || *r.ptr != '\t') throw MalformedRecord(line_no, "bad code point");
    p = r.ptr + 1;
    e.codepoint = cp;
    for (std::size_t k = 0; k < kEmbeddingDim; ++k) {
      while (p < end && *p == ' ') ++p;
      unsigned v = 0;
      r = std::from_chars(p, end, v);
      if (r.ec != std::errc() || v > 255) throw MalformedRecord(line_no, "bad pixel value");
      e.pixels[k] = static_cast<std::uint8_t>(v);
      p = r.ptr;
    }
    while (p < end && *p == ' ') ++p;
    if (p != end) throw MalformedRecord(line_no, "expected exactly 576 pixel values");
    embeddings.push_back(e);
  }
  try {
    return EmbeddingStore(std::move(embeddings), meta.at("font_id").get<std::string>(),
                          params_from_json(meta.at("render")));
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad embedding sidecar for " + path.string() + ": " + e.what());
  }
}

EmbeddingStore build_store(const FontRasterizer& font, const StoreBuildOptions& options) {
  std::vector<char32_t> candidates;
  for (char32_t cp = 0x20; cp < options.max_codepoint; ++cp) {
    if (cp >= 0x7F && cp < 0xA0) continue;
    if (font.has_glyph(cp)) candidates.push_back(cp);
  }
  std::vector<std::optional<VisualEmbedding>> rendered(candidates.size());
  parallel_for(candidates.size(), options.threads,
               [&](std::size_t i) { rendered[i] = font.render(candidates[i]); });

  std::vector<VisualEmbedding> embeddings;
  embeddings.reserve(rendered.size());
  for (auto& r : rendered)
    if (r) embeddings.push_back(*r);
  return EmbeddingStore(std::move(embeddings), font.font_id(), font.params());
}

std::vector<Neighbor> nearest_neighbors(char32_t cp, const EmbeddingStore& store, std::size_t k) {
  const auto qi = store.index_of(cp);
  if (qi < 0) throw UnknownCodepoint(cp);
  const std::uint64_t qn = store.squared_norm_at(static_cast<std::size_t>(qi));
  if (qn == 0) throw ZeroVector();
  if (k == 0) return {};

  const std::size_t n = store.size();
  std::vector<std::uint32_t> dots(n);
  simd::dot_u8_rows(store.row(cp), store.pixels(), dots);

  std::vector<Neighbor> all;
  all.reserve(n);
  const auto& cps = store.codepoints();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t ni = store.squared_norm_at(i);
    if (i == static_cast<std::size_t>(qi) || ni == 0 || cps[i] < 0x20) continue;
    const double sim = static_cast<double>(dots[i]) /
                       std::sqrt(static_cast<double>(qn) * static_cast<double>(ni));
    all.push_back({cps[i], sim});
  }
  const auto better = [](const Neighbor& a, const Neighbor& b) {
    return a.weight != b.weight ? a.weight > b.weight : a.codepoint < b.codepoint;
  };
  const std::size_t take = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(), better);
  all.resize(take);
  return all;
}

}  // namespace viperkit
