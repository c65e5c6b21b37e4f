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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "viperkit/glyph.hpp"
#include "viperkit/standard_set.hpp"

namespace viperkit {

// What happens to a non-standard character that has no usable embedding.
struct RecoveryFallback {
  std::optional<char32_t> replacement;  // empty: pass through unchanged
  static RecoveryFallback pass_through() { return {}; }
  static RecoveryFallback replace_with(char32_t c) { return {c}; }
};

struct StandardMapping {
  char32_t standard = 0;
  double similarity = 0.0;
  friend bool operator==(const StandardMapping&, const StandardMapping&) = default;
};

// Precomputed nearest-standard-character map for one (store, standard set),
// so recovery costs one hash lookup per character.
class RecoveryTable {
 public:
  RecoveryTable() = default;
  // Throws MissingStandardEmbedding if a non-whitespace standard member has
  // no usable glyph in the store.
  RecoveryTable(const EmbeddingStore& store, StandardSet standard, unsigned threads = 1);

  const StandardSet& standard() const { return standard_; }
  const std::string& font_id() const { return font_id_; }
  std::optional<StandardMapping> lookup(char32_t cp) const;
  std::size_t size() const { return map_.size(); }

  std::u32string recover(std::u32string_view text,
                         RecoveryFallback fallback = RecoveryFallback::pass_through()) const;
  std::string recover_utf8(std::string_view text,
                           RecoveryFallback fallback = RecoveryFallback::pass_through()) const;

  // `#viperkit-rbr` header, then `codepoint <TAB> standard_codepoint <TAB> similarity`.
  std::string to_tsv() const;
  static RecoveryTable from_tsv(std::string_view content);
  void save(const std::filesystem::path& path) const;
  static RecoveryTable load(const std::filesystem::path& path);

 private:
  StandardSet standard_;
  std::string font_id_;
  std::unordered_map<char32_t, StandardMapping> map_;
};

// Convenience form that builds the table on every call.
std::u32string recover(std::u32string_view text, const EmbeddingStore& store,
                       const StandardSet& standard,
                       RecoveryFallback fallback = RecoveryFallback::pass_through());

}  // namespace viperkit
