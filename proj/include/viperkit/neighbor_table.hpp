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

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "viperkit/catalog.hpp"
#include "viperkit/glyph.hpp"

namespace viperkit {

inline constexpr std::size_t kMaxNeighbors = 20;

// ICES: rendered-glyph cosine neighbors. DCES: same base letter and case in
// the Unicode name. ECES: one curated diacritic variant per a-zA-Z letter.
enum class SpaceKind { kIces, kDces, kEces };

std::string_view to_string(SpaceKind kind);
SpaceKind space_kind_from_string(std::string_view name);

// A materialized character embedding space: for each code point, a ranked
// list of visually similar replacements. Immutable once built.
class NeighborTable {
 public:
  NeighborTable() = default;
  NeighborTable(SpaceKind kind, std::string source,
                std::map<char32_t, std::vector<Neighbor>> entries);

  SpaceKind kind() const { return kind_; }
  const std::string& source() const { return source_; }
  const std::map<char32_t, std::vector<Neighbor>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Empty for code points without an entry; never throws.
  std::span<const Neighbor> neighbors(char32_t cp) const;

  // Header line `#viperkit-ces <TAB> space_kind=<KIND> <TAB> source=<id>`,
  // then `codepoint <TAB> neighbor:weight,neighbor:weight,...`.
  std::string to_tsv() const;
  static NeighborTable from_tsv(std::string_view content);
  void save(const std::filesystem::path& path) const;
  static NeighborTable load(const std::filesystem::path& path);

  friend bool operator==(const NeighborTable&, const NeighborTable&) = default;

 private:
  SpaceKind kind_ = SpaceKind::kIces;
  std::string source_;
  std::map<char32_t, std::vector<Neighbor>> entries_;
};

// Every lettered record gets the other members of its (letter, case) class,
// truncated to the first `limit` by ascending code point, all with weight 1.
NeighborTable build_dces(const Catalog& catalog, std::size_t limit = kMaxNeighbors);

// Parses `standard_char <TAB> U+XXXX` rows (blank lines and `#` comments are
// skipped). Requires exactly the 52 letters a-zA-Z with distinct replacements.
NeighborTable parse_eces(std::string_view content, std::string source = {});
NeighborTable build_eces(const std::filesystem::path& table_file);

// Top-k cosine neighbors for every non-blank glyph in the store.
NeighborTable build_ices_table(const EmbeddingStore& store, std::size_t k = kMaxNeighbors,
                               unsigned threads = 1);

std::span<const Neighbor> neighbors(const NeighborTable& table, char32_t cp);

}  // namespace viperkit
