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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "viperkit/standard_set.hpp"

namespace viperkit {

inline constexpr char32_t kDefaultMaxCodepoint = 30000;

enum class LetterCase { kSmall, kCapital };

std::string_view to_string(LetterCase c);

struct LetterFeatures {
  std::optional<char> base_letter;  // lowercase a-z
  std::optional<LetterCase> letter_case;

  bool has_letter() const { return base_letter.has_value(); }
  friend bool operator==(const LetterFeatures&, const LetterFeatures&) = default;
};

struct CharRecord {
  char32_t codepoint = 0;
  std::string name;
  std::optional<char> base_letter;
  std::optional<LetterCase> letter_case;
  bool is_standard = false;
  // False for "<control>" and other bracketed pseudo-names; such records are
  // never perturbed and never join a letter class.
  bool eligible = true;

  friend bool operator==(const CharRecord&, const CharRecord&) = default;
};

// Splits an uppercase Unicode name into tokens on spaces and hyphens and looks
// for LETTER plus exactly one of SMALL/CAPITAL. The base letter is the first
// single-character A-Z token after LETTER.
LetterFeatures parse_letter_features(std::string_view name);

struct CatalogOptions {
  char32_t max_codepoint = kDefaultMaxCodepoint;
  StandardSet standard = StandardSet::default_set();
};

// Immutable, codepoint-ordered view of a UnicodeData.txt file.
class Catalog {
 public:
  Catalog() = default;
  Catalog(std::vector<CharRecord> records, std::string source_digest);

  const std::vector<CharRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  const CharRecord* find(char32_t cp) const;
  // Digest of the source file, used as table provenance.
  const std::string& source_digest() const { return source_digest_; }

 private:
  std::vector<CharRecord> records_;
  std::vector<std::int32_t> index_;  // codepoint -> position, -1 if absent
  std::string source_digest_;
};

// Parses UnicodeData.txt-style rows: field 0 is the hex code point, field 1
// the name. "<..., First>"/"<..., Last>" pairs are expanded; CJK ranges get
// their derived "CJK UNIFIED IDEOGRAPH-XXXX" names.
Catalog load_catalog(const std::filesystem::path& names_file,
                     const CatalogOptions& options = {});
Catalog parse_catalog(std::string_view content, const CatalogOptions& options = {},
                      std::string source_digest = {});

}  // namespace viperkit
