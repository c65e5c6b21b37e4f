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

#include "viperkit/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "viperkit/error.hpp"
#include "viperkit/io.hpp"

namespace viperkit {

std::string_view to_string(LetterCase c) {
  return c == LetterCase::kSmall ? "SMALL" : "CAPITAL";
}

LetterFeatures parse_letter_features(std::string_view name) {
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= name.size(); ++i) {
    if (i == name.size() || name[i] == ' ' || name[i] == '-') {
      if (i > start) tokens.push_back(name.substr(start, i - start));
      start = i + 1;
    }
  }

  bool small = false;
  bool capital = false;
  std::ptrdiff_t letter_at = -1;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "SMALL") small = true;
    if (tokens[i] == "CAPITAL") capital = true;
    if (tokens[i] == "LETTER" && letter_at < 0) letter_at = static_cast<std::ptrdiff_t>(i);
  }
  if (letter_at < 0 || small == capital) return {};

  for (std::size_t i = static_cast<std::size_t>(letter_at) + 1; i < tokens.size(); ++i) {
    const auto t = tokens[i];
    if (t.size() == 1 && t[0] >= 'A' && t[0] <= 'Z') {
      return {static_cast<char>(t[0] - 'A' + 'a'),
              small ? LetterCase::kSmall : LetterCase::kCapital};
    }
  }
  return {};
}

Catalog::Catalog(std::vector<CharRecord> records, std::string source_digest)
    : records_(std::move(records)), source_digest_(std::move(source_digest)) {
  char32_t max = 0;
  for (const auto& r : records_) max = std::max(max, r.codepoint);
  index_.assign(records_.empty() ? 0 : max + 1, -1);
  for (std::size_t i = 0; i < records_.size(); ++i)
    index_[records_[i].codepoint] = static_cast<std::int32_t>(i);
}

const CharRecord* Catalog::find(char32_t cp) const {
  if (cp >= index_.size() || index_[cp] < 0) return nullptr;
  return &records_[static_cast<std::size_t>(index_[cp])];
}

namespace {

bool parse_hex(std::string_view s, char32_t& out) {
  if (s.empty() || s.size() > 6) return false;
  unsigned value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, 16);
  if (ec != std::errc() || ptr != s.data() + s.size() || value > 0x10FFFF) return false;
  out = value;
  return true;
}

CharRecord make_record(char32_t cp, std::string name, const CatalogOptions& options) {
  CharRecord r;
  r.codepoint = cp;
  r.eligible = !name.starts_with('<');
  if (r.eligible) {
    const LetterFeatures f = parse_letter_features(name);
    r.base_letter = f.base_letter;
    r.letter_case = f.letter_case;
  }
  r.name = std::move(name);
  r.is_standard = options.standard.contains(cp);
  return r;
}

std::string range_member_name(std::string_view label, char32_t cp) {
  if (label.starts_with("CJK Ideograph")) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "CJK UNIFIED IDEOGRAPH-%04X", static_cast<unsigned>(cp));
    return buf;
  }
  return "<" + std::string(label) + ">";
}

}  // namespace

Catalog parse_catalog(std::string_view content, const CatalogOptions& options,
                      std::string source_digest) {
  std::vector<CharRecord> records;
  std::vector<bool> seen(options.max_codepoint, false);
  std::optional<std::pair<char32_t, std::string>> range_open;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t s1 = line.find(';');
    if (s1 == std::string_view::npos) throw MalformedRecord(line_no, "no ';' field separator");
    const std::size_t s2 = line.find(';', s1 + 1);
    const std::string_view hex = line.substr(0, s1);
    const std::string_view name =
        line.substr(s1 + 1, (s2 == std::string_view::npos ? line.size() : s2) - s1 - 1);

    char32_t cp = 0;
    if (!parse_hex(hex, cp)) throw MalformedRecord(line_no, "bad code point '" + std::string(hex) + "'");
    if (name.empty()) throw MalformedRecord(line_no, "empty character name");

    if (name.starts_with('<') && name.ends_with(", First>")) {
      range_open.emplace(cp, std::string(name.substr(1, name.size() - 9)));
      continue;
    }
    if (name.starts_with('<') && name.ends_with(", Last>")) {
      if (!range_open) throw MalformedRecord(line_no, "range end without start");
      const auto [first, label] = *range_open;
      range_open.reset();
      if (cp < first) throw MalformedRecord(line_no, "range end before start");
      for (char32_t c = first; c <= cp && c < options.max_codepoint; ++c) {
        if (seen[c]) throw MalformedRecord(line_no, "duplicate code point");
        seen[c] = true;
        records.push_back(make_record(c, range_member_name(label, c), options));
      }
      continue;
    }
    if (range_open) throw MalformedRecord(line_no, "range start without end");

    if (cp >= options.max_codepoint) continue;
    if (seen[cp]) throw MalformedRecord(line_no, "duplicate code point");
    seen[cp] = true;
    records.push_back(make_record(cp, std::string(name), options));
  }
  if (range_open) throw MalformedRecord(line_no, "unterminated code point range");

  std::sort(records.begin(), records.end(),
            [](const CharRecord& a, const CharRecord& b) { return a.codepoint < b.codepoint; });
  return Catalog(std::move(records), std::move(source_digest));
}

Catalog load_catalog(const std::filesystem::path& names_file, const CatalogOptions& options) {
  const std::string content = read_file(names_file);
  return parse_catalog(content, options, "fnv1a64:" + hex64(fnv1a64(content)));
}

}  // namespace viperkit
