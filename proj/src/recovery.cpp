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

#include "viperkit/recovery.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "viperkit/error.hpp"
#include "viperkit/io.hpp"
#include "viperkit/simd/dot.hpp"
#include "viperkit/utf8.hpp"

namespace viperkit {

RecoveryTable::RecoveryTable(const EmbeddingStore& store, StandardSet standard, unsigned threads)
    : standard_(std::move(standard)), font_id_(store.font_id()) {
  if (standard_.empty()) throw Error("standard set is empty");
  const std::vector<char32_t> targets = standard_.targets();
  for (char32_t t : targets)
    if (!store.usable(t)) throw MissingStandardEmbedding(t);

  // Pack the targets contiguously, ascending, so each query is one row scan
  // and ties resolve to the lowest code point.
  std::vector<std::uint8_t> rows;
  std::vector<std::uint64_t> norms;
  for (char32_t t : targets) {
    const auto r = store.row(t);
    rows.insert(rows.end(), r.begin(), r.end());
    norms.push_back(store.squared_norm_at(static_cast<std::size_t>(store.index_of(t))));
  }

  const auto& cps = store.codepoints();
  std::vector<std::optional<StandardMapping>> found(cps.size());
  parallel_for(cps.size(), threads, [&](std::size_t i) {
    const char32_t cp = cps[i];
    const std::uint64_t qn = store.squared_norm_at(i);
    if (qn == 0 || standard_.contains(cp)) return;
    std::vector<std::uint32_t> dots(targets.size());
    simd::dot_u8_rows(store.row(cp), rows, dots);
    StandardMapping best{targets.front(), -1.0};
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const double sim = static_cast<double>(dots[k]) /
                         std::sqrt(static_cast<double>(qn) * static_cast<double>(norms[k]));
      if (sim > best.similarity) best = {targets[k], sim};
    }
    found[i] = best;
  });
  for (std::size_t i = 0; i < cps.size(); ++i)
    if (found[i]) map_.emplace(cps[i], *found[i]);
}

std::optional<StandardMapping> RecoveryTable::lookup(char32_t cp) const {
  const auto it = map_.find(cp);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

std::u32string RecoveryTable::recover(std::u32string_view text, RecoveryFallback fallback) const {
  std::u32string out(text);
  for (char32_t& c : out) {
    if (standard_.contains(c)) continue;
    if (const auto it = map_.find(c); it != map_.end()) {
      c = it->second.standard;
    } else if (fallback.replacement) {
      c = *fallback.replacement;
    }
  }
  return out;
}

std::string RecoveryTable::recover_utf8(std::string_view text, RecoveryFallback fallback) const {
  return utf8::encode(recover(utf8::decode(text), fallback));
}

std::string RecoveryTable::to_tsv() const {
  std::string out = "#viperkit-rbr\tfont=" + font_id_ + "\tstandard=";
  bool first = true;
  for (char32_t c : standard_.members()) {
    if (!first) out.push_back(',');
    first = false;
    out += std::to_string(static_cast<unsigned>(c));
  }
  out.push_back('\n');
  std::map<char32_t, StandardMapping> ordered(map_.begin(), map_.end());
  char buf[64];
  for (const auto& [cp, m] : ordered) {
    out += std::to_string(static_cast<unsigned>(cp));
    out.push_back('\t');
    out += std::to_string(static_cast<unsigned>(m.standard));
    out.push_back('\t');
    auto r = std::to_chars(buf, buf + sizeof buf, m.similarity);
    out.append(buf, r.ptr);
    out.push_back('\n');
  }
  return out;
}

RecoveryTable RecoveryTable::from_tsv(std::string_view content) {
  RecoveryTable t;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header = false;
  std::set<char32_t> members;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header) {
      if (!line.starts_with("#viperkit-rbr")) throw MalformedRecord(line_no, "missing recovery cache header");
      header = true;
      std::size_t f = 0;
      while ((f = line.find('\t', f)) != std::string_view::npos) {
        ++f;
        const std::size_t g = line.find('\t', f);
        const std::string_view field = line.substr(f, g == std::string_view::npos ? line.npos : g - f);
        if (field.starts_with("font=")) t.font_id_ = std::string(field.substr(5));
        if (field.starts_with("standard=")) {
          std::string_view list = field.substr(9);
          while (!list.empty()) {
            const std::size_t comma = list.find(',');
            const std::string_view item = list.substr(0, comma);
            unsigned v = 0;
            auto r = std::from_chars(item.data(), item.data() + item.size(), v);
            if (r.ec != std::errc()) throw MalformedRecord(line_no, "bad standard member");
            members.insert(v);
            list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
          }
        }
      }
      continue;
    }
    unsigned cp = 0, std_cp = 0;
    double sim = 0.0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    auto r = std::from_chars(p, end, cp);
    if (r.ec != std::errc() || r.ptr == end || *r.ptr != '\t') throw MalformedRecord(line_no, "bad code point");
    r = std::from_chars(r.ptr + 1, end, std_cp);
    if (r.ec != std::errc() || r.ptr == end || *r.ptr != '\t') throw MalformedRecord(line_no, "bad standard code point");
    auto r2 = std::from_chars(r.ptr + 1, end, sim);
    if (r2.ec != std::errc() || r2.ptr != end) throw MalformedRecord(line_no, "bad similarity");
    t.map_.emplace(cp, StandardMapping{std_cp, sim});
  }
  if (!header) throw MalformedRecord(1, "missing recovery cache header");
  if (members.empty()) throw MalformedRecord(1, "recovery cache lists no standard members");
  t.standard_ = StandardSet(std::move(members));
  return t;
}

void RecoveryTable::save(const std::filesystem::path& path) const { write_file_atomic(path, to_tsv()); }

RecoveryTable RecoveryTable::load(const std::filesystem::path& path) { return from_tsv(read_file(path)); }

std::u32string recover(std::u32string_view text, const EmbeddingStore& store,
                       const StandardSet& standard, RecoveryFallback fallback) {
  return RecoveryTable(store, standard).recover(text, fallback);
}

}  // namespace viperkit
