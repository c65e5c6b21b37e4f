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

#include "viperkit/neighbor_table.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>

#include "viperkit/error.hpp"
#include "viperkit/io.hpp"
#include "viperkit/utf8.hpp"

namespace viperkit {

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::kIces: return "ICES";
    case SpaceKind::kDces: return "DCES";
    case SpaceKind::kEces: return "ECES";
  }
  return "ICES";
}

SpaceKind space_kind_from_string(std::string_view name) {
  std::string upper(name);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "ICES") return SpaceKind::kIces;
  if (upper == "DCES") return SpaceKind::kDces;
  if (upper == "ECES") return SpaceKind::kEces;
  throw Error("unknown character embedding space '" + std::string(name) + "'");
}

NeighborTable::NeighborTable(SpaceKind kind, std::string source,
                             std::map<char32_t, std::vector<Neighbor>> entries)
    : kind_(kind), source_(std::move(source)), entries_(std::move(entries)) {
  for (auto it = entries_.begin(); it != entries_.end();) {
    for (const auto& n : it->second) {
      if (n.codepoint == it->first)
        throw Error("code point " + std::to_string(it->first) + " lists itself as a neighbor");
      if (!(n.weight >= 0.0)) throw Error("negative neighbor weight");
    }
    if (it->second.size() > kMaxNeighbors) it->second.resize(kMaxNeighbors);
    it = it->second.empty() ? entries_.erase(it) : std::next(it);
  }
}

std::span<const Neighbor> NeighborTable::neighbors(char32_t cp) const {
  const auto it = entries_.find(cp);
  if (it == entries_.end()) return {};
  return it->second;
}

std::span<const Neighbor> neighbors(const NeighborTable& table, char32_t cp) {
  return table.neighbors(cp);
}

std::string NeighborTable::to_tsv() const {
  std::string out = "#viperkit-ces\tspace_kind=" + std::string(to_string(kind_)) +
                    "\tsource=" + source_ + "\n";
  char buf[64];
  for (const auto& [cp, list] : entries_) {
    auto r = std::to_chars(buf, buf + sizeof buf, static_cast<unsigned>(cp));
    out.append(buf, r.ptr);
    out.push_back('\t');
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (i) out.push_back(',');
      r = std::to_chars(buf, buf + sizeof buf, static_cast<unsigned>(list[i].codepoint));
      out.append(buf, r.ptr);
      out.push_back(':');
      r = std::to_chars(buf, buf + sizeof buf, list[i].weight);
      out.append(buf, r.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

NeighborTable NeighborTable::from_tsv(std::string_view content) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::optional<SpaceKind> kind;
  std::string source;
  std::map<char32_t, std::vector<Neighbor>> entries;

  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (line_no == 1) {
      if (!line.starts_with("#viperkit-ces")) throw MalformedRecord(line_no, "missing table header");
      std::size_t f = 0;
      while ((f = line.find('\t', f)) != std::string_view::npos) {
        ++f;
        const std::size_t g = line.find('\t', f);
        const std::string_view field = line.substr(f, g == std::string_view::npos ? line.npos : g - f);
        if (field.starts_with("space_kind=")) kind = space_kind_from_string(field.substr(11));
        if (field.starts_with("source=")) source = std::string(field.substr(7));
      }
      if (!kind) throw MalformedRecord(line_no, "header lacks space_kind");
      continue;
    }

    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) throw MalformedRecord(line_no, "expected codepoint<TAB>neighbors");
    unsigned cp = 0;
    auto r = std::from_chars(line.data(), line.data() + tab, cp);
    if (r.ec != std::errc() || r.ptr != line.data() + tab) throw MalformedRecord(line_no, "bad code point");
    if (entries.count(cp)) throw DuplicateKey("duplicate table entry for " + format_codepoint(cp));

    std::vector<Neighbor> list;
    std::string_view rest = line.substr(tab + 1);
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      const std::size_t colon = item.find(':');
      if (colon == std::string_view::npos) throw MalformedRecord(line_no, "expected neighbor:weight");
      unsigned ncp = 0;
      double w = 0.0;
      auto r1 = std::from_chars(item.data(), item.data() + colon, ncp);
      auto r2 = std::from_chars(item.data() + colon + 1, item.data() + item.size(), w);
      if (r1.ec != std::errc() || r1.ptr != item.data() + colon || r2.ec != std::errc() ||
          r2.ptr != item.data() + item.size())
        throw MalformedRecord(line_no, "bad neighbor entry '" + std::string(item) + "'");
      list.push_back({ncp, w});
    }
    entries.emplace(cp, std::move(list));
  }
  if (!kind) throw MalformedRecord(1, "missing table header");
  return NeighborTable(*kind, std::move(source), std::move(entries));
}

void NeighborTable::save(const std::filesystem::path& path) const {
  write_file_atomic(path, to_tsv());
}

NeighborTable NeighborTable::load(const std::filesystem::path& path) {
  return from_tsv(read_file(path));
}

NeighborTable build_dces(const Catalog& catalog, std::size_t limit) {
  // 26 letters x 2 cases, members in ascending code point order.
  std::array<std::vector<char32_t>, 52> classes;
  const auto slot = [](char letter, LetterCase c) {
    return static_cast<std::size_t>(letter - 'a') + (c == LetterCase::kCapital ? 26 : 0);
  };
  for (const auto& r : catalog.records()) {
    if (!r.eligible || !r.base_letter) continue;
    classes[slot(*r.base_letter, *r.letter_case)].push_back(r.codepoint);
  }

  std::map<char32_t, std::vector<Neighbor>> entries;
  for (const auto& members : classes) {
    for (char32_t cp : members) {
      std::vector<Neighbor> list;
      for (char32_t other : members) {
        if (list.size() == limit) break;
        if (other != cp) list.push_back({other, 1.0});
      }
      if (!list.empty()) entries.emplace(cp, std::move(list));
    }
  }
  return NeighborTable(SpaceKind::kDces, catalog.source_digest(), std::move(entries));
}

namespace {

bool is_ascii_letter(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

char32_t parse_codepoint_field(std::string_view field, std::size_t line_no) {
  if (field.starts_with("U+") || field.starts_with("u+")) {
    unsigned v = 0;
    auto r = std::from_chars(field.data() + 2, field.data() + field.size(), v, 16);
    if (r.ec != std::errc() || r.ptr != field.data() + field.size() || field.size() < 3)
      throw MalformedRecord(line_no, "bad replacement code point '" + std::string(field) + "'");
    return v;
  }
  throw MalformedRecord(line_no, "replacement must be written as U+XXXX");
}

}  // namespace

NeighborTable parse_eces(std::string_view content, std::string source) {
  std::map<char32_t, std::vector<Neighbor>> entries;
  std::set<char32_t> replacements;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) throw MalformedRecord(line_no, "expected char<TAB>U+XXXX");
    const std::u32string key = utf8::decode(line.substr(0, tab));
    std::string_view value = line.substr(tab + 1);
    if (const std::size_t t2 = value.find('\t'); t2 != std::string_view::npos) value = value.substr(0, t2);
    if (key.size() != 1 || !is_ascii_letter(key[0]))
      throw IncompleteTable("line " + std::to_string(line_no) + ": key must be one of a-zA-Z");
    const char32_t repl = parse_codepoint_field(value, line_no);
    if (repl == key[0]) throw MalformedRecord(line_no, "replacement equals its key");
    if (entries.count(key[0]))
      throw DuplicateKey("duplicate ECES key '" + utf8::encode(key) + "'");
    if (!replacements.insert(repl).second)
      throw DuplicateKey("replacement " + format_codepoint(repl) + " used for two letters");
    entries.emplace(key[0], std::vector<Neighbor>{{repl, 1.0}});
  }
  if (entries.size() != 52)
    throw IncompleteTable("ECES table must cover exactly a-zA-Z (52 rows), got " +
                          std::to_string(entries.size()));
  return NeighborTable(SpaceKind::kEces, std::move(source), std::move(entries));
}

NeighborTable build_eces(const std::filesystem::path& table_file) {
  const std::string content = read_file(table_file);
  return parse_eces(content, "fnv1a64:" + hex64(fnv1a64(content)));
}

NeighborTable build_ices_table(const EmbeddingStore& store, std::size_t k, unsigned threads) {
  if (store.empty()) throw EmptyStore();
  std::vector<char32_t> queries;
  for (char32_t cp : store.codepoints())
    if (cp >= 0x20 && store.usable(cp)) queries.push_back(cp);

  std::vector<std::vector<Neighbor>> lists(queries.size());
  parallel_for(queries.size(), threads,
               [&](std::size_t i) { lists[i] = nearest_neighbors(queries[i], store, k); });

  std::map<char32_t, std::vector<Neighbor>> entries;
  for (std::size_t i = 0; i < queries.size(); ++i)
    if (!lists[i].empty()) entries.emplace(queries[i], std::move(lists[i]));
  return NeighborTable(SpaceKind::kIces, store.font_id(), std::move(entries));
}

}  // namespace viperkit
