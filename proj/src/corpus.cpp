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

#include "viperkit/corpus.hpp"

#include "viperkit/error.hpp"
#include "viperkit/io.hpp"
#include "viperkit/perturb.hpp"
#include "viperkit/utf8.hpp"

namespace viperkit {

namespace {

std::vector<nlohmann::json> parse_lines(std::string_view content, bool documents) {
  std::vector<nlohmann::json> docs;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw CorpusReadError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!doc.is_object()) throw CorpusReadError("line " + std::to_string(line_no) + ": not a JSON object");
    if (!documents) {
      docs.push_back(std::move(doc));
      continue;
    }
    const bool text_ok = doc.contains("text") && doc["text"].is_string();
    const bool tokens_ok = doc.contains("tokens") && doc["tokens"].is_array();
    if (!text_ok && !tokens_ok)
      throw CorpusReadError("line " + std::to_string(line_no) + ": document has neither \"text\" nor \"tokens\"");
    if (tokens_ok)
      for (const auto& t : doc["tokens"])
        if (!t.is_string()) throw CorpusReadError("line " + std::to_string(line_no) + ": non-string token");
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::string read_content(const std::filesystem::path& path) {
  try {
    return read_file(path);
  } catch (const FileNotFound&) {
    throw CorpusReadError("cannot read " + path.string());
  }
}

}  // namespace

std::vector<nlohmann::json> parse_jsonl(std::string_view content) { return parse_lines(content, true); }

std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path) {
  return parse_lines(read_content(path), true);
}

std::vector<nlohmann::json> read_json_lines(const std::filesystem::path& path) {
  return parse_lines(read_content(path), false);
}

std::string to_jsonl(const std::vector<nlohmann::json>& documents) {
  std::string out;
  for (const auto& d : documents) {
    out += d.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out.push_back('\n');
  }
  return out;
}

void write_jsonl(const std::filesystem::path& path, const std::vector<nlohmann::json>& documents) {
  write_file_atomic(path, to_jsonl(documents));
}

bool has_tokens(const nlohmann::json& doc) {
  return doc.is_object() && doc.contains("tokens") && doc["tokens"].is_array() && !doc.contains("text");
}

std::vector<std::string> document_tokens(const nlohmann::json& doc) {
  return doc.at("tokens").get<std::vector<std::string>>();
}

std::string document_text(const nlohmann::json& doc) {
  if (doc.contains("text")) return doc.at("text").get<std::string>();
  std::string out;
  for (const auto& t : doc.at("tokens")) {
    if (!out.empty()) out.push_back(' ');
    out += t.get<std::string>();
  }
  return out;
}

void set_document_text(nlohmann::json& doc, const std::string& text) {
  if (!has_tokens(doc)) {
    doc["text"] = text;
    return;
  }
  // Recovery and perturbation preserve length, so the token boundaries of
  // the original still apply.
  const auto tokens = document_tokens(doc);
  const std::u32string cps = utf8::decode(text);
  std::vector<std::string> out;
  std::size_t at = 0;
  for (const auto& t : tokens) {
    const std::size_t len = utf8::decode(t).size();
    if (at + len > cps.size()) throw LengthMismatch("text shorter than its tokens");
    out.push_back(utf8::encode(std::u32string_view(cps).substr(at, len)));
    at += len + 1;
  }
  doc["tokens"] = std::move(out);
}

nlohmann::json records_to_json(const std::vector<PerturbationRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records)
    arr.push_back({{"position", r.position},
                   {"original", utf8::encode(r.original)},
                   {"replacement", utf8::encode(r.replacement)},
                   {"original_cp", static_cast<unsigned>(r.original)},
                   {"replacement_cp", static_cast<unsigned>(r.replacement)}});
  return arr;
}

}  // namespace viperkit
