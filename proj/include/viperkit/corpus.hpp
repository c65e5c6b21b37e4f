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
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace viperkit {

struct PerturbationRecord;

// JSONL corpora: `{"id": ..., "text": ..., "labels": [...]}` for sentence
// tasks and `{"tokens": [...], "tags": [...]}` for tagged tasks.
std::vector<nlohmann::json> parse_jsonl(std::string_view content);
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& path);
// Any JSON object per line, no document schema.
std::vector<nlohmann::json> read_json_lines(const std::filesystem::path& path);
std::string to_jsonl(const std::vector<nlohmann::json>& documents);
void write_jsonl(const std::filesystem::path& path, const std::vector<nlohmann::json>& documents);

bool has_tokens(const nlohmann::json& doc);
std::vector<std::string> document_tokens(const nlohmann::json& doc);
// The "text" field, or the tokens joined with single spaces.
std::string document_text(const nlohmann::json& doc);
void set_document_text(nlohmann::json& doc, const std::string& text);

nlohmann::json records_to_json(const std::vector<PerturbationRecord>& records);

}  // namespace viperkit
