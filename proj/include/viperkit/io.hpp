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
#include <functional>
#include <string>
#include <string_view>

namespace viperkit {

// Throws FileNotFound when the path does not exist or cannot be opened.
std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temp file and renames it over `path`, so readers never
// observe a partially written artifact.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);
// "fnv1a64:<hex>" digest of the file contents.
std::string file_digest(const std::filesystem::path& path);

// Root of the bundled data files (font, names list, ECES table, word lists).
std::filesystem::path data_dir();

// Runs fn(i) for i in [0, n) on up to `threads` workers. fn must only write to
// slots owned by index i, which keeps results independent of scheduling.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

unsigned default_threads();

}  // namespace viperkit
