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

#include "support.hpp"

#include <cstdlib>
#include <random>

#include <unistd.h>

#include "viperkit/io.hpp"

namespace viperkit::testing {

const FontRasterizer& bundled_font() {
  static const FontRasterizer font(resolve_font_path());
  return font;
}

const EmbeddingStore& bundled_store() {
  static const EmbeddingStore store = build_store(bundled_font(), {kDefaultMaxCodepoint, default_threads()});
  return store;
}

const Catalog& bundled_catalog() {
  static const Catalog catalog = load_catalog(data_dir() / "UnicodeData.txt");
  return catalog;
}

const NeighborTable& ices_table() {
  static const NeighborTable table = build_ices_table(bundled_store(), kMaxNeighbors, default_threads());
  return table;
}

const NeighborTable& dces_table() {
  static const NeighborTable table = build_dces(bundled_catalog());
  return table;
}

const NeighborTable& eces_table() {
  static const NeighborTable table = build_eces(data_dir() / "eces.tsv");
  return table;
}

const RecoveryTable& default_recovery() {
  static const RecoveryTable table(bundled_store(), StandardSet::default_set(), default_threads());
  return table;
}

namespace {

struct ScratchRoot {
  std::filesystem::path path;
  ScratchRoot() {
    path = std::filesystem::temp_directory_path() /
           ("viperkit-test-" + std::to_string(::getpid()) + "-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~ScratchRoot() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace

std::filesystem::path scratch_dir() {
  static ScratchRoot root;
  static int counter = 0;
  auto dir = root.path / std::to_string(counter++);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace viperkit::testing
