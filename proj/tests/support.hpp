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

#include "viperkit/catalog.hpp"
#include "viperkit/glyph.hpp"
#include "viperkit/neighbor_table.hpp"
#include "viperkit/recovery.hpp"

namespace viperkit::testing {

// Shared fixtures built from the bundled data on first use.
const FontRasterizer& bundled_font();
const EmbeddingStore& bundled_store();
const Catalog& bundled_catalog();
const NeighborTable& ices_table();
const NeighborTable& dces_table();
const NeighborTable& eces_table();
const RecoveryTable& default_recovery();

// Fresh directory under the system temp dir, removed at exit.
std::filesystem::path scratch_dir();

}  // namespace viperkit::testing
