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
#include <vector>

#include <json.hpp>

namespace viperkit {

// Synthetic toxic-comment corpus: template sentences whose slot word is
// either a hot word or a harmless word of the same role, so the slot alone
// decides the six labels. Deterministic in (count, seed).
std::vector<nlohmann::json> generate_toy_corpus(std::size_t count, std::uint64_t seed,
                                                const std::string& id_prefix = "doc");

}  // namespace viperkit
