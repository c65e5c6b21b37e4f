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

#include "viperkit/simd/dot.hpp"

namespace viperkit::simd {

std::uint32_t dot_u8_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += std::uint32_t{a[i]} * std::uint32_t{b[i]};
  return acc;
}

void dot_u8_rows_scalar(const std::uint8_t* query, const std::uint8_t* rows,
                        std::size_t n_rows, std::size_t dim, std::uint32_t* out) {
  for (std::size_t r = 0; r < n_rows; ++r) out[r] = dot_u8_scalar(query, rows + r * dim, dim);
}

}  // namespace viperkit::simd
