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

#if defined(__aarch64__)

#include <arm_neon.h>

namespace viperkit::simd {

std::uint32_t dot_u8_neon(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  uint32x4_t acc = vdupq_n_u32(0);
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const uint8x16_t va = vld1q_u8(a + i);
    const uint8x16_t vb = vld1q_u8(b + i);
    acc = vpadalq_u16(acc, vmull_u8(vget_low_u8(va), vget_low_u8(vb)));
    acc = vpadalq_u16(acc, vmull_high_u8(va, vb));
  }
  std::uint32_t total = vaddvq_u32(acc);
  for (; i < n; ++i) total += std::uint32_t{a[i]} * std::uint32_t{b[i]};
  return total;
}

void dot_u8_rows_neon(const std::uint8_t* query, const std::uint8_t* rows,
                      std::size_t n_rows, std::size_t dim, std::uint32_t* out) {
  for (std::size_t r = 0; r < n_rows; ++r) out[r] = dot_u8_neon(query, rows + r * dim, dim);
}

}  // namespace viperkit::simd

#endif
