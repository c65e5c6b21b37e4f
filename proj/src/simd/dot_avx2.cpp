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

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#define VIPERKIT_AVX2 __attribute__((target("avx2")))

namespace viperkit::simd {

namespace {

VIPERKIT_AVX2 inline std::uint32_t hsum_epi32(__m256i v) {
  __m128i lo = _mm256_castsi256_si128(v);
  __m128i hi = _mm256_extracti128_si256(v, 1);
  __m128i s = _mm_add_epi32(lo, hi);
  s = _mm_add_epi32(s, _mm_shuffle_epi32(s, _MM_SHUFFLE(1, 0, 3, 2)));
  s = _mm_add_epi32(s, _mm_shuffle_epi32(s, _MM_SHUFFLE(2, 3, 0, 1)));
  return static_cast<std::uint32_t>(_mm_cvtsi128_si32(s));
}

// 16 bytes per step: widen to u16, then madd pairs into i32 lanes. A pair sum
// is at most 2 * 255 * 255, well inside int32.
VIPERKIT_AVX2 inline std::uint32_t dot_avx2_impl(const std::uint8_t* a, const std::uint8_t* b,
                                                 std::size_t n) {
  __m256i acc0 = _mm256_setzero_si256();
  __m256i acc1 = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i a0 = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i)));
    const __m256i b0 = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i)));
    const __m256i a1 = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i + 16)));
    const __m256i b1 = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i + 16)));
    acc0 = _mm256_add_epi32(acc0, _mm256_madd_epi16(a0, b0));
    acc1 = _mm256_add_epi32(acc1, _mm256_madd_epi16(a1, b1));
  }
  for (; i + 16 <= n; i += 16) {
    const __m256i a0 = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(a + i)));
    const __m256i b0 = _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(b + i)));
    acc0 = _mm256_add_epi32(acc0, _mm256_madd_epi16(a0, b0));
  }
  std::uint32_t acc = hsum_epi32(_mm256_add_epi32(acc0, acc1));
  for (; i < n; ++i) acc += std::uint32_t{a[i]} * std::uint32_t{b[i]};
  return acc;
}

}  // namespace

VIPERKIT_AVX2 std::uint32_t dot_u8_avx2(const std::uint8_t* a, const std::uint8_t* b,
                                         std::size_t n) {
  return dot_avx2_impl(a, b, n);
}

VIPERKIT_AVX2 void dot_u8_rows_avx2(const std::uint8_t* query, const std::uint8_t* rows,
                                    std::size_t n_rows, std::size_t dim, std::uint32_t* out) {
  for (std::size_t r = 0; r < n_rows; ++r) out[r] = dot_avx2_impl(query, rows + r * dim, dim);
}

}  // namespace viperkit::simd

#endif
