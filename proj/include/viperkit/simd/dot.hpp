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

// Byte-vector dot products behind the glyph similarity search. Every variant
// computes the same exact integer result; the dispatcher only changes speed.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace viperkit::simd {

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view to_string(Isa isa);
Isa isa_from_string(std::string_view name);

// Exact while n <= 66051 (255 * 255 * n fits in 32 bits).
std::uint32_t dot_u8_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
void dot_u8_rows_scalar(const std::uint8_t* query, const std::uint8_t* rows,
                        std::size_t n_rows, std::size_t dim, std::uint32_t* out);

#if defined(__x86_64__) || defined(__i386__)
std::uint32_t dot_u8_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
void dot_u8_rows_avx2(const std::uint8_t* query, const std::uint8_t* rows,
                      std::size_t n_rows, std::size_t dim, std::uint32_t* out);
#endif

#if defined(__aarch64__)
std::uint32_t dot_u8_neon(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
void dot_u8_rows_neon(const std::uint8_t* query, const std::uint8_t* rows,
                      std::size_t n_rows, std::size_t dim, std::uint32_t* out);
#endif

bool isa_supported(Isa isa);
Isa best_isa();

// The variant used by dot_u8/dot_u8_rows. Starts at best_isa() unless the
// VIPERKIT_SIMD environment variable names another supported variant.
Isa active_isa();
// Throws viperkit::Error if the CPU cannot run `isa`.
void set_active_isa(Isa isa);

std::uint32_t dot_u8(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

// out[i] = dot(query, rows[i * dim .. (i + 1) * dim)); rows.size() must be a
// multiple of query.size() and out.size() == rows.size() / query.size().
void dot_u8_rows(std::span<const std::uint8_t> query, std::span<const std::uint8_t> rows,
                 std::span<std::uint32_t> out);

}  // namespace viperkit::simd
