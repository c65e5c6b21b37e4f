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

#include <atomic>
#include <cstdlib>
#include <string>

#include "viperkit/error.hpp"
#include "viperkit/simd/dot.hpp"

namespace viperkit::simd {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "scalar";
}

Isa isa_from_string(std::string_view name) {
  if (name == "scalar") return Isa::kScalar;
  if (name == "avx2") return Isa::kAvx2;
  if (name == "neon") return Isa::kNeon;
  throw Error("unknown SIMD variant '" + std::string(name) + "'");
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  if (isa_supported(Isa::kAvx2)) return Isa::kAvx2;
  if (isa_supported(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("VIPERKIT_SIMD"); env && *env) {
    const Isa requested = isa_from_string(env);
    if (isa_supported(requested)) return requested;
  }
  return best_isa();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa))
    throw Error("SIMD variant '" + std::string(to_string(isa)) + "' is not supported on this CPU");
  active().store(isa, std::memory_order_relaxed);
}

std::uint32_t dot_u8(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw LengthMismatch("dot_u8: vectors differ in length");
  switch (active_isa()) {
#if defined(__x86_64__) || defined(__i386__)
    case Isa::kAvx2: return dot_u8_avx2(a.data(), b.data(), a.size());
#endif
#if defined(__aarch64__)
    case Isa::kNeon: return dot_u8_neon(a.data(), b.data(), a.size());
#endif
    default: return dot_u8_scalar(a.data(), b.data(), a.size());
  }
}

void dot_u8_rows(std::span<const std::uint8_t> query, std::span<const std::uint8_t> rows,
                 std::span<std::uint32_t> out) {
  const std::size_t dim = query.size();
  if (dim == 0 || rows.size() % dim != 0 || out.size() != rows.size() / dim)
    throw LengthMismatch("dot_u8_rows: shape mismatch");
  switch (active_isa()) {
#if defined(__x86_64__) || defined(__i386__)
    case Isa::kAvx2: return dot_u8_rows_avx2(query.data(), rows.data(), out.size(), dim, out.data());
#endif
#if defined(__aarch64__)
    case Isa::kNeon: return dot_u8_rows_neon(query.data(), rows.data(), out.size(), dim, out.data());
#endif
    default: return dot_u8_rows_scalar(query.data(), rows.data(), out.size(), dim, out.data());
  }
}

}  // namespace viperkit::simd
