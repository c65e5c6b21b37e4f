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

#include <cstdint>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "viperkit/error.hpp"
#include "viperkit/simd/dot.hpp"

namespace viperkit::simd {
namespace {

std::vector<std::uint8_t> RandomBytes(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(0, 255);
  std::vector<std::uint8_t> v(n);
  for (auto& x : v) x = static_cast<std::uint8_t>(d(rng));
  return v;
}

std::uint64_t NaiveDot(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::uint64_t{a[i]} * b[i];
  return s;
}

// Restores the dispatch choice after each test.
class SimdTest : public ::testing::Test {
 protected:
  void TearDown() override { set_active_isa(saved_); }
  Isa saved_ = active_isa();
};

TEST_F(SimdTest, ScalarMatchesNaiveSum) {
  std::mt19937 rng(1);
  for (std::size_t n : {0u, 1u, 7u, 31u, 576u, 1000u}) {
    const auto a = RandomBytes(rng, n), b = RandomBytes(rng, n);
    EXPECT_EQ(dot_u8_scalar(a.data(), b.data(), n), NaiveDot(a, b)) << n;
  }
}

TEST_F(SimdTest, SaturatedVectorsStayExact) {
  const std::vector<std::uint8_t> full(576, 255);
  EXPECT_EQ(dot_u8_scalar(full.data(), full.data(), full.size()), 576u * 255u * 255u);
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (!isa_supported(isa)) continue;
    set_active_isa(isa);
    EXPECT_EQ(dot_u8(full, full), 576u * 255u * 255u) << to_string(isa);
  }
}

TEST_F(SimdTest, VectorVariantsMatchScalarExactly) {
  std::mt19937 rng(2);
  int checked = 0;
  for (Isa isa : {Isa::kAvx2, Isa::kNeon}) {
    if (!isa_supported(isa)) continue;
    set_active_isa(isa);
    for (std::size_t n = 0; n <= 600; n += (n < 70 ? 1 : 37)) {
      const auto a = RandomBytes(rng, n), b = RandomBytes(rng, n);
      ASSERT_EQ(dot_u8(a, b), dot_u8_scalar(a.data(), b.data(), n)) << to_string(isa) << " n=" << n;
      ++checked;
    }
  }
  if (checked == 0) GTEST_SKIP() << "no vector unit on this CPU";
}

TEST_F(SimdTest, RowKernelsMatchScalar) {
  std::mt19937 rng(3);
  const std::size_t dim = 576, rows = 37;
  const auto query = RandomBytes(rng, dim);
  const auto table = RandomBytes(rng, dim * rows);
  std::vector<std::uint32_t> expected(rows);
  dot_u8_rows_scalar(query.data(), table.data(), rows, dim, expected.data());
  for (std::size_t r = 0; r < rows; ++r)
    EXPECT_EQ(expected[r], dot_u8_scalar(query.data(), table.data() + r * dim, dim));

  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kNeon}) {
    if (!isa_supported(isa)) continue;
    set_active_isa(isa);
    std::vector<std::uint32_t> got(rows);
    dot_u8_rows(query, table, got);
    EXPECT_EQ(got, expected) << to_string(isa);
  }
}

TEST_F(SimdTest, DispatchNames) {
  EXPECT_TRUE(isa_supported(Isa::kScalar));
  EXPECT_EQ(isa_from_string("scalar"), Isa::kScalar);
  EXPECT_EQ(isa_from_string("avx2"), Isa::kAvx2);
  EXPECT_EQ(isa_from_string("neon"), Isa::kNeon);
  EXPECT_THROW(isa_from_string("sse9"), Error);
  EXPECT_TRUE(isa_supported(best_isa()));
  set_active_isa(Isa::kScalar);
  EXPECT_EQ(active_isa(), Isa::kScalar);
}

TEST_F(SimdTest, UnsupportedVariantIsRejected) {
  for (Isa isa : {Isa::kAvx2, Isa::kNeon})
    if (!isa_supported(isa)) {
      EXPECT_THROW(set_active_isa(isa), Error);
    }
}

TEST_F(SimdTest, RowShapeMismatchThrows) {
  const std::vector<std::uint8_t> q(4, 1), rows(10, 1);
  std::vector<std::uint32_t> out(2);
  EXPECT_THROW(dot_u8_rows(q, rows, out), Error);
}

}  // namespace
}  // namespace viperkit::simd
