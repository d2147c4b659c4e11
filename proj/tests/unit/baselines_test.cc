// Copyright 2026 The Spectrum Sim Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "spectrum/baselines.h"
#include "spectrum/rng.h"

namespace spectrum {
namespace {

std::vector<double> Frequencies(std::vector<double> q, double beta, int draws,
                                std::uint64_t seed) {
  Rng rng = MakeStream(seed, StreamKind::kPolicy);
  std::vector<double> f(q.size(), 0.0);
  for (int i = 0; i < draws; ++i) f[SoftmaxPolicy(q, beta, rng)] += 1.0 / draws;
  return f;
}

TEST(SoftmaxPolicyTest, SymmetricValues) {
  for (double beta : {0.0, 1.0, 20.0}) {
    const auto f = Frequencies({1, 1}, beta, 100000, 1);
    EXPECT_NEAR(f[0], 0.5, 0.01);
  }
}

TEST(SoftmaxPolicyTest, ZeroTemperatureUniform) {
  const auto f = Frequencies({3, -1, 0.5, 9}, 0.0, 100000, 2);
  for (double x : f) EXPECT_NEAR(x, 0.25, 0.01);
}

TEST(SoftmaxPolicyTest, ClosedFormTwoActions) {
  const double expected = std::exp(1.0) / (std::exp(1.0) + 1.0);
  EXPECT_NEAR(expected, 0.7311, 1e-4);
  const auto f = Frequencies({1, 0}, 1.0, 1000000, 3);
  // 10^6 draws: standard error ~4.4e-4.
  EXPECT_NEAR(f[0], expected, 4 * std::sqrt(expected * (1 - expected) / 1e6));
}

TEST(SoftmaxPolicyTest, LargeTemperatureStaysFinite) {
  Rng rng = MakeStream(4, StreamKind::kPolicy);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(SoftmaxPolicy(std::vector<double>{0, 1000, 0}, 50.0, rng), 1);
  }
  EXPECT_THROW(SoftmaxPolicy(std::vector<double>{0}, -1.0, rng),
               std::invalid_argument);
}

TEST(RandomAccessPolicyTest, Extremes) {
  Rng tx = MakeStream(1, StreamKind::kTransmit);
  Rng ch = MakeStream(1, StreamKind::kPolicy);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(RandomAccessPolicy(3, 0.0, tx, ch), 0);
    EXPECT_EQ(RandomAccessPolicy(1, 1.0, tx, ch), 1);
  }
}

TEST(RandomAccessPolicyTest, UniformChannels) {
  Rng tx = MakeStream(2, StreamKind::kTransmit);
  Rng ch = MakeStream(2, StreamKind::kPolicy);
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 100000; ++i) ++hits[RandomAccessPolicy(4, 1.0, tx, ch)];
  EXPECT_EQ(hits[0], 0);
  for (int c = 1; c <= 4; ++c) {
    EXPECT_GE(hits[c] / 1e5, 0.24);
    EXPECT_LE(hits[c] / 1e5, 0.26);
  }
}

}  // namespace
}  // namespace spectrum
