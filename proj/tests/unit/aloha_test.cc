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
#include "spectrum/aloha.h"
#include "spectrum/fading.h"
#include "spectrum/rng.h"

namespace spectrum {
namespace {

TEST(StepMediumTest, DistinctChannelsBothAcked) {
  RadioConfig radio;
  const auto field = ChannelGainField::Fixed({{1, 1}, {1, 1}});
  const auto obs = StepMedium(ActionProfile({1, 2}, 2), field, radio);
  EXPECT_TRUE(obs[0].ack);
  EXPECT_TRUE(obs[1].ack);
  EXPECT_GT(obs[0].realized_rate, 0);
}

TEST(StepMediumTest, CollisionNoAck) {
  RadioConfig radio;
  const auto field = ChannelGainField::Fixed({{1, 1}, {1, 1}});
  const auto obs = StepMedium(ActionProfile({1, 1}, 2), field, radio);
  EXPECT_FALSE(obs[0].ack);
  EXPECT_FALSE(obs[1].ack);
  EXPECT_EQ(obs[0].realized_rate, 0);
}

TEST(StepMediumTest, SilentUser) {
  RadioConfig radio;
  const auto field = ChannelGainField::Fixed({{1}});
  const auto obs = StepMedium(ActionProfile({0}, 1), field, radio);
  EXPECT_FALSE(obs[0].ack);
  EXPECT_EQ(obs[0].realized_rate, 0);
}

TEST(StepMediumTest, AtMostOneAckPerChannel) {
  RadioConfig radio;
  Rng rng = MakeStream(11, StreamKind::kFading);
  Rng pick = MakeStream(11, StreamKind::kPolicy);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + trial % 6, k = 1 + trial % 4;
    const auto field = ChannelGainField::Iid(n, k, rng);
    std::uniform_int_distribution<int> action(0, k);
    std::vector<int> actions(n);
    for (int& a : actions) a = action(pick);
    const auto obs = StepMedium(ActionProfile(actions, k), field, radio);
    std::vector<int> acks(k + 1, 0);
    for (int u = 0; u < n; ++u) {
      EXPECT_EQ(obs[u].ack, obs[u].realized_rate > 0);
      if (obs[u].ack) ++acks[actions[u]];
    }
    for (int c = 1; c <= k; ++c) EXPECT_LE(acks[c], 1);
  }
}

TEST(ActionProfileTest, RejectsOutOfRange) {
  EXPECT_THROW(ActionProfile({3}, 2), std::invalid_argument);
  EXPECT_THROW(ActionProfile({-1}, 2), std::invalid_argument);
}

TEST(AnalyticProbabilitiesTest, Examples) {
  auto a = AnalyticProbabilities(0.5, 1);
  EXPECT_EQ(a.no_transmit, 0.5);
  EXPECT_EQ(a.success, 0.5);
  EXPECT_EQ(a.collision, 0.0);
  a = AnalyticProbabilities(0.5, 2);
  EXPECT_EQ(a.no_transmit, 0.5);
  EXPECT_EQ(a.success, 0.25);
  EXPECT_EQ(a.collision, 0.25);
  a = AnalyticProbabilities(1.0, 2);
  EXPECT_EQ(a.no_transmit, 0.0);
  EXPECT_EQ(a.success, 0.0);
  EXPECT_EQ(a.collision, 1.0);
}

TEST(AnalyticProbabilitiesTest, SumsToOneExactly) {
  for (int i = 1; i <= 99; ++i) {
    const double p = i / 100.0;
    for (int l = 1; l <= 50; ++l) {
      const auto a = AnalyticProbabilities(p, l);
      EXPECT_EQ(a.no_transmit + a.success + a.collision, 1.0)
          << "p=" << p << " L=" << l;
      // Collision agrees with its closed form.
      EXPECT_NEAR(a.collision, p * (1 - std::pow(1 - p, l - 1)), 1e-15);
    }
  }
}

TEST(AnalyticProbabilitiesTest, RejectsBadInput) {
  EXPECT_THROW(AnalyticProbabilities(1.5, 1), std::invalid_argument);
  EXPECT_THROW(AnalyticProbabilities(0.5, 0), std::invalid_argument);
}

TEST(AnalyticProbabilitiesTest, MatchesSymmetricSimulation) {
  RadioConfig radio;
  const auto field = ChannelGainField::Fixed({{1}, {1}, {1}});
  const double p = 0.4;
  std::vector<Rng> coins;
  for (int u = 0; u < 3; ++u) coins.push_back(MakeStream(9, StreamKind::kTransmit, u));
  const int slots = 100000;
  int success = 0;
  for (int t = 0; t < slots; ++t) {
    std::vector<int> actions(3);
    for (int u = 0; u < 3; ++u) actions[u] = DrawTransmit(coins[u], p) ? 1 : 0;
    success += StepMedium(ActionProfile(actions, 1), field, radio)[0].ack;
  }
  const double expected = AnalyticProbabilities(p, 3).success;
  const double se = std::sqrt(expected * (1 - expected) / slots);
  EXPECT_NEAR(static_cast<double>(success) / slots, expected, 3 * se);
}

TEST(DrawTransmitTest, Extremes) {
  Rng rng = MakeStream(1, StreamKind::kTransmit);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_FALSE(DrawTransmit(rng, 0.0));
    EXPECT_TRUE(DrawTransmit(rng, 1.0));
  }
}

TEST(DrawTransmitTest, HalfFrequency) {
  Rng rng = MakeStream(2, StreamKind::kTransmit);
  int hits = 0;
  for (int i = 0; i < 100000; ++i) hits += DrawTransmit(rng, 0.5);
  EXPECT_GE(hits / 1e5, 0.49);
  EXPECT_LE(hits / 1e5, 0.51);
}

}  // namespace
}  // namespace spectrum
