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

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "gtest/gtest.h"
#include "spectrum/config.h"
#include "spectrum/oracle.h"
#include "spectrum/rng.h"

namespace spectrum {
namespace {

RadioConfig UnitRadio() {
  RadioConfig radio;
  radio.snr_db = 0;
  radio.bandwidth_hz = 1;
  return radio;
}

UtilityTable TwoByTwo() {
  return UtilityTable::Build(ChannelGainField::Fixed({{2, 1}, {1, 2}}),
                             UnitRadio());
}

SimConfig FixedConfig(std::vector<std::vector<double>> gains, double p_t) {
  SimConfig cfg;
  cfg.num_users = static_cast<int>(gains.size());
  cfg.num_channels = static_cast<int>(gains[0].size());
  cfg.top_m = 1;
  cfg.allow_underloaded = true;
  cfg.p_transmit = p_t;
  cfg.channel_mode = FadingMode::kFixed;
  cfg.fixed_gains = std::move(gains);
  cfg.radio = UnitRadio();
  cfg.Validate();
  return cfg;
}

// Every placement of at most N users over K channels, by recursion; users
// left over at the end are silent.
double EnumeratedBestSplit(int n, int k, double p) {
  std::function<double(int, int)> rec = [&](int left, int channels) -> double {
    if (channels == 0) return 0.0;
    double best = -1;
    for (int l = 0; l <= left; ++l) {
      const double here = l == 0 ? 0.0 : l * p * std::pow(1 - p, l - 1);
      best = std::max(best, here + rec(left - l, channels - 1));
    }
    return best;
  };
  return rec(n, k) / n;
}

TEST(BruteForceOptimalTest, TwoByTwo) {
  const auto best = BruteForceOptimal(TwoByTwo());
  EXPECT_EQ(best.profile, ActionProfile({1, 2}, 2));
  EXPECT_NEAR(best.welfare, 2 * std::log2(3.0), 1e-12);
  EXPECT_NEAR(best.welfare, 3.1699, 1e-4);
}

TEST(BruteForceOptimalTest, SingleUser) {
  const auto table =
      UtilityTable::Build(ChannelGainField::Fixed({{1.0}}), UnitRadio());
  const auto best = BruteForceOptimal(table);
  EXPECT_EQ(best.profile, ActionProfile({1}, 1));
  EXPECT_DOUBLE_EQ(best.welfare, 1.0);
}

TEST(BruteForceOptimalTest, OneChannelOneTransmitter) {
  const double g = 1.7;
  const auto table =
      UtilityTable::Build(ChannelGainField::Fixed({{g}, {g}}), UnitRadio());
  const auto best = BruteForceOptimal(table);
  EXPECT_DOUBLE_EQ(best.welfare, std::log2(1 + g));
  const auto counts = best.profile.ChannelCounts();
  EXPECT_EQ(counts[1], 1);
  EXPECT_EQ(best.profile, ActionProfile({0, 1}, 1));  // lexicographic tie
}

TEST(BruteForceOptimalTest, RefusesLargeInstances) {
  Rng rng = MakeStream(1, StreamKind::kFading);
  EXPECT_THROW(
      UtilityTable::Build(ChannelGainField::Iid(9, 5, rng), UnitRadio()),
      InstanceTooLarge);
}

TEST(UtilityTableTest, IndexRoundTrip) {
  const auto table = TwoByTwo();
  EXPECT_EQ(table.num_profiles(), 9u);
  for (size_t i = 0; i < table.num_profiles(); ++i) {
    EXPECT_EQ(table.IndexOf(table.ProfileAt(i)), i);
    for (double u : table.utilities(i)) EXPECT_GE(u, 0.0);
  }
  EXPECT_EQ(table.ProfileAt(1), ActionProfile({0, 1}, 2));
}

TEST(IsPureNashTest, Examples) {
  const auto table = TwoByTwo();
  EXPECT_TRUE(IsPureNash(ActionProfile({1, 2}, 2), table));
  EXPECT_FALSE(IsPureNash(ActionProfile({1, 1}, 2), table));
  const auto single =
      UtilityTable::Build(ChannelGainField::Fixed({{0.5, 2.0}}), UnitRadio());
  EXPECT_TRUE(IsPureNash(ActionProfile({2}, 2), single));
  EXPECT_FALSE(IsPureNash(ActionProfile({1}, 2), single));
}

TEST(IsPureNashTest, ProfilesListMatchesPredicate) {
  const auto table = TwoByTwo();
  const auto ne = PureNashProfiles(table);
  EXPECT_EQ(ne.size(), 2u);
  for (const auto& p : ne) EXPECT_TRUE(IsPureNash(p, table));
}

TEST(MixedStrategyPayoffTest, Examples) {
  const auto single =
      UtilityTable::Build(ChannelGainField::Fixed({{1.0}}), UnitRadio());
  EXPECT_DOUBLE_EQ(MixedStrategyPayoff({{0.5, 0.5}}, single)[0], 0.5);

  const auto pair =
      UtilityTable::Build(ChannelGainField::Fixed({{1.0}, {1.0}}), UnitRadio());
  EXPECT_EQ(MixedStrategyPayoff({{0, 1}, {0, 1}}, pair),
            (std::vector<double>{0, 0}));
  EXPECT_DOUBLE_EQ(MixedStrategyPayoff({{0, 1}, {0.5, 0.5}}, pair)[0], 0.5);
}

TEST(MixedStrategyPayoffTest, OneHotEqualsPureEntry) {
  const auto table = TwoByTwo();
  for (size_t i = 0; i < table.num_profiles(); ++i) {
    const ActionProfile p = table.ProfileAt(i);
    std::vector<std::vector<double>> sigma(2, std::vector<double>(3, 0.0));
    for (int n = 0; n < 2; ++n) sigma[n][p.action(n)] = 1.0;
    const auto payoff = MixedStrategyPayoff(sigma, table);
    const auto pure = table.utilities(i);
    EXPECT_EQ(payoff, std::vector<double>(pure.begin(), pure.end()));
  }
}

TEST(MixedStrategyPayoffTest, RejectsUnnormalized) {
  EXPECT_THROW(MixedStrategyPayoff({{0.5, 0.4, 0.0}, {1, 0, 0}}, TwoByTwo()),
               std::invalid_argument);
}

TEST(UpperBoundCurveTest, Examples) {
  EXPECT_DOUBLE_EQ(UpperBoundCurve(FixedConfig({{1.0}}, 1.0)), 1.0);
  EXPECT_DOUBLE_EQ(UpperBoundCurve(FixedConfig({{1.0}, {1.0}}, 0.5)), 0.25);
  // Always transmitting: one user alone beats two colliding.
  EXPECT_DOUBLE_EQ(UpperBoundCurve(FixedConfig({{1.0}, {1.0}}, 1.0)), 0.5);
}

TEST(UpperBoundCurveTest, UsesBestChannelForAnyM) {
  SimConfig a = FixedConfig({{1.0, 3.0}, {2.0, 1.0}, {1.0, 1.0}}, 0.5);
  SimConfig b = a;
  b.top_m = 2;
  EXPECT_EQ(UpperBoundCurve(a), UpperBoundCurve(b));
  RadioConfig radio = a.radio;
  const double best = (SoleTransmitterRate(3.0, radio) +
                       SoleTransmitterRate(2.0, radio) +
                       SoleTransmitterRate(1.0, radio)) / 3;
  EXPECT_NEAR(BestChannelRate(b), best, 1e-12);
}

TEST(UpperBoundCurveTest, BestSplitMatchesEnumeration) {
  for (int n = 1; n <= 9; ++n) {
    for (int k = 1; k <= 4; ++k) {
      for (double p : {0.1, 0.3, 0.5, 0.9, 1.0}) {
        EXPECT_NEAR(BestSplitSuccessProbability(n, k, p),
                    EnumeratedBestSplit(n, k, p), 1e-14);
      }
    }
  }
}

TEST(UpperBoundCurveTest, BalancedSplitWhenKDividesN) {
  const double p = 0.5;
  EXPECT_DOUBLE_EQ(BestSplitSuccessProbability(10, 5, p), p * (1 - p));
  // K not dividing N: the best split beats the rounded-up balanced load.
  EXPECT_GT(BestSplitSuccessProbability(10, 3, 0.3),
            0.3 * std::pow(0.7, 3));
  // Silencing one user leaves three users on every channel.
  EXPECT_NEAR(BestSplitSuccessProbability(10, 3, 0.3),
              9 * 0.3 * 0.7 * 0.7 / 10, 1e-15);
}

TEST(UpperBoundCurveTest, TopChannelsRateIidMatchesSampling) {
  SimConfig cfg;  // N=10, K=5, M=2, iid
  Rng rng = MakeStream(77, StreamKind::kPolicy);
  std::exponential_distribution<double> e(1.0);
  const int samples = 200000;
  double sum = 0, sq = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> x(5);
    for (double& v : x) v = e(rng);
    std::sort(x.rbegin(), x.rend());
    const double r = (SoleTransmitterRate(x[0], cfg.radio) +
                      SoleTransmitterRate(x[1], cfg.radio)) / 2;
    sum += r;
    sq += r * r;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sq / samples - mean * mean) / samples);
  EXPECT_NEAR(TopChannelsRate(cfg), mean, 5 * se);
  EXPECT_EQ(TopChannelsRate(cfg), TopChannelsRate(cfg));  // fixed stream
}

}  // namespace
}  // namespace spectrum
