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
#include <optional>
#include <vector>

#include "gtest/gtest.h"
#include "spectrum/aloha.h"
#include "spectrum/load_estimator.h"
#include "spectrum/rng.h"

namespace spectrum {
namespace {

LoadCounters WithCounts(int sent, int delivered) {
  LoadCounters c(1, sent > 0 ? sent : 1);
  for (int i = 0; i < sent; ++i) c.Record(1, true, i < delivered);
  return c;
}

TEST(LoadCountersTest, RecordExamples) {
  LoadCounters c(2, 10);
  c.Record(1, true, true);
  EXPECT_EQ(c.transmissions(1), 1);
  EXPECT_EQ(c.successes(1), 1);
  c.Record(0, false, false);
  EXPECT_EQ(c.transmissions(1), 1);
  EXPECT_EQ(c.successes(1), 1);
  EXPECT_EQ(c.transmissions(2), 0);
  EXPECT_THROW(c.Record(1, false, true), std::invalid_argument);
  EXPECT_THROW(c.Record(3, true, false), std::invalid_argument);
}

TEST(LoadCountersTest, WindowForgetsOldSlots) {
  LoadCounters c(2, 3);
  c.Record(1, true, true);
  c.Record(1, true, false);
  c.Record(2, true, true);
  c.Record(0, false, false);  // evicts the first success on channel 1
  EXPECT_EQ(c.transmissions(1), 1);
  EXPECT_EQ(c.successes(1), 0);
  EXPECT_EQ(c.transmissions(2), 1);
  const auto rebuilt = LoadCounters::FromEntries(2, 3, c.WindowEntries());
  EXPECT_EQ(rebuilt.transmissions(1), 1);
  EXPECT_EQ(rebuilt.successes(2), 1);
  EXPECT_EQ(rebuilt.WindowEntries().size(), 3u);
  c.Reset();
  EXPECT_EQ(c.transmissions(2), 0);
  EXPECT_TRUE(c.WindowEntries().empty());
}

TEST(LoadCountersTest, SuccessNeverExceedsTransmissions) {
  Rng rng = MakeStream(4, StreamKind::kPolicy);
  LoadCounters c(3, 17);
  std::uniform_int_distribution<int> ch(0, 3);
  for (int t = 0; t < 5000; ++t) {
    const int k = ch(rng);
    c.Record(k, k != 0, k != 0 && rng() % 2 == 0);
    for (int j = 1; j <= 3; ++j) {
      ASSERT_LE(c.successes(j), c.transmissions(j));
      ASSERT_GE(c.successes(j), 0);
    }
  }
}

TEST(EstimateLoadTest, Examples) {
  EXPECT_EQ(EstimateLoad(WithCounts(4, 4), 1, 0.5, 10), 1);
  EXPECT_EQ(EstimateLoad(WithCounts(4, 1), 1, 0.5, 10), 3);
  // log(0.3)/log(0.5) = 1.7370 -> ceil 2.
  EXPECT_NEAR(std::log(0.3) / std::log(0.5), 1.7370, 1e-4);
  EXPECT_EQ(EstimateLoad(WithCounts(10, 3), 1, 0.5, 10), 3);
}

TEST(EstimateLoadTest, UnknownAndSaturated) {
  EXPECT_EQ(EstimateLoad(LoadCounters(1, 5), 1, 0.5, 10), std::nullopt);
  EXPECT_EQ(EstimateLoad(WithCounts(6, 0), 1, 0.5, 7), 7);
  EXPECT_EQ(EstimateLoad(WithCounts(100, 1), 1, 0.5, 4), 4);  // clamped to N
}

TEST(EstimateLoadTest, RejectsDegenerateProbability) {
  const auto c = WithCounts(4, 2);
  EXPECT_THROW(EstimateLoad(c, 1, 0.0, 5), std::invalid_argument);
  EXPECT_THROW(EstimateLoad(c, 1, 1.0, 5), std::invalid_argument);
}

TEST(EstimateLoadTest, ExactInversionOverGrid) {
  for (int i = 1; i <= 9; ++i) {
    const double p = i / 10.0;
    for (int l = 1; l <= 20; ++l) {
      EXPECT_EQ(LoadFromRatio(std::pow(1 - p, l - 1), p, 20), l)
          << "p=" << p << " L=" << l;
    }
  }
}

TEST(EstimateLoadTest, ExactInversionThroughCounters) {
  for (int l = 1; l <= 12; ++l) {
    const int sent = 1 << (l - 1);
    EXPECT_EQ(EstimateLoad(WithCounts(sent, 1), 1, 0.5, 20), l);
  }
}

TEST(EstimateLoadTest, NonincreasingInSuccessRatio) {
  for (double p : {0.1, 0.3, 0.5, 0.8}) {
    int previous = 1 << 30;
    for (int s = 1; s <= 200; ++s) {
      const int l = LoadFromRatio(s / 200.0, p, 50);
      EXPECT_LE(l, previous);
      previous = l;
    }
  }
}

// L symmetric users on one channel, each gating with p_t; the estimate
// of user 0 after 10^4 slots over independent trials.
TEST(EstimateLoadTest, SymmetricSimulationConsistency) {
  const double p = 0.5;
  const int slots = 10000, trials = 40;
  for (int l = 1; l <= 5; ++l) {
    int exact = 0, within = 0;
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<Rng> coins;
      for (int u = 0; u < l; ++u) {
        coins.push_back(MakeStream(100 * l + trial, StreamKind::kTransmit, u));
      }
      LoadCounters c(1, slots);
      for (int t = 0; t < slots; ++t) {
        int senders = 0;
        bool self = false;
        for (int u = 0; u < l; ++u) {
          const bool tx = DrawTransmit(coins[u], p);
          senders += tx;
          if (u == 0) self = tx;
        }
        c.Record(self ? 1 : 0, self, self && senders == 1);
      }
      const int est = *EstimateLoad(c, 1, p, 10);
      exact += est == l;
      within += est == l || est == l + 1;
    }
    // The ceiling puts an unbiased ratio on either side of an integer
    // exponent, so the estimate is L or L+1; a lone user is always exact.
    EXPECT_GE(within, 0.9 * trials) << "L=" << l;
    if (l == 1) {
      EXPECT_EQ(exact, trials);
    }
  }
}

TEST(EstimatedCountVectorTest, Examples) {
  EXPECT_EQ(EstimatedCountVector({2, 1}, 5, 2), (std::vector<int>{2, 2, 1}));
  EXPECT_EQ(EstimatedCountVector({3, 3}, 4, 2), (std::vector<int>{0, 3, 3}));
  EXPECT_EQ(EstimatedCountVector({std::nullopt, 1}, 4, 2),
            (std::vector<int>{1, 2, 1}));
}

TEST(EstimatedCountVectorTest, PriorRoundsUp) {
  EXPECT_EQ(PriorLoad(10, 3), 4);
  EXPECT_EQ(PriorLoad(10, 5), 2);
  EXPECT_EQ(ResolvedLoads({std::nullopt, 7}, 10), (std::vector<int>{5, 7}));
  EXPECT_EQ(ResolvedLoads({std::nullopt, 7, 1}, 10), (std::vector<int>{4, 7, 1}));
}

}  // namespace
}  // namespace spectrum
