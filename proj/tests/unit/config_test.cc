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

#include <filesystem>
#include <fstream>
#include <string>

#include "gtest/gtest.h"
#include "spectrum/config.h"

namespace spectrum {
namespace {

ConfigError::Kind KindOf(const std::string& text,
                         const std::vector<std::string>& overrides = {}) {
  try {
    ParseConfigText(text, overrides);
  } catch (const ConfigError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ConfigError::Kind::kSyntax;
}

TEST(ParseConfigTest, EmptyFileGivesDeskDefaults) {
  const auto path = std::filesystem::temp_directory_path() / "spectrum_empty.cfg";
  std::ofstream(path).close();
  const SimConfig cfg = ParseConfig(path.string());
  EXPECT_EQ(cfg.num_users, 10);
  EXPECT_EQ(cfg.num_channels, 5);
  EXPECT_EQ(cfg.top_m, 2);
  EXPECT_EQ(cfg.iterations, 500);
  EXPECT_EQ(cfg.episodes, 8);
  EXPECT_EQ(cfg.slots, 20);
  EXPECT_DOUBLE_EQ(cfg.TransmitProbability(), 0.5);
  EXPECT_EQ(cfg.gamma, 0.95);
  EXPECT_EQ(cfg.alpha, 0.05);
  EXPECT_EQ(cfg.radio.snr_db, 35.0);
  EXPECT_EQ(cfg.radio.bandwidth_hz, 20e6);
  EXPECT_EQ(cfg.radio.doppler_hz, 100.0);
  EXPECT_EQ(cfg.window, 100);
  EXPECT_EQ(cfg.policy, Policy::kD3rl);
  EXPECT_EQ(cfg.observability, Observability::kDistributed);
  std::filesystem::remove(path);
}

TEST(ParseConfigTest, OverrideBreakingUserChannelOrderRejected) {
  try {
    ParseConfigText("N = 50\n", {"K=100"});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.kind(), ConfigError::Kind::kInvariant);
    EXPECT_NE(std::string(e.what()).find("N > K"), std::string::npos);
  }
}

TEST(ParseConfigTest, DiscountAndStepSizeAccepted) {
  const SimConfig cfg = ParseConfigText("gamma = 0.95\nalpha = 0.05\n");
  EXPECT_EQ(cfg.gamma, 0.95);
  EXPECT_EQ(cfg.alpha, 0.05);
  const std::string echoed = ToConfigText(cfg);
  EXPECT_NE(echoed.find("gamma = 0.95\n"), std::string::npos);
  EXPECT_NE(echoed.find("alpha = 0.05\n"), std::string::npos);
}

TEST(ParseConfigTest, DistinctErrors) {
  EXPECT_THROW(ParseConfig("/nonexistent/spectrum.cfg"), ConfigError);
  try {
    ParseConfig("/nonexistent/spectrum.cfg");
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.kind(), ConfigError::Kind::kMissingFile);
  }
  EXPECT_EQ(KindOf("bogus = 1\n"), ConfigError::Kind::kUnknownKey);
  EXPECT_EQ(KindOf("N 10\n"), ConfigError::Kind::kSyntax);
  EXPECT_EQ(KindOf("N = ten\n"), ConfigError::Kind::kBadValue);
  EXPECT_EQ(KindOf("M = 6\n"), ConfigError::Kind::kInvariant);
  EXPECT_EQ(KindOf("gamma = 1.5\n"), ConfigError::Kind::kInvariant);
}

TEST(ParseConfigTest, OverridesApplyAfterFile) {
  const SimConfig cfg = ParseConfigText("N = 12 # users\n", {"N=14", "p_T = 0.3"});
  EXPECT_EQ(cfg.num_users, 14);
  EXPECT_DOUBLE_EQ(cfg.TransmitProbability(), 0.3);
}

TEST(ParseConfigTest, RoundTripsThroughText) {
  const SimConfig cfg = ParseConfigText(
      "channel_mode = fixed\nfixed_gains = 2,1;1,2;1,1\nN = 3\nK = 2\nM = 1\n"
      "seeds = 4,5,6\nobservability = genie\npolicy = softmax\n");
  const SimConfig again = ParseConfigText(ToConfigText(cfg));
  EXPECT_EQ(ToConfigText(again), ToConfigText(cfg));
  EXPECT_EQ(again.fixed_gains, cfg.fixed_gains);
  EXPECT_EQ(again.seeds, (std::vector<std::uint64_t>{4, 5, 6}));
  EXPECT_EQ(again.observability, Observability::kGenie);
}

TEST(ParseConfigTest, UnderloadedNeedsFlag) {
  EXPECT_EQ(KindOf("N = 2\nK = 2\n"), ConfigError::Kind::kInvariant);
  EXPECT_NO_THROW(ParseConfigText("N = 2\nK = 2\nallow_underloaded = true\n"));
}

TEST(ParseConfigTest, TransmitProbabilityCapped) {
  const SimConfig cfg =
      ParseConfigText("N = 2\nK = 3\nM = 1\nallow_underloaded = true\n");
  EXPECT_EQ(cfg.TransmitProbability(), 1.0);
}

TEST(ParseConfigTest, EveryKeyListed) {
  const std::string text = ToConfigText(SimConfig{});
  for (const std::string& key : ConfigKeys()) {
    EXPECT_NE(text.find(key + " = "), std::string::npos) << key;
  }
}

}  // namespace
}  // namespace spectrum
