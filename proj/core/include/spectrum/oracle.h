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

#ifndef SPECTRUM_ORACLE_H_
#define SPECTRUM_ORACLE_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "spectrum/action_profile.h"
#include "spectrum/fading.h"

namespace spectrum {

struct SimConfig;

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every user's utility for every joint action of a single slot. Profiles
// are indexed lexicographically: user 0 is the most significant digit in
// base K+1, so increasing index means lexicographically larger profile.
class UtilityTable {
 public:
  static constexpr std::size_t kMaxProfiles = 1'000'000;

  // Throws InstanceTooLarge when (K+1)^N exceeds kMaxProfiles.
  static UtilityTable Build(const ChannelGainField& field,
                            const RadioConfig& radio);

  int num_users() const { return num_users_; }
  int num_channels() const { return num_channels_; }
  std::size_t num_profiles() const { return num_profiles_; }

  std::size_t IndexOf(const ActionProfile& profile) const;
  ActionProfile ProfileAt(std::size_t index) const;
  std::span<const double> utilities(std::size_t index) const {
    return {u_.data() + index * num_users_, static_cast<size_t>(num_users_)};
  }
  std::span<const double> utilities(const ActionProfile& profile) const {
    return utilities(IndexOf(profile));
  }

 private:
  int num_users_ = 0;
  int num_channels_ = 0;
  std::size_t num_profiles_ = 0;
  std::vector<double> u_;
};

double Welfare(std::span<const double> utilities);

struct OptimalProfile {
  ActionProfile profile;
  double welfare;
};

// Exhaustive search for maximal social welfare; the lexicographically
// smallest maximizer wins ties.
OptimalProfile BruteForceOptimal(const UtilityTable& table);

// No user can strictly raise its own utility by a unilateral deviation.
bool IsPureNash(const ActionProfile& profile, const UtilityTable& table);

std::vector<ActionProfile> PureNashProfiles(const UtilityTable& table);

// strategies[n][a]: probability user n plays a. Each row must sum to 1
// (within 1e-9) and be nonnegative, otherwise std::invalid_argument.
std::vector<double> MixedStrategyPayoff(
    const std::vector<std::vector<double>>& strategies,
    const UtilityTable& table);

// Best achievable per-user success probability when every user gates its
// transmission with p_t and then picks one channel or stays silent: the
// maximum over loads L_1 + ... + L_K <= N of
// (1/N) sum_k L_k p_t (1-p_t)^(L_k-1). When K divides N the balanced split
// L = N/K attains it.
double BestSplitSuccessProbability(int num_users, int num_channels,
                                   double p_t);

// Mean of B*log2(1 + snr*X) over a user's M best channel gains X.
// iid/ar1: Monte-Carlo over K unit-mean exponential draws; fixed: exact
// average of each user's M best gains.
double TopChannelsRate(const SimConfig& cfg, int samples = 100'000);

// TopChannelsRate with M = 1: the mean rate of each user's best channel.
double BestChannelRate(const SimConfig& cfg, int samples = 100'000);

// Per-user rate bound (bits/s), the "artifact bound":
//   BestSplitSuccessProbability(N, K, p_t) * BestChannelRate(cfg).
double UpperBoundCurve(const SimConfig& cfg);

}  // namespace spectrum

#endif  // SPECTRUM_ORACLE_H_
