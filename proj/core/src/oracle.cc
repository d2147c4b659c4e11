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

#include "spectrum/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "spectrum/config.h"
#include "spectrum/rng.h"

namespace spectrum {

UtilityTable UtilityTable::Build(const ChannelGainField& field,
                                 const RadioConfig& radio) {
  UtilityTable table;
  table.num_users_ = field.num_users();
  table.num_channels_ = field.num_channels();
  const std::size_t base = table.num_channels_ + 1;
  std::size_t profiles = 1;
  for (int n = 0; n < table.num_users_; ++n) {
    profiles *= base;
    if (profiles > kMaxProfiles) {
      throw InstanceTooLarge("(K+1)^N = " + std::to_string(base) + "^" +
                             std::to_string(table.num_users_) +
                             " exceeds the enumeration limit of " +
                             std::to_string(kMaxProfiles) + " profiles");
    }
  }
  table.num_profiles_ = profiles;
  table.u_.resize(profiles * table.num_users_);
  for (std::size_t i = 0; i < profiles; ++i) {
    const ActionProfile profile = table.ProfileAt(i);
    for (int n = 0; n < table.num_users_; ++n) {
      table.u_[i * table.num_users_ + n] =
          InstantaneousUtility(profile, field, n, radio);
    }
  }
  return table;
}

std::size_t UtilityTable::IndexOf(const ActionProfile& profile) const {
  if (profile.num_users() != num_users_ ||
      profile.num_channels() != num_channels_) {
    throw std::invalid_argument("profile does not match utility table");
  }
  std::size_t index = 0;
  for (int a : profile.actions()) index = index * (num_channels_ + 1) + a;
  return index;
}

ActionProfile UtilityTable::ProfileAt(std::size_t index) const {
  std::vector<int> actions(num_users_);
  for (int n = num_users_ - 1; n >= 0; --n) {
    actions[n] = static_cast<int>(index % (num_channels_ + 1));
    index /= (num_channels_ + 1);
  }
  return ActionProfile(std::move(actions), num_channels_);
}

double Welfare(std::span<const double> utilities) {
  return std::accumulate(utilities.begin(), utilities.end(), 0.0);
}

OptimalProfile BruteForceOptimal(const UtilityTable& table) {
  if (table.num_profiles() > UtilityTable::kMaxProfiles) {
    throw InstanceTooLarge("instance too large for exhaustive search");
  }
  std::size_t best = 0;
  double best_welfare = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < table.num_profiles(); ++i) {
    const double w = Welfare(table.utilities(i));
    if (w > best_welfare) {
      best_welfare = w;
      best = i;
    }
  }
  return {table.ProfileAt(best), best_welfare};
}

bool IsPureNash(const ActionProfile& profile, const UtilityTable& table) {
  const auto base = table.utilities(profile);
  std::vector<int> actions(profile.actions().begin(), profile.actions().end());
  for (int n = 0; n < table.num_users(); ++n) {
    const int original = actions[n];
    for (int a = 0; a <= table.num_channels(); ++a) {
      if (a == original) continue;
      actions[n] = a;
      const double deviated =
          table.utilities(ActionProfile(actions, table.num_channels()))[n];
      if (deviated > base[n]) return false;
    }
    actions[n] = original;
  }
  return true;
}

std::vector<ActionProfile> PureNashProfiles(const UtilityTable& table) {
  std::vector<ActionProfile> out;
  for (std::size_t i = 0; i < table.num_profiles(); ++i) {
    ActionProfile p = table.ProfileAt(i);
    if (IsPureNash(p, table)) out.push_back(std::move(p));
  }
  return out;
}

std::vector<double> MixedStrategyPayoff(
    const std::vector<std::vector<double>>& strategies,
    const UtilityTable& table) {
  const int n_users = table.num_users();
  const int n_actions = table.num_channels() + 1;
  if (static_cast<int>(strategies.size()) != n_users) {
    throw std::invalid_argument("need one strategy per user");
  }
  for (const auto& s : strategies) {
    if (static_cast<int>(s.size()) != n_actions) {
      throw std::invalid_argument("strategy must cover actions 0..K");
    }
    double total = 0.0;
    for (double p : s) {
      if (!(p >= 0.0)) throw std::invalid_argument("negative probability");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw std::invalid_argument("strategy does not sum to 1");
    }
  }
  std::vector<double> payoff(n_users, 0.0);
  for (std::size_t i = 0; i < table.num_profiles(); ++i) {
    const ActionProfile profile = table.ProfileAt(i);
    double weight = 1.0;
    for (int n = 0; n < n_users && weight != 0.0; ++n) {
      weight *= strategies[n][profile.action(n)];
    }
    if (weight == 0.0) continue;
    const auto u = table.utilities(i);
    for (int n = 0; n < n_users; ++n) payoff[n] += weight * u[n];
  }
  return payoff;
}

double BestSplitSuccessProbability(int num_users, int num_channels,
                                   double p_t) {
  if (num_users < 1 || num_channels < 1) {
    throw std::invalid_argument("need N >= 1 and K >= 1");
  }
  auto channel_successes = [p_t](int load) {
    return load == 0 ? 0.0 : load * p_t * std::pow(1.0 - p_t, load - 1);
  };
  // best[n]: max expected successes with n users placed on the channels so
  // far; users never placed stay silent.
  const double kNone = -std::numeric_limits<double>::infinity();
  std::vector<double> best(num_users + 1, kNone);
  best[0] = 0.0;
  for (int k = 0; k < num_channels; ++k) {
    std::vector<double> next(num_users + 1, kNone);
    for (int placed = 0; placed <= num_users; ++placed) {
      if (best[placed] == kNone) continue;
      for (int load = 0; placed + load <= num_users; ++load) {
        next[placed + load] = std::max(next[placed + load],
                                       best[placed] + channel_successes(load));
      }
    }
    best = std::move(next);
  }
  return *std::max_element(best.begin(), best.end()) / num_users;
}

double TopChannelsRate(const SimConfig& cfg, int samples) {
  const int k = cfg.num_channels;
  const int m = std::min(cfg.top_m, k);
  if (cfg.channel_mode == FadingMode::kFixed) {
    const auto& gains = cfg.fixed_gains;
    double total = 0.0;
    for (const auto& row : gains) {
      std::vector<double> sorted = row;
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      double user = 0.0;
      for (int j = 0; j < m; ++j) user += SoleTransmitterRate(sorted[j], cfg.radio);
      total += user / m;
    }
    return total / static_cast<double>(gains.size());
  }
  Rng rng = MakeStream(0x5eedb0d5ULL, StreamKind::kBound);
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> draws(k);
  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    for (double& x : draws) x = exp1(rng);
    std::partial_sort(draws.begin(), draws.begin() + m, draws.end(),
                      std::greater<>());
    double sample = 0.0;
    for (int j = 0; j < m; ++j) sample += SoleTransmitterRate(draws[j], cfg.radio);
    total += sample / m;
  }
  return total / samples;
}

double BestChannelRate(const SimConfig& cfg, int samples) {
  SimConfig best = cfg;
  best.top_m = 1;
  return TopChannelsRate(best, samples);
}

double UpperBoundCurve(const SimConfig& cfg) {
  return BestSplitSuccessProbability(cfg.num_users, cfg.num_channels,
                                     cfg.TransmitProbability()) *
         BestChannelRate(cfg);
}

}  // namespace spectrum
