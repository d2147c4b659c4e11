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

#include "spectrum/aloha.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spectrum {

ActionProfile::ActionProfile(std::vector<int> actions, int num_channels)
    : actions_(std::move(actions)), num_channels_(num_channels) {
  if (num_channels_ < 1) {
    throw std::invalid_argument("action profile needs at least one channel");
  }
  for (int a : actions_) {
    if (a < 0 || a > num_channels_) {
      throw std::invalid_argument("action " + std::to_string(a) +
                                  " outside {0.." +
                                  std::to_string(num_channels_) + "}");
    }
  }
}

std::vector<int> ActionProfile::ChannelCounts() const {
  std::vector<int> counts(num_channels_ + 1, 0);
  for (int a : actions_) ++counts[a];
  return counts;
}

std::vector<Observation> StepMedium(const ActionProfile& profile,
                                    const ChannelGainField& field,
                                    const RadioConfig& radio) {
  const std::vector<int> counts = profile.ChannelCounts();
  std::vector<Observation> out(profile.num_users());
  for (int n = 0; n < profile.num_users(); ++n) {
    const int k = profile.action(n);
    if (k == 0 || counts[k] != 1) continue;
    out[n].realized_rate = SoleTransmitterRate(field.gain(n, k), radio);
    // A zero power gain delivers nothing; keep ack <=> rate > 0.
    out[n].ack = out[n].realized_rate > 0.0;
  }
  return out;
}

AlohaProbabilities AnalyticProbabilities(double p_t, int load) {
  if (!(p_t >= 0.0 && p_t <= 1.0)) {
    throw std::invalid_argument("transmission probability outside [0, 1]");
  }
  if (load < 1) throw std::invalid_argument("load must be >= 1");
  AlohaProbabilities p;
  p.no_transmit = 1.0 - p_t;
  p.success = p_t * std::pow(1.0 - p_t, load - 1);
  p.collision = 1.0 - (p.no_transmit + p.success);
  return p;
}

bool DrawTransmit(Rng& rng, double p_t) {
  // Always consume one draw so the stream position is policy-independent.
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return u < p_t;
}

}  // namespace spectrum
