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

#ifndef SPECTRUM_ALOHA_H_
#define SPECTRUM_ALOHA_H_

#include <vector>

#include "spectrum/action_profile.h"
#include "spectrum/fading.h"
#include "spectrum/rng.h"

namespace spectrum {

struct Observation {
  bool ack = false;
  double realized_rate = 0.0;  // bits/s; > 0 exactly when ack
};

// Resolves one slot of multi-channel slotted ALOHA. A user is acknowledged
// iff it is the unique transmitter on its channel; there is no capture.
std::vector<Observation> StepMedium(const ActionProfile& profile,
                                    const ChannelGainField& field,
                                    const RadioConfig& radio);

struct AlohaProbabilities {
  double no_transmit;
  double success;
  double collision;
};

// Per-user outcome probabilities when `load` users share a channel and each
// transmits with probability p_t. collision is taken as the complement so
// the three terms sum to exactly 1.
AlohaProbabilities AnalyticProbabilities(double p_t, int load);

bool DrawTransmit(Rng& rng, double p_t);

}  // namespace spectrum

#endif  // SPECTRUM_ALOHA_H_
