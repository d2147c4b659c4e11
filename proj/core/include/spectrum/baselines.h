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

#ifndef SPECTRUM_BASELINES_H_
#define SPECTRUM_BASELINES_H_

#include <span>

#include "spectrum/rng.h"

namespace spectrum {

// Samples a in {0..K} with probability proportional to exp(beta * q[a]).
// Used by the softmax baseline in place of top-M/least-load selection.
int SoftmaxPolicy(std::span<const double> q, double beta, Rng& rng);

// Silent with probability 1-p_t, otherwise a uniform channel in 1..K. The
// transmit coin comes from `transmit_rng` (one draw per call) so it pairs
// with the learned policies' gate.
int RandomAccessPolicy(int num_channels, double p_t, Rng& transmit_rng,
                       Rng& channel_rng);

}  // namespace spectrum

#endif  // SPECTRUM_BASELINES_H_
