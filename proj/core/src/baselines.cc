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

#include "spectrum/baselines.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "spectrum/aloha.h"

namespace spectrum {

int SoftmaxPolicy(std::span<const double> q, double beta, Rng& rng) {
  if (q.empty()) throw std::invalid_argument("softmax over no actions");
  if (!(beta >= 0.0)) throw std::invalid_argument("temperature must be >= 0");
  const double top = *std::max_element(q.begin(), q.end());
  std::vector<double> weights(q.size());
  for (size_t a = 0; a < q.size(); ++a) {
    weights[a] = std::exp(beta * (q[a] - top));
  }
  std::discrete_distribution<int> dist(weights.begin(), weights.end());
  return dist(rng);
}

int RandomAccessPolicy(int num_channels, double p_t, Rng& transmit_rng,
                       Rng& channel_rng) {
  if (num_channels < 1) throw std::invalid_argument("need K >= 1");
  if (!DrawTransmit(transmit_rng, p_t)) return 0;
  return std::uniform_int_distribution<int>(1, num_channels)(channel_rng);
}

}  // namespace spectrum
