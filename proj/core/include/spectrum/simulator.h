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

#ifndef SPECTRUM_SIMULATOR_H_
#define SPECTRUM_SIMULATOR_H_

#include <cstdint>
#include <vector>

#include "spectrum/action_profile.h"
#include "spectrum/config.h"
#include "spectrum/metrics.h"
#include "spectrum/snapshot.h"

namespace spectrum {

struct TrainingResult {
  std::vector<AgentSnapshot> snapshots;  // one per user
  MetricsRecord metrics;
};

// R iterations of E episodes of T slots. Every slot all users build their
// input, act, the medium resolves and each user records its reward and the
// double-Q target; after each iteration every online network takes
// `train_steps` gradient steps on the iteration's episodes and the target
// network is refreshed. Throws ConfigError before any work when `cfg` is
// invalid. The random policy trains nothing and returns zero networks.
TrainingResult RunTraining(const SimConfig& cfg, std::uint64_t seed,
                           int run = 0);

// Frozen networks, no exploration, EvalEpisodes() x T slots on the
// evaluation streams. Load counters start from the snapshots. Throws
// std::invalid_argument when the snapshots do not match `cfg` (ignored for
// the random policy).
MetricsRecord RunEvaluation(const SimConfig& cfg, std::uint64_t seed,
                            const std::vector<AgentSnapshot>& snapshots,
                            int run = 0);

// Every user always plays its entry of `profile`, gated by p_t. Used to
// check oracle allocations against the medium.
MetricsRecord RunFixedAllocation(const SimConfig& cfg, std::uint64_t seed,
                                 const ActionProfile& profile, int run = 0);

// Zero-weight snapshots with empty counters, one per user.
std::vector<AgentSnapshot> ZeroSnapshots(const SimConfig& cfg);

// Joint action of the final logged slot, and whether it held over the
// second half of the final episode. Requires logged rows.
struct ConvergedProfile {
  ActionProfile profile;
  bool stable;  // identical over the last T slots
};
ConvergedProfile FinalProfile(const MetricsRecord& record);

// Exploration rate and softmax temperature at iteration i (0-based).
double EpsilonAt(const SimConfig& cfg, int iteration);
double BetaAt(const SimConfig& cfg, int iteration);

// Transmit probability used inside the load estimator, kept strictly
// below 1 so the inversion stays defined.
double EstimatorProbability(double p_t);

}  // namespace spectrum

#endif  // SPECTRUM_SIMULATOR_H_
