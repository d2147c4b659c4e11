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

#ifndef SPECTRUM_AGENT_H_
#define SPECTRUM_AGENT_H_

#include <span>
#include <vector>

#include "spectrum/aloha.h"
#include "spectrum/fading.h"
#include "spectrum/load_estimator.h"
#include "spectrum/qnetwork.h"
#include "spectrum/rng.h"

namespace spectrum {

// The `top_m` channels (1..K) with the largest Q-values, best first. Equal
// Q-values rank the lower channel first. Uses a bounded heap of size top_m,
// i.e. O(K log M) comparisons, each counted in `counter` when given.
std::vector<int> TopChannels(std::span<const double> q, int top_m,
                             OpCounter* counter = nullptr);

// Least-loaded channel among TopChannels(q, top_m). Load ties go to the
// higher Q-value, then to the lower index. `loads[k-1]` is the load of
// channel k. Throws std::invalid_argument when top_m is outside [1, K].
int SelectChannel(std::span<const double> q, std::span<const int> loads,
                  int top_m, OpCounter* counter = nullptr);

// Lowest index among the maxima.
int ArgMax(std::span<const double> values);

// Transmit gate with probability p_t, then SelectChannel; with probability
// `epsilon` a uniform channel replaces the selection. Consumes exactly one
// draw of `transmit_rng` per call.
int ActFromQ(std::span<const double> q, std::span<const int> loads, int top_m,
             double p_t, double epsilon, Rng& transmit_rng, Rng& explore_rng);

struct ActOutcome {
  int action;
  LstmState state;
  std::vector<double> q;
};

ActOutcome Act(const QNetworkParams& params, std::span<const double> input,
               const LstmState& state, std::span<const int> loads, int top_m,
               double p_t, double epsilon, Rng& transmit_rng,
               Rng& explore_rng);

// r + gamma * q2_next[argmax q1_next]: the online network picks the action,
// the target network scores it.
double BuildDoubleQTarget(double reward, std::span<const double> q1_next,
                          std::span<const double> q2_next, double gamma);

// Realized rate normalized by B*log2(1 + snr), so a unit power gain pays 1.
double RewardFromObservation(const Observation& obs, const RadioConfig& radio);

// Actions, observations and per-channel loads seen by one user, one record
// per slot.
class AgentHistory {
 public:
  // Throws std::logic_error when the loads vector changes length.
  void Append(int action, const Observation& obs, std::vector<int> loads);
  void Clear();

  size_t size() const { return actions_.size(); }
  const std::vector<int>& actions() const { return actions_; }
  const std::vector<Observation>& observations() const { return observations_; }
  const std::vector<std::vector<int>>& loads() const { return loads_; }

 private:
  std::vector<int> actions_;
  std::vector<Observation> observations_;
  std::vector<std::vector<int>> loads_;
};

// DQN1 selects, DQN2 evaluates; DQN2 is refreshed from DQN1 once per
// training iteration.
struct NetworkPair {
  QNetworkParams online;
  QNetworkParams target;

  void Sync() { target = SyncParams(online); }
};

// Per-user mutable state. `network` indexes the NetworkPair the user reads;
// users own distinct pairs unless weights are shared.
struct AgentState {
  int network = 0;
  LstmState online_state;
  LstmState target_state;
  LoadCounters counters;
  AgentHistory history;
  int top_m = 1;
  double exploration_epsilon = 0.0;

  // Q-values of both networks for the most recent input.
  std::vector<double> online_q;
  std::vector<double> target_q;
};

AgentState MakeAgentState(int network, const NetworkShape& shape, int top_m,
                          int window);

// Resets both recurrent states to zero.
void BeginEpisode(AgentState& agent, const NetworkShape& shape);

// Feeds one input through both networks, advancing both recurrent states and
// caching the Q-values.
void FeedInput(AgentState& agent, const NetworkPair& networks,
               std::span<const double> input, OpCounter* counter = nullptr);

// Appends one history record and updates the load counters.
void AppendHistory(AgentState& agent, int action, const Observation& obs,
                   std::vector<int> loads);

}  // namespace spectrum

#endif  // SPECTRUM_AGENT_H_
