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

#include "spectrum/agent.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace spectrum {

std::vector<int> TopChannels(std::span<const double> q, int top_m,
                             OpCounter* counter) {
  const int num_channels = static_cast<int>(q.size()) - 1;
  if (num_channels < 1) throw std::invalid_argument("need at least one channel");
  if (top_m < 1 || top_m > num_channels) {
    throw std::invalid_argument("M=" + std::to_string(top_m) +
                                " must lie in [1, K=" +
                                std::to_string(num_channels) + "]");
  }
  // better(a, b): a ranks ahead of b.
  auto better = [&](int a, int b) {
    if (counter) ++counter->comparisons;
    return q[a] > q[b] || (q[a] == q[b] && a < b);
  };
  // Min-heap on rank: the worst kept channel sits at the front.
  std::vector<int> heap;
  heap.reserve(top_m);
  for (int k = 1; k <= num_channels; ++k) {
    if (static_cast<int>(heap.size()) < top_m) {
      heap.push_back(k);
      std::push_heap(heap.begin(), heap.end(), better);
    } else if (better(k, heap.front())) {
      std::pop_heap(heap.begin(), heap.end(), better);
      heap.back() = k;
      std::push_heap(heap.begin(), heap.end(), better);
    }
  }
  std::sort_heap(heap.begin(), heap.end(), better);
  return heap;
}

int SelectChannel(std::span<const double> q, std::span<const int> loads,
                  int top_m, OpCounter* counter) {
  if (loads.size() + 1 != q.size()) {
    throw std::invalid_argument("need one load per channel");
  }
  const std::vector<int> top = TopChannels(q, top_m, counter);
  // `top` is ordered best-first, so a strict improvement in load is the only
  // reason to move on; ties keep the higher-Q (and lower-index) channel.
  int best = top.front();
  for (size_t i = 1; i < top.size(); ++i) {
    if (counter) ++counter->comparisons;
    if (loads[top[i] - 1] < loads[best - 1]) best = top[i];
  }
  return best;
}

int ArgMax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax of empty vector");
  return static_cast<int>(std::max_element(values.begin(), values.end()) -
                          values.begin());
}

int ActFromQ(std::span<const double> q, std::span<const int> loads, int top_m,
             double p_t, double epsilon, Rng& transmit_rng, Rng& explore_rng) {
  if (!DrawTransmit(transmit_rng, p_t)) return 0;
  const int num_channels = static_cast<int>(q.size()) - 1;
  if (epsilon > 0.0 &&
      std::uniform_real_distribution<double>(0.0, 1.0)(explore_rng) < epsilon) {
    return std::uniform_int_distribution<int>(1, num_channels)(explore_rng);
  }
  return SelectChannel(q, loads, top_m);
}

ActOutcome Act(const QNetworkParams& params, std::span<const double> input,
               const LstmState& state, std::span<const int> loads, int top_m,
               double p_t, double epsilon, Rng& transmit_rng,
               Rng& explore_rng) {
  ForwardResult fwd = Forward(params, input, state);
  const int action =
      ActFromQ(fwd.q, loads, top_m, p_t, epsilon, transmit_rng, explore_rng);
  return {action, std::move(fwd.state), std::move(fwd.q)};
}

double BuildDoubleQTarget(double reward, std::span<const double> q1_next,
                          std::span<const double> q2_next, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("discount must lie in [0, 1]");
  }
  if (q1_next.size() != q2_next.size()) {
    throw std::invalid_argument("Q-vectors differ in size");
  }
  return reward + gamma * q2_next[ArgMax(q1_next)];
}

double RewardFromObservation(const Observation& obs, const RadioConfig& radio) {
  if (!obs.ack) return 0.0;
  return obs.realized_rate / SoleTransmitterRate(1.0, radio);
}

void AgentHistory::Append(int action, const Observation& obs,
                          std::vector<int> loads) {
  if (!loads_.empty() && loads.size() != loads_.front().size()) {
    throw std::logic_error("history load vector changed length");
  }
  actions_.push_back(action);
  observations_.push_back(obs);
  loads_.push_back(std::move(loads));
  if (actions_.size() != observations_.size() ||
      actions_.size() != loads_.size()) {
    throw std::logic_error("history streams misaligned");
  }
}

void AgentHistory::Clear() {
  actions_.clear();
  observations_.clear();
  loads_.clear();
}

AgentState MakeAgentState(int network, const NetworkShape& shape, int top_m,
                          int window) {
  if (top_m < 1 || top_m > shape.num_channels) {
    throw std::invalid_argument("M must lie in [1, K]");
  }
  AgentState agent{network,
                   LstmState::Zero(shape.hidden),
                   LstmState::Zero(shape.hidden),
                   LoadCounters(shape.num_channels, window),
                   {},
                   top_m,
                   0.0,
                   {},
                   {}};
  return agent;
}

void BeginEpisode(AgentState& agent, const NetworkShape& shape) {
  agent.online_state = LstmState::Zero(shape.hidden);
  agent.target_state = LstmState::Zero(shape.hidden);
}

void FeedInput(AgentState& agent, const NetworkPair& networks,
               std::span<const double> input, OpCounter* counter) {
  ForwardResult online = Forward(networks.online, input, agent.online_state,
                                 counter);
  ForwardResult target = Forward(networks.target, input, agent.target_state,
                                 counter);
  agent.online_state = std::move(online.state);
  agent.target_state = std::move(target.state);
  agent.online_q = std::move(online.q);
  agent.target_q = std::move(target.q);
}

void AppendHistory(AgentState& agent, int action, const Observation& obs,
                   std::vector<int> loads) {
  agent.counters.Record(action, action != 0, obs.ack);
  agent.history.Append(action, obs, std::move(loads));
}

}  // namespace spectrum
