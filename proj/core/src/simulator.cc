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

#include "spectrum/simulator.h"

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "spectrum/agent.h"
#include "spectrum/aloha.h"
#include "spectrum/baselines.h"
#include "spectrum/fading.h"
#include "spectrum/load_estimator.h"
#include "spectrum/qnetwork.h"
#include "spectrum/rng.h"

namespace spectrum {
namespace {

enum class Phase { kTrain, kEval };

ChannelGainField MakeField(const SimConfig& cfg, Rng& rng) {
  switch (cfg.channel_mode) {
    case FadingMode::kIid:
      return ChannelGainField::Iid(cfg.num_users, cfg.num_channels, rng);
    case FadingMode::kAr1:
      return ChannelGainField::Ar1(cfg.num_users, cfg.num_channels,
                                   cfg.Ar1Coefficient(), rng);
    case FadingMode::kFixed:
      return ChannelGainField::Fixed(cfg.fixed_gains);
  }
  throw std::logic_error("unknown fading mode");
}

std::vector<Rng> UserStreams(std::uint64_t seed, StreamKind kind, int n) {
  std::vector<Rng> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(MakeStream(seed, kind, i));
  return out;
}

// State of one run: the medium, every user's agent and the record being
// built. Training and evaluation differ only in streams, schedules and
// whether steps are collected.
class Engine {
 public:
  Engine(const SimConfig& cfg, std::uint64_t seed, int run, Phase phase)
      : cfg_(cfg),
        run_(run),
        num_users_(cfg.num_users),
        num_channels_(cfg.num_channels),
        p_t_(cfg.TransmitProbability()),
        p_est_(EstimatorProbability(p_t_)),
        fading_rng_(MakeStream(seed, phase == Phase::kTrain
                                         ? StreamKind::kFading
                                         : StreamKind::kEvalFading)),
        field_(MakeField(cfg, fading_rng_)),
        transmit_rng_(UserStreams(seed,
                                  phase == Phase::kTrain
                                      ? StreamKind::kTransmit
                                      : StreamKind::kEvalTransmit,
                                  num_users_)),
        explore_rng_(UserStreams(seed, StreamKind::kExploration, num_users_)),
        policy_rng_(UserStreams(seed,
                                phase == Phase::kTrain
                                    ? StreamKind::kPolicy
                                    : StreamKind::kEvalPolicy,
                                num_users_)),
        acc_(num_users_, cfg.gamma) {
    record_.run = run;
    record_.num_users = num_users_;
    record_.num_channels = num_channels_;
    record_.gamma = cfg.gamma;
    for (int n = 0; n < num_users_; ++n) {
      agents_.push_back(MakeAgentState(cfg.shared_weights ? 0 : n, cfg.Shape(),
                                       cfg.top_m, cfg.window));
    }
    previous_counts_ = EstimatedCountVector(
        LoadEstimate(num_channels_), num_users_, num_channels_);
  }

  std::vector<NetworkPair>& networks() { return networks_; }
  std::vector<AgentState>& agents() { return agents_; }
  void set_fixed_profile(const ActionProfile* profile) { fixed_ = profile; }

  bool UsesNetwork() const {
    return fixed_ == nullptr && cfg_.policy != Policy::kRandom;
  }

  // Plays `episodes` episodes. With `steps` set, steps[n] receives one
  // training episode per played episode for user n.
  void RunIteration(int iteration, int episodes, double epsilon, double beta,
                    std::vector<std::vector<std::vector<TrainingStep>>>* steps) {
    const double before = acc_.totals().reward;
    const std::int64_t slots_before = acc_.totals().user_slots;
    for (int e = 0; e < episodes; ++e) {
      if (steps) {
        for (auto& per_user : *steps) per_user.emplace_back();
      }
      RunEpisode(iteration, e, epsilon, beta, steps);
    }
    const std::int64_t slots = acc_.totals().user_slots - slots_before;
    record_.iteration_rewards.push_back(
        slots > 0 ? (acc_.totals().reward - before) / slots : 0.0);
  }

  void ResetCounters() {
    for (AgentState& agent : agents_) {
      agent.counters.Reset();
      agent.history.Clear();
    }
  }

  MetricsRecord Finish() {
    record_.totals = acc_.totals();
    return std::move(record_);
  }

 private:
  // Network input and the channel loads the user acts on.
  void Observe(const AgentState& agent, std::vector<double>& input,
               std::vector<int>& loads) const {
    std::vector<int> counts;
    if (cfg_.observability == Observability::kGenie) {
      counts = previous_counts_;
      loads.assign(counts.begin() + 1, counts.end());
    } else {
      const LoadEstimate est = EstimateLoads(agent.counters, p_est_, num_users_);
      counts = EstimatedCountVector(est, num_users_, num_channels_);
      loads = ResolvedLoads(est, num_users_);
    }
    input.assign(counts.begin(), counts.end());
  }

  int ChooseAction(int n, double epsilon, double beta,
                   const std::vector<int>& loads) {
    if (fixed_ != nullptr) {
      const bool transmit = DrawTransmit(transmit_rng_[n], p_t_);
      return transmit ? fixed_->action(n) : 0;
    }
    const AgentState& agent = agents_[n];
    switch (cfg_.policy) {
      case Policy::kD3rl:
        return ActFromQ(agent.online_q, loads, agent.top_m, p_t_, epsilon,
                        transmit_rng_[n], explore_rng_[n]);
      case Policy::kSoftmax:
        return SoftmaxPolicy(agent.online_q, beta, policy_rng_[n]);
      case Policy::kRandom:
        return RandomAccessPolicy(num_channels_, p_t_, transmit_rng_[n],
                                  policy_rng_[n]);
    }
    throw std::logic_error("unknown policy");
  }

  void RunEpisode(int iteration, int episode, double epsilon, double beta,
                  std::vector<std::vector<std::vector<TrainingStep>>>* steps) {
    if (started_) {
      if (cfg_.redraw_gains_each_episode) {
        field_.Redraw(fading_rng_);
      } else {
        field_.Advance(fading_rng_);
      }
    }
    started_ = true;

    const bool network = UsesNetwork();
    std::vector<std::vector<double>> inputs(num_users_);
    std::vector<std::vector<int>> loads(num_users_);
    for (int n = 0; n < num_users_; ++n) {
      AgentState& agent = agents_[n];
      BeginEpisode(agent, cfg_.Shape());
      Observe(agent, inputs[n], loads[n]);
      if (network) FeedInput(agent, networks_[agent.network], inputs[n]);
    }

    acc_.BeginEpisode();
    std::vector<int> actions(num_users_);
    std::unique_ptr<bool[]> acks(new bool[num_users_]);
    std::vector<double> rewards(num_users_);
    for (int t = 0; t < cfg_.slots; ++t) {
      if (t > 0) field_.Advance(fading_rng_);
      for (int n = 0; n < num_users_; ++n) {
        actions[n] = ChooseAction(n, epsilon, beta, loads[n]);
      }
      const ActionProfile profile(actions, num_channels_);
      const std::vector<Observation> obs =
          StepMedium(profile, field_, cfg_.radio);
      const std::vector<int> counts = profile.ChannelCounts();

      int max_est = 0, min_est = num_users_;
      for (int n = 0; n < num_users_; ++n) {
        acks[n] = obs[n].ack;
        rewards[n] = RewardFromObservation(obs[n], cfg_.radio);
        for (int l : loads[n]) {
          max_est = std::max(max_est, l);
          min_est = std::min(min_est, l);
        }
        if (cfg_.log_rows) {
          record_.rows.push_back({run_, iteration, episode, t, n, actions[n],
                                  obs[n].ack, rewards[n]});
        }
      }
      record_.loads.push_back({iteration, episode, t,
                               std::vector<int>(counts.begin() + 1,
                                                counts.end()),
                               max_est, min_est});
      acc_.AddSlot(actions, std::span<const bool>(acks.get(), num_users_),
                   rewards);
      acc_.AddLoads(std::span<const int>(counts).subspan(1), max_est, min_est);

      for (int n = 0; n < num_users_; ++n) {
        AppendHistory(agents_[n], actions[n], obs[n], loads[n]);
      }
      previous_counts_ = counts;

      // Next input; its Q-values also bootstrap this slot's target.
      for (int n = 0; n < num_users_; ++n) {
        AgentState& agent = agents_[n];
        std::vector<double> next;
        Observe(agent, next, loads[n]);
        if (network) {
          FeedInput(agent, networks_[agent.network], next);
          if (steps) {
            const double target = BuildDoubleQTarget(
                rewards[n], agent.online_q, agent.target_q, cfg_.gamma);
            (*steps)[n].back().push_back(
                {std::move(inputs[n]), actions[n], target});
          }
        }
        inputs[n] = std::move(next);
      }
    }
    acc_.EndEpisode();
  }

  const SimConfig& cfg_;
  int run_;
  int num_users_;
  int num_channels_;
  double p_t_;
  double p_est_;
  Rng fading_rng_;
  ChannelGainField field_;
  std::vector<Rng> transmit_rng_;
  std::vector<Rng> explore_rng_;
  std::vector<Rng> policy_rng_;
  std::vector<NetworkPair> networks_;
  std::vector<AgentState> agents_;
  std::vector<int> previous_counts_;
  const ActionProfile* fixed_ = nullptr;
  bool started_ = false;
  MetricsAccumulator acc_;
  MetricsRecord record_;
};

}  // namespace

double EstimatorProbability(double p_t) {
  return std::min(p_t, 1.0 - 1e-6);
}

double EpsilonAt(const SimConfig& cfg, int iteration) {
  const double span = cfg.epsilon_decay_fraction * cfg.iterations;
  if (span <= 0.0) return cfg.epsilon_end;
  const double frac = std::min(1.0, iteration / span);
  return cfg.epsilon_start + (cfg.epsilon_end - cfg.epsilon_start) * frac;
}

double BetaAt(const SimConfig& cfg, int iteration) {
  if (cfg.iterations <= 1) return cfg.beta;
  const double frac = static_cast<double>(iteration) / (cfg.iterations - 1);
  return cfg.beta_start + (cfg.beta - cfg.beta_start) * frac;
}

std::vector<AgentSnapshot> ZeroSnapshots(const SimConfig& cfg) {
  std::vector<AgentSnapshot> out;
  for (int n = 0; n < cfg.num_users; ++n) {
    out.push_back({QNetworkParams(cfg.Shape()),
                   LoadCounters(cfg.num_channels, cfg.window)});
  }
  return out;
}

TrainingResult RunTraining(const SimConfig& cfg, std::uint64_t seed, int run) {
  cfg.Validate();
  Engine engine(cfg, seed, run, Phase::kTrain);
  const int pool = cfg.shared_weights ? 1 : cfg.num_users;
  const bool network = engine.UsesNetwork();
  for (int i = 0; i < pool; ++i) {
    NetworkPair pair;
    if (network) {
      Rng init = MakeStream(seed, StreamKind::kInit, i);
      pair.online = QNetworkParams::Initialize(cfg.Shape(), init);
    } else {
      pair.online = QNetworkParams(cfg.Shape());
    }
    pair.Sync();
    engine.networks().push_back(std::move(pair));
  }

  std::vector<std::vector<std::vector<TrainingStep>>> steps;
  for (int it = 0; it < cfg.iterations; ++it) {
    engine.ResetCounters();
    steps.assign(network ? cfg.num_users : 0, {});
    engine.RunIteration(it, cfg.episodes, EpsilonAt(cfg, it), BetaAt(cfg, it),
                        network ? &steps : nullptr);
    if (!network) continue;
    for (int p = 0; p < pool; ++p) {
      TrainingBatch batch;
      for (int n = 0; n < cfg.num_users; ++n) {
        if (engine.agents()[n].network != p) continue;
        for (auto& episode : steps[n]) batch.episodes.push_back(std::move(episode));
      }
      NetworkPair& pair = engine.networks()[p];
      for (int s = 0; s < cfg.train_steps; ++s) {
        const Gradients g = Backward(pair.online, batch);
        pair.online = OptimizerStep(pair.online, g.grad, cfg.alpha,
                                    cfg.clip_norm);
      }
      pair.Sync();
    }
  }

  TrainingResult result;
  for (int n = 0; n < cfg.num_users; ++n) {
    const AgentState& agent = engine.agents()[n];
    result.snapshots.push_back(
        {engine.networks()[agent.network].online, agent.counters});
  }
  result.metrics = engine.Finish();
  return result;
}

MetricsRecord RunEvaluation(const SimConfig& cfg, std::uint64_t seed,
                            const std::vector<AgentSnapshot>& snapshots,
                            int run) {
  cfg.Validate();
  Engine engine(cfg, seed, run, Phase::kEval);
  if (engine.UsesNetwork()) {
    if (static_cast<int>(snapshots.size()) != cfg.num_users) {
      throw std::invalid_argument("snapshot holds " +
                                  std::to_string(snapshots.size()) +
                                  " agents, config has N=" +
                                  std::to_string(cfg.num_users));
    }
    for (int n = 0; n < cfg.num_users; ++n) {
      const AgentSnapshot& snap = snapshots[n];
      if (!(snap.params.shape() == cfg.Shape())) {
        throw std::invalid_argument("snapshot network shape does not match "
                                    "the configuration");
      }
      if (snap.counters.num_channels() != cfg.num_channels) {
        throw std::invalid_argument("snapshot counters do not match K");
      }
      NetworkPair pair{snap.params, snap.params};
      engine.networks().push_back(std::move(pair));
      AgentState& agent = engine.agents()[n];
      agent.network = n;
      agent.counters = LoadCounters::FromEntries(
          cfg.num_channels, cfg.window, snap.counters.WindowEntries());
    }
  }
  engine.RunIteration(0, cfg.EvalEpisodes(), 0.0, cfg.beta, nullptr);
  return engine.Finish();
}

MetricsRecord RunFixedAllocation(const SimConfig& cfg, std::uint64_t seed,
                                 const ActionProfile& profile, int run) {
  cfg.Validate();
  if (profile.num_users() != cfg.num_users ||
      profile.num_channels() != cfg.num_channels) {
    throw std::invalid_argument("profile does not match N and K");
  }
  Engine engine(cfg, seed, run, Phase::kEval);
  engine.set_fixed_profile(&profile);
  engine.RunIteration(0, cfg.EvalEpisodes(), 0.0, cfg.beta, nullptr);
  return engine.Finish();
}

ConvergedProfile FinalProfile(const MetricsRecord& record) {
  const int n = record.num_users;
  if (n == 0 || record.rows.size() < static_cast<size_t>(n)) {
    throw std::invalid_argument("record has no logged rows");
  }
  const size_t last = record.rows.size() - n;
  std::vector<int> actions(n);
  for (int u = 0; u < n; ++u) actions[u] = record.rows[last + u].action;
  const SlotRow& tail = record.rows[last];
  const int from = (tail.slot + 1) / 2;  // second half of the final episode
  bool stable = true;
  size_t i = last;
  while (stable && i >= static_cast<size_t>(n)) {
    i -= n;
    const SlotRow& head = record.rows[i];
    if (head.episode != tail.episode || head.iteration != tail.iteration ||
        head.slot < from) {
      break;
    }
    for (int u = 0; u < n; ++u) {
      if (record.rows[i + u].action != actions[u]) stable = false;
    }
  }
  return {ActionProfile(actions, record.num_channels), stable};
}

}  // namespace spectrum
