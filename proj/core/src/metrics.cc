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

#include "spectrum/metrics.h"

#include <algorithm>
#include <charconv>
#include <memory>
#include <ostream>
#include <stdexcept>

namespace spectrum {
namespace {

double Ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

}  // namespace

double MetricsRecord::AverageReward() const {
  return Ratio(totals.reward, static_cast<double>(totals.user_slots));
}

double MetricsRecord::ChannelUtilization() const {
  return Ratio(static_cast<double>(totals.successes),
               static_cast<double>(totals.slots) * num_channels);
}

double MetricsRecord::CollisionRate() const {
  return Ratio(static_cast<double>(totals.transmissions - totals.successes),
               static_cast<double>(totals.transmissions));
}

double MetricsRecord::MeanMaxTrueLoad() const {
  return Ratio(totals.max_true_load, static_cast<double>(totals.slots));
}

double MetricsRecord::MeanMinTrueLoad() const {
  return Ratio(totals.min_true_load, static_cast<double>(totals.slots));
}

double MetricsRecord::MeanMaxEstimatedLoad() const {
  return Ratio(totals.max_estimated_load, static_cast<double>(totals.slots));
}

double MetricsRecord::MeanMinEstimatedLoad() const {
  return Ratio(totals.min_estimated_load, static_cast<double>(totals.slots));
}

double MetricsRecord::MeanDiscountedReturn() const {
  return Ratio(totals.discounted_return,
               static_cast<double>(totals.user_episodes));
}

MetricsAccumulator::MetricsAccumulator(int num_users, double gamma)
    : num_users_(num_users), gamma_(gamma), episode_return_(num_users, 0.0) {}

void MetricsAccumulator::BeginEpisode() {
  std::fill(episode_return_.begin(), episode_return_.end(), 0.0);
  discount_ = 1.0;
  in_episode_ = true;
}

void MetricsAccumulator::AddSlot(std::span<const int> actions,
                                 std::span<const bool> acks,
                                 std::span<const double> rewards) {
  ++totals_.slots;
  for (int n = 0; n < num_users_; ++n) {
    ++totals_.user_slots;
    if (actions[n] != 0) ++totals_.transmissions;
    if (acks[n]) ++totals_.successes;
    totals_.reward += rewards[n];
    episode_return_[n] += discount_ * rewards[n];
  }
  discount_ *= gamma_;
}

void MetricsAccumulator::AddLoads(std::span<const int> true_loads,
                                  int max_estimated, int min_estimated) {
  if (!true_loads.empty()) {
    const auto [lo, hi] = std::minmax_element(true_loads.begin(), true_loads.end());
    totals_.max_true_load += *hi;
    totals_.min_true_load += *lo;
  }
  totals_.max_estimated_load += max_estimated;
  totals_.min_estimated_load += min_estimated;
}

void MetricsAccumulator::EndEpisode() {
  if (!in_episode_) return;
  for (double r : episode_return_) totals_.discounted_return += r;
  totals_.user_episodes += num_users_;
  in_episode_ = false;
}

MetricsTotals TotalsFromRows(const MetricsRecord& record) {
  MetricsAccumulator acc(record.num_users, record.gamma);
  const int n = record.num_users;
  if (n == 0) return acc.totals();
  if (record.rows.size() % n != 0) {
    throw std::invalid_argument("row count is not a multiple of N");
  }
  std::vector<int> actions(n);
  std::unique_ptr<bool[]> acks(new bool[n]);
  std::vector<double> rewards(n);
  size_t load_index = 0;
  int episode_key = -1, iteration_key = -1;
  for (size_t i = 0; i < record.rows.size(); i += n) {
    const SlotRow& first = record.rows[i];
    if (first.episode != episode_key || first.iteration != iteration_key) {
      acc.EndEpisode();
      acc.BeginEpisode();
      episode_key = first.episode;
      iteration_key = first.iteration;
    }
    for (int u = 0; u < n; ++u) {
      const SlotRow& row = record.rows[i + u];
      actions[u] = row.action;
      acks[u] = row.ack;
      rewards[u] = row.reward;
    }
    acc.AddSlot(actions, std::span<const bool>(acks.get(), n), rewards);
    if (load_index < record.loads.size()) {
      const SlotLoads& l = record.loads[load_index++];
      acc.AddLoads(l.true_loads, l.max_estimated_load, l.min_estimated_load);
    }
  }
  acc.EndEpisode();
  return acc.totals();
}

double AccumulatedReward(std::span<const double> rewards, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("discount must lie in [0, 1]");
  }
  double total = 0.0, discount = 1.0;
  for (double r : rewards) {
    total += discount * r;
    discount *= gamma;
  }
  return total;
}

LoadBalance LoadBalanceStatistic(const MetricsRecord& record) {
  const double reference =
      record.num_channels > 0
          ? static_cast<double>(record.num_users) / record.num_channels
          : 0.0;
  const size_t total = record.loads.size();
  const size_t start = total - total / 4;
  double sum = 0.0;
  size_t count = 0;
  for (size_t i = (total >= 4 ? start : 0); i < total; ++i) {
    const auto& l = record.loads[i].true_loads;
    if (l.empty()) continue;
    sum += *std::max_element(l.begin(), l.end());
    ++count;
  }
  const double max_load = count ? sum / count : 0.0;
  return {max_load, reference, max_load - reference};
}

std::string FormatCsvDouble(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void WriteRowsCsv(std::ostream& out, const MetricsRecord& record) {
  out << kRowsCsvHeader << '\n';
  for (const SlotRow& r : record.rows) {
    out << r.run << ',' << r.iteration << ',' << r.episode << ',' << r.slot
        << ',' << r.user << ',' << r.action << ',' << (r.ack ? 1 : 0) << ','
        << FormatCsvDouble(r.reward) << '\n';
  }
}

void WriteLoadsCsv(std::ostream& out, const MetricsRecord& record) {
  out << kLoadsCsvHeader << '\n';
  for (const SlotLoads& l : record.loads) {
    int hi = 0, lo = 0;
    if (!l.true_loads.empty()) {
      hi = *std::max_element(l.true_loads.begin(), l.true_loads.end());
      lo = *std::min_element(l.true_loads.begin(), l.true_loads.end());
    }
    out << record.run << ',' << l.iteration << ',' << l.episode << ','
        << l.slot << ',' << hi << ',' << lo << ',' << l.max_estimated_load
        << ',' << l.min_estimated_load << '\n';
  }
}

void WriteIterationsCsv(std::ostream& out, const MetricsRecord& record) {
  out << kIterationsCsvHeader << '\n';
  for (size_t i = 0; i < record.iteration_rewards.size(); ++i) {
    out << record.run << ',' << i + 1 << ','
        << FormatCsvDouble(record.iteration_rewards[i]) << '\n';
  }
}

std::vector<SummaryLine> SummaryLines(const MetricsRecord& record,
                                      std::uint64_t seed,
                                      const std::string& policy,
                                      const std::string& phase) {
  const LoadBalance balance = LoadBalanceStatistic(record);
  auto line = [&](const char* metric, double value) {
    return SummaryLine{record.run, seed, policy, phase, metric, value};
  };
  return {
      line("slots", static_cast<double>(record.totals.slots)),
      line("average_reward", record.AverageReward()),
      line("channel_utilization", record.ChannelUtilization()),
      line("collision_rate", record.CollisionRate()),
      line("mean_max_true_load", record.MeanMaxTrueLoad()),
      line("mean_min_true_load", record.MeanMinTrueLoad()),
      line("mean_max_estimated_load", record.MeanMaxEstimatedLoad()),
      line("mean_min_estimated_load", record.MeanMinEstimatedLoad()),
      line("discounted_return", record.MeanDiscountedReturn()),
      line("final_quarter_max_true_load", balance.max_true_load),
      line("balance_slack", balance.slack),
  };
}

void WriteSummaryCsv(std::ostream& out, std::span<const SummaryLine> lines,
                     bool header) {
  if (header) out << kSummaryCsvHeader << '\n';
  for (const SummaryLine& l : lines) {
    out << l.run << ',' << l.seed << ',' << l.policy << ',' << l.phase << ','
        << l.metric << ',' << FormatCsvDouble(l.value) << '\n';
  }
}

}  // namespace spectrum
