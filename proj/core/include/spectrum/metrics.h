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

#ifndef SPECTRUM_METRICS_H_
#define SPECTRUM_METRICS_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace spectrum {

inline constexpr const char* kRowsCsvHeader =
    "run,iteration,episode,slot,user,action,ack,reward";
inline constexpr const char* kLoadsCsvHeader =
    "run,iteration,episode,slot,max_true_load,min_true_load,"
    "max_estimated_load,min_estimated_load";
inline constexpr const char* kIterationsCsvHeader =
    "run,iteration,average_reward";
inline constexpr const char* kSummaryCsvHeader =
    "run,seed,policy,phase,metric,value";

// One user in one slot.
struct SlotRow {
  int run = 0;
  int iteration = 0;
  int episode = 0;
  int slot = 0;
  int user = 0;
  int action = 0;
  bool ack = false;
  double reward = 0.0;
};

// Channel occupancy of one slot. `true_loads[k-1]` counts the users that
// actually transmitted on channel k; estimated loads are the extremes over
// users of the loads each user acted on.
struct SlotLoads {
  int iteration = 0;
  int episode = 0;
  int slot = 0;
  std::vector<int> true_loads;
  int max_estimated_load = 0;
  int min_estimated_load = 0;
};

// Running totals. Every aggregate below is derived from these, and the
// totals themselves are recomputable from the rows in logged order.
struct MetricsTotals {
  std::int64_t slots = 0;
  std::int64_t user_slots = 0;
  std::int64_t transmissions = 0;
  std::int64_t successes = 0;
  double reward = 0.0;
  double max_true_load = 0.0;  // summed over slots
  double min_true_load = 0.0;
  double max_estimated_load = 0.0;
  double min_estimated_load = 0.0;
  double discounted_return = 0.0;  // summed over (user, episode)
  std::int64_t user_episodes = 0;

  friend bool operator==(const MetricsTotals&, const MetricsTotals&) = default;
};

struct MetricsRecord {
  int run = 0;
  int num_users = 0;
  int num_channels = 0;
  double gamma = 1.0;
  std::vector<SlotRow> rows;      // empty unless row logging is on
  std::vector<SlotLoads> loads;   // always kept
  std::vector<double> iteration_rewards;
  MetricsTotals totals;

  double AverageReward() const;       // per user per slot
  double ChannelUtilization() const;  // successful channel-slots / (K*slots)
  double CollisionRate() const;       // failed / attempted transmissions
  double MeanMaxTrueLoad() const;
  double MeanMinTrueLoad() const;
  double MeanMaxEstimatedLoad() const;
  double MeanMinEstimatedLoad() const;
  double MeanDiscountedReturn() const;  // per user per episode
};

// Incremental builder used by the engine; the same code path recomputes
// totals from logged rows.
class MetricsAccumulator {
 public:
  MetricsAccumulator(int num_users, double gamma);

  void BeginEpisode();
  // One slot's per-user actions, acks and rewards.
  void AddSlot(std::span<const int> actions, std::span<const bool> acks,
               std::span<const double> rewards);
  void AddLoads(std::span<const int> true_loads, int max_estimated,
                int min_estimated);
  void EndEpisode();

  const MetricsTotals& totals() const { return totals_; }

 private:
  int num_users_;
  double gamma_;
  double discount_ = 1.0;
  std::vector<double> episode_return_;
  bool in_episode_ = false;
  MetricsTotals totals_;
};

// Recomputes reward, transmission and return totals from rows (loads are
// taken from `record.loads`). Rows must be in logged order.
MetricsTotals TotalsFromRows(const MetricsRecord& record);

// sum_t gamma^(t-1) r_t
double AccumulatedReward(std::span<const double> rewards, double gamma);

struct LoadBalance {
  double max_true_load;  // time-averaged, final quarter of the slots
  double reference;      // N/K
  double slack;          // max_true_load - reference
};

LoadBalance LoadBalanceStatistic(const MetricsRecord& record);

void WriteRowsCsv(std::ostream& out, const MetricsRecord& record);
void WriteLoadsCsv(std::ostream& out, const MetricsRecord& record);
void WriteIterationsCsv(std::ostream& out, const MetricsRecord& record);

struct SummaryLine {
  int run;
  std::uint64_t seed;
  std::string policy;
  std::string phase;
  std::string metric;
  double value;
};

std::vector<SummaryLine> SummaryLines(const MetricsRecord& record,
                                      std::uint64_t seed,
                                      const std::string& policy,
                                      const std::string& phase);
void WriteSummaryCsv(std::ostream& out, std::span<const SummaryLine> lines,
                     bool header = true);

// Shortest decimal text that reads back to the same double.
std::string FormatCsvDouble(double x);

}  // namespace spectrum

#endif  // SPECTRUM_METRICS_H_
