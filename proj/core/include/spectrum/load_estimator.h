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

#ifndef SPECTRUM_LOAD_ESTIMATOR_H_
#define SPECTRUM_LOAD_ESTIMATOR_H_

#include <optional>
#include <vector>

namespace spectrum {

// Per-channel transmission / success counts of a single user over a sliding
// window of the most recent `window` slots. One Record() call is one slot.
class LoadCounters {
 public:
  struct Entry {
    int channel = 0;  // 0 when the user stayed silent
    bool ack = false;
  };

  LoadCounters(int num_channels, int window);

  // Throws std::invalid_argument when ack is set without a transmission, or
  // the channel is out of range for a transmission.
  void Record(int channel, bool transmitted, bool ack);
  void Reset();

  int num_channels() const { return num_channels_; }
  int window() const { return window_; }
  int transmissions(int channel) const { return transmit_[channel - 1]; }
  int successes(int channel) const { return success_[channel - 1]; }

  // Slots currently held in the window, oldest first.
  std::vector<Entry> WindowEntries() const;
  // Rebuilds counters from window entries (oldest first).
  static LoadCounters FromEntries(int num_channels, int window,
                                  const std::vector<Entry>& entries);

 private:
  int num_channels_;
  int window_;
  std::vector<int> transmit_;
  std::vector<int> success_;
  std::vector<Entry> ring_;
  size_t head_ = 0;  // next slot to overwrite once the ring is full
};

// 1 + ceil(log(ratio) / log(1-p_t)) clamped to [1, N]; ratio <= 0 gives N.
int LoadFromRatio(double ratio, double p_t, int num_users);

// One entry per channel 1..K; nullopt means no transmissions observed.
using LoadEstimate = std::vector<std::optional<int>>;

// Inverts success/transmit ~= (1-p_t)^(L-1):
//   L = 1 + ceil(log(successes/transmissions) / log(1-p_t)), clamped [1, N].
// No transmissions -> nullopt; no successes -> N.
std::optional<int> EstimateLoad(const LoadCounters& counters, int channel,
                                double p_t, int num_users);

LoadEstimate EstimateLoads(const LoadCounters& counters, double p_t,
                           int num_users);

// ceil(N/K), substituted for unknown channel loads.
int PriorLoad(int num_users, int num_channels);

// Unknown entries replaced by the prior.
std::vector<int> ResolvedLoads(const LoadEstimate& estimate, int num_users);

// Network input: coordinate k >= 1 holds the (resolved) load of channel k,
// coordinate 0 the residual max(0, N - sum of loads).
std::vector<int> EstimatedCountVector(const LoadEstimate& estimate,
                                      int num_users, int num_channels);

}  // namespace spectrum

#endif  // SPECTRUM_LOAD_ESTIMATOR_H_
