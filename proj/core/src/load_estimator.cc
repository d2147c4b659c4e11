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

#include "spectrum/load_estimator.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spectrum {

LoadCounters::LoadCounters(int num_channels, int window)
    : num_channels_(num_channels),
      window_(window),
      transmit_(num_channels, 0),
      success_(num_channels, 0) {
  if (num_channels < 1) throw std::invalid_argument("counters need K >= 1");
  if (window < 1) throw std::invalid_argument("counter window must be >= 1");
  ring_.reserve(window);
}

void LoadCounters::Record(int channel, bool transmitted, bool ack) {
  if (ack && !transmitted) {
    throw std::invalid_argument("ACK recorded without a transmission");
  }
  if (transmitted && (channel < 1 || channel > num_channels_)) {
    throw std::invalid_argument("transmission recorded on invalid channel");
  }
  Entry entry{transmitted ? channel : 0, ack};
  if (static_cast<int>(ring_.size()) < window_) {
    ring_.push_back(entry);
  } else {
    const Entry& old = ring_[head_];
    if (old.channel != 0) {
      --transmit_[old.channel - 1];
      if (old.ack) --success_[old.channel - 1];
    }
    ring_[head_] = entry;
    head_ = (head_ + 1) % ring_.size();
  }
  if (entry.channel != 0) {
    ++transmit_[entry.channel - 1];
    if (entry.ack) ++success_[entry.channel - 1];
  }
}

void LoadCounters::Reset() {
  std::fill(transmit_.begin(), transmit_.end(), 0);
  std::fill(success_.begin(), success_.end(), 0);
  ring_.clear();
  head_ = 0;
}

std::vector<LoadCounters::Entry> LoadCounters::WindowEntries() const {
  std::vector<Entry> out;
  out.reserve(ring_.size());
  for (size_t i = 0; i < ring_.size(); ++i) {
    out.push_back(ring_[(head_ + i) % ring_.size()]);
  }
  return out;
}

LoadCounters LoadCounters::FromEntries(int num_channels, int window,
                                       const std::vector<Entry>& entries) {
  LoadCounters counters(num_channels, window);
  for (const Entry& e : entries) {
    counters.Record(e.channel, e.channel != 0, e.ack);
  }
  return counters;
}

int LoadFromRatio(double ratio, double p_t, int num_users) {
  if (!(p_t > 0.0 && p_t < 1.0)) {
    throw std::invalid_argument(
        "load estimation needs a transmission probability in (0, 1)");
  }
  if (!(ratio > 0.0)) return num_users;
  const double exponent = std::log(ratio) / std::log(1.0 - p_t);
  // Exact powers of (1-p_t) land within rounding of an integer; snap them.
  const double steps = std::ceil(exponent - 1e-9);
  const double load = 1.0 + std::max(0.0, steps);
  return static_cast<int>(std::clamp(load, 1.0, static_cast<double>(num_users)));
}

std::optional<int> EstimateLoad(const LoadCounters& counters, int channel,
                                double p_t, int num_users) {
  if (!(p_t > 0.0 && p_t < 1.0)) {
    throw std::invalid_argument(
        "load estimation needs a transmission probability in (0, 1)");
  }
  const int sent = counters.transmissions(channel);
  const int delivered = counters.successes(channel);
  if (sent == 0) return std::nullopt;
  if (delivered == 0) return num_users;
  return LoadFromRatio(static_cast<double>(delivered) / sent, p_t, num_users);
}

LoadEstimate EstimateLoads(const LoadCounters& counters, double p_t,
                           int num_users) {
  LoadEstimate out(counters.num_channels());
  for (int k = 1; k <= counters.num_channels(); ++k) {
    out[k - 1] = EstimateLoad(counters, k, p_t, num_users);
  }
  return out;
}

int PriorLoad(int num_users, int num_channels) {
  return (num_users + num_channels - 1) / num_channels;
}

std::vector<int> ResolvedLoads(const LoadEstimate& estimate, int num_users) {
  const int prior = PriorLoad(num_users, static_cast<int>(estimate.size()));
  std::vector<int> out(estimate.size());
  for (size_t k = 0; k < estimate.size(); ++k) {
    out[k] = estimate[k].value_or(prior);
  }
  return out;
}

std::vector<int> EstimatedCountVector(const LoadEstimate& estimate,
                                      int num_users, int num_channels) {
  if (static_cast<int>(estimate.size()) != num_channels) {
    throw std::invalid_argument("load estimate must have K entries");
  }
  const std::vector<int> loads = ResolvedLoads(estimate, num_users);
  std::vector<int> out(num_channels + 1, 0);
  int total = 0;
  for (int k = 1; k <= num_channels; ++k) {
    out[k] = loads[k - 1];
    total += loads[k - 1];
  }
  out[0] = std::max(0, num_users - total);
  return out;
}

}  // namespace spectrum
