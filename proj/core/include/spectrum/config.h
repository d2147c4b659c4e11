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

#ifndef SPECTRUM_CONFIG_H_
#define SPECTRUM_CONFIG_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectrum/fading.h"
#include "spectrum/qnetwork.h"

namespace spectrum {

enum class Policy { kD3rl, kSoftmax, kRandom };
enum class Observability { kDistributed, kGenie };

const char* PolicyName(Policy policy);
const char* ObservabilityName(Observability obs);
Policy ParsePolicy(const std::string& text);

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { kMissingFile, kSyntax, kUnknownKey, kBadValue, kInvariant };

  ConfigError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Full experiment description. Defaults are the desk-scale setup
// (N=10, K=5, M=2, R=500, E=8, T=20); configs/full_scale.cfg holds the
// long-running 100-user setup.
struct SimConfig {
  int num_users = 10;      // N
  int num_channels = 5;    // K
  int top_m = 2;           // M
  int iterations = 500;    // R
  int episodes = 8;        // E
  int slots = 20;          // T
  std::optional<double> p_transmit;  // default K/N (capped at 1)
  double gamma = 0.95;
  double alpha = 0.05;

  int hidden = 32;
  int value_width = 10;
  int advantage_width = 10;

  RadioConfig radio;
  FadingMode channel_mode = FadingMode::kIid;
  std::optional<double> ar1_coefficient;  // default from Doppler
  std::vector<std::vector<double>> fixed_gains;  // N x K, fixed mode only
  bool redraw_gains_each_episode = true;

  Observability observability = Observability::kDistributed;
  Policy policy = Policy::kD3rl;
  double beta = 20.0;        // softmax temperature at the end of training
  double beta_start = 1.0;   // and at the start

  std::vector<std::uint64_t> seeds = {1};
  int window = 100;
  double clip_norm = 1.0;
  double epsilon_start = 0.2;
  double epsilon_end = 0.0;
  double epsilon_decay_fraction = 0.5;
  int train_steps = 1;       // gradient steps per iteration
  bool shared_weights = false;
  int eval_episodes = 0;     // 0: same as E
  bool log_rows = true;
  bool allow_underloaded = false;  // permit N <= K (enumerable checks)

  double TransmitProbability() const;
  double Ar1Coefficient() const;
  int EvalEpisodes() const { return eval_episodes > 0 ? eval_episodes : episodes; }
  NetworkShape Shape() const {
    return {num_channels, hidden, value_width, advantage_width};
  }

  // Throws ConfigError(kInvariant) describing the first violated invariant.
  void Validate() const;
};

// Flat "key = value" text, '#' starts a comment. Overrides ("key=value")
// apply after the file. Unknown keys, malformed values and violated
// invariants raise ConfigError with distinct kinds. An empty path means
// defaults only.
SimConfig ParseConfig(const std::string& path,
                      const std::vector<std::string>& overrides = {});
SimConfig ParseConfigText(const std::string& text,
                          const std::vector<std::string>& overrides = {});

// Applies one key/value pair without validating cross-field invariants.
void ApplySetting(SimConfig& cfg, const std::string& key,
                  const std::string& value);

// Every key with its resolved value, in a form ParseConfigText accepts.
std::string ToConfigText(const SimConfig& cfg);

std::vector<std::string> ConfigKeys();

}  // namespace spectrum

#endif  // SPECTRUM_CONFIG_H_
