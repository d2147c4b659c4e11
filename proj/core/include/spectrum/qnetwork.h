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

#ifndef SPECTRUM_QNETWORK_H_
#define SPECTRUM_QNETWORK_H_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "spectrum/rng.h"

namespace spectrum {

// Instrumentation for the complexity budget checks.
struct OpCounter {
  std::uint64_t multiplies = 0;
  std::uint64_t comparisons = 0;
};

// Input (K+1) -> LSTM(hidden) -> {value: hidden->value_width->1,
// advantage: hidden->advantage_width->K+1} -> dueling aggregate (K+1).
struct NetworkShape {
  int num_channels = 5;
  int hidden = 32;
  int value_width = 10;
  int advantage_width = 10;

  int input_size() const { return num_channels + 1; }
  int output_size() const { return num_channels + 1; }
  void Validate() const;

  friend bool operator==(const NetworkShape&, const NetworkShape&) = default;
};

enum class Tensor : int {
  kLstmInput = 0,     // 4H x (K+1), gate order i, f, g, o
  kLstmRecurrent,     // 4H x H
  kLstmBias,          // 4H
  kValueHidden,       // V x H
  kValueHiddenBias,   // V
  kValueOut,          // 1 x V
  kValueOutBias,      // 1
  kAdvantageHidden,   // A x H
  kAdvantageHiddenBias,  // A
  kAdvantageOut,      // (K+1) x A
  kAdvantageOutBias,  // K+1
};
inline constexpr int kNumTensors = 11;

struct TensorInfo {
  std::string_view name;
  int rows;
  int cols;
  size_t offset;
  size_t size() const { return static_cast<size_t>(rows) * cols; }
};

std::array<TensorInfo, kNumTensors> TensorLayout(const NetworkShape& shape);

// All weights of one recurrent dueling Q-network in a single flat buffer.
// The same type carries gradients.
class QNetworkParams {
 public:
  QNetworkParams() = default;
  explicit QNetworkParams(const NetworkShape& shape);  // all zeros

  // Uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)] per tensor.
  static QNetworkParams Initialize(const NetworkShape& shape, Rng& rng);

  const NetworkShape& shape() const { return shape_; }
  const TensorInfo& info(Tensor t) const {
    return layout_[static_cast<int>(t)];
  }
  std::span<double> tensor(Tensor t);
  std::span<const double> tensor(Tensor t) const;
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool AllFinite() const;

  friend bool operator==(const QNetworkParams& a, const QNetworkParams& b) {
    return a.shape_ == b.shape_ && a.values_ == b.values_;
  }

 private:
  NetworkShape shape_;
  std::array<TensorInfo, kNumTensors> layout_{};
  std::vector<double> values_;
};

struct LstmState {
  std::vector<double> hidden;
  std::vector<double> cell;

  static LstmState Zero(int hidden_size);
  friend bool operator==(const LstmState&, const LstmState&) = default;
};

struct ForwardResult {
  std::vector<double> q;
  LstmState state;
};

// q_a = v + adv_a - mean(adv).
std::vector<double> DuelingAggregate(double value,
                                     std::span<const double> advantage);

ForwardResult Forward(const QNetworkParams& params,
                      std::span<const double> input, const LstmState& state,
                      OpCounter* counter = nullptr);

// One recorded step: the network input, the action taken, and the target for
// that action's Q-value. Only the taken action contributes to the loss.
struct TrainingStep {
  std::vector<double> input;
  int action = 0;
  double target = 0.0;
};

// Episodes start from a zero LSTM state.
struct TrainingBatch {
  std::vector<std::vector<TrainingStep>> episodes;
};

// sum over episodes of mean over steps of (q_t[a_t] - target_t)^2.
double Loss(const QNetworkParams& params, const TrainingBatch& batch);

struct Gradients {
  QNetworkParams grad;
  double loss = 0.0;
};

// Backpropagation through time of Loss() within each episode.
Gradients Backward(const QNetworkParams& params, const TrainingBatch& batch,
                   OpCounter* counter = nullptr);

// Plain gradient descent. When clip_norm > 0 the gradient is first rescaled
// so its L2 norm does not exceed clip_norm.
QNetworkParams OptimizerStep(const QNetworkParams& params,
                             const QNetworkParams& gradients,
                             double learning_rate, double clip_norm);

double GradientNorm(const QNetworkParams& gradients);

inline QNetworkParams SyncParams(const QNetworkParams& source) {
  return source;
}

// Number of layers counted for the per-step complexity reference
// K*n + (layers-1)*n^2: input, LSTM, value/advantage hidden, output.
inline constexpr int kComplexityLayers = 4;

}  // namespace spectrum

#endif  // SPECTRUM_QNETWORK_H_
