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

#include "spectrum/qnetwork.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spectrum {
namespace {

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// out[r] += sum_c w[r, c] * x[c]
void MatVecAcc(std::span<const double> w, int rows, int cols,
               std::span<const double> x, double* out, OpCounter* counter) {
  for (int r = 0; r < rows; ++r) {
    const double* row = w.data() + static_cast<size_t>(r) * cols;
    double acc = 0.0;
    for (int c = 0; c < cols; ++c) acc += row[c] * x[c];
    out[r] += acc;
  }
  if (counter) counter->multiplies += static_cast<std::uint64_t>(rows) * cols;
}

// out[c] += sum_r w[r, c] * v[r]
void MatTVecAcc(std::span<const double> w, int rows, int cols,
                const double* v, double* out, OpCounter* counter) {
  for (int r = 0; r < rows; ++r) {
    const double* row = w.data() + static_cast<size_t>(r) * cols;
    const double vr = v[r];
    for (int c = 0; c < cols; ++c) out[c] += row[c] * vr;
  }
  if (counter) counter->multiplies += static_cast<std::uint64_t>(rows) * cols;
}

// dw[r, c] += u[r] * x[c]
void OuterAcc(std::span<double> dw, int rows, int cols, const double* u,
              std::span<const double> x, OpCounter* counter) {
  for (int r = 0; r < rows; ++r) {
    double* row = dw.data() + static_cast<size_t>(r) * cols;
    const double ur = u[r];
    for (int c = 0; c < cols; ++c) row[c] += ur * x[c];
  }
  if (counter) counter->multiplies += static_cast<std::uint64_t>(rows) * cols;
}

// Everything the backward pass needs from one forward step.
struct StepCache {
  std::vector<double> input;
  std::vector<double> h_prev, c_prev;
  std::vector<double> gates;  // activated i, f, g, o (4H)
  std::vector<double> cell, cell_tanh, hidden;
  std::vector<double> value_pre, value_act;
  std::vector<double> adv_pre, adv_act;
  std::vector<double> q;
};

void ForwardStep(const QNetworkParams& p, std::span<const double> input,
                 std::span<const double> h_prev, std::span<const double> c_prev,
                 StepCache& s, OpCounter* counter) {
  const NetworkShape& shape = p.shape();
  const int h = shape.hidden;
  const int in = shape.input_size();
  const int v = shape.value_width;
  const int a = shape.advantage_width;
  const int out = shape.output_size();

  s.input.assign(input.begin(), input.end());
  s.h_prev.assign(h_prev.begin(), h_prev.end());
  s.c_prev.assign(c_prev.begin(), c_prev.end());

  auto bias = p.tensor(Tensor::kLstmBias);
  s.gates.assign(bias.begin(), bias.end());
  MatVecAcc(p.tensor(Tensor::kLstmInput), 4 * h, in, input, s.gates.data(),
            counter);
  MatVecAcc(p.tensor(Tensor::kLstmRecurrent), 4 * h, h, h_prev,
            s.gates.data(), counter);
  for (int j = 0; j < h; ++j) {
    s.gates[j] = Sigmoid(s.gates[j]);
    s.gates[h + j] = Sigmoid(s.gates[h + j]);
    s.gates[2 * h + j] = std::tanh(s.gates[2 * h + j]);
    s.gates[3 * h + j] = Sigmoid(s.gates[3 * h + j]);
  }
  s.cell.resize(h);
  s.cell_tanh.resize(h);
  s.hidden.resize(h);
  for (int j = 0; j < h; ++j) {
    s.cell[j] = s.gates[h + j] * c_prev[j] + s.gates[j] * s.gates[2 * h + j];
    s.cell_tanh[j] = std::tanh(s.cell[j]);
    s.hidden[j] = s.gates[3 * h + j] * s.cell_tanh[j];
  }
  if (counter) counter->multiplies += 3ULL * h;

  auto vb = p.tensor(Tensor::kValueHiddenBias);
  s.value_pre.assign(vb.begin(), vb.end());
  MatVecAcc(p.tensor(Tensor::kValueHidden), v, h, s.hidden,
            s.value_pre.data(), counter);
  s.value_act.resize(v);
  for (int j = 0; j < v; ++j) s.value_act[j] = std::max(0.0, s.value_pre[j]);
  double value = p.tensor(Tensor::kValueOutBias)[0];
  MatVecAcc(p.tensor(Tensor::kValueOut), 1, v, s.value_act, &value, counter);

  auto ab = p.tensor(Tensor::kAdvantageHiddenBias);
  s.adv_pre.assign(ab.begin(), ab.end());
  MatVecAcc(p.tensor(Tensor::kAdvantageHidden), a, h, s.hidden,
            s.adv_pre.data(), counter);
  s.adv_act.resize(a);
  for (int j = 0; j < a; ++j) s.adv_act[j] = std::max(0.0, s.adv_pre[j]);
  auto aob = p.tensor(Tensor::kAdvantageOutBias);
  std::vector<double> advantage(aob.begin(), aob.end());
  MatVecAcc(p.tensor(Tensor::kAdvantageOut), out, a, s.adv_act,
            advantage.data(), counter);

  s.q = DuelingAggregate(value, advantage);
}

void CheckShapes(const QNetworkParams& params, size_t input_size,
                 const LstmState& state) {
  const NetworkShape& shape = params.shape();
  if (params.values().empty()) {
    throw std::invalid_argument("network parameters are not initialized");
  }
  if (input_size != static_cast<size_t>(shape.input_size())) {
    throw std::invalid_argument("input has " + std::to_string(input_size) +
                                " entries, network expects " +
                                std::to_string(shape.input_size()));
  }
  if (state.hidden.size() != static_cast<size_t>(shape.hidden) ||
      state.cell.size() != static_cast<size_t>(shape.hidden)) {
    throw std::invalid_argument("LSTM state size does not match network");
  }
}

}  // namespace

void NetworkShape::Validate() const {
  if (num_channels < 1 || hidden < 1 || value_width < 1 ||
      advantage_width < 1) {
    throw std::invalid_argument(
        "network shape needs K, hidden, value_width, advantage_width >= 1");
  }
}

std::array<TensorInfo, kNumTensors> TensorLayout(const NetworkShape& s) {
  const int h = s.hidden, in = s.input_size(), out = s.output_size();
  std::array<TensorInfo, kNumTensors> layout = {{
      {"lstm.input", 4 * h, in, 0},
      {"lstm.recurrent", 4 * h, h, 0},
      {"lstm.bias", 4 * h, 1, 0},
      {"value.hidden", s.value_width, h, 0},
      {"value.hidden_bias", s.value_width, 1, 0},
      {"value.out", 1, s.value_width, 0},
      {"value.out_bias", 1, 1, 0},
      {"advantage.hidden", s.advantage_width, h, 0},
      {"advantage.hidden_bias", s.advantage_width, 1, 0},
      {"advantage.out", out, s.advantage_width, 0},
      {"advantage.out_bias", out, 1, 0},
  }};
  size_t offset = 0;
  for (auto& t : layout) {
    t.offset = offset;
    offset += t.size();
  }
  return layout;
}

QNetworkParams::QNetworkParams(const NetworkShape& shape)
    : shape_(shape), layout_(TensorLayout(shape)) {
  shape.Validate();
  const TensorInfo& last = layout_.back();
  values_.assign(last.offset + last.size(), 0.0);
}

QNetworkParams QNetworkParams::Initialize(const NetworkShape& shape,
                                          Rng& rng) {
  QNetworkParams p(shape);
  // Fan-in per tensor: biases share the fan-in of their weight matrix.
  const int h = shape.hidden;
  const std::array<int, kNumTensors> fan_in = {
      shape.input_size() + h, shape.input_size() + h, shape.input_size() + h,
      h, h,
      shape.value_width, shape.value_width,
      h, h,
      shape.advantage_width, shape.advantage_width};
  for (int t = 0; t < kNumTensors; ++t) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in[t]));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (double& w : p.tensor(static_cast<Tensor>(t))) w = dist(rng);
  }
  return p;
}

std::span<double> QNetworkParams::tensor(Tensor t) {
  const TensorInfo& info = layout_[static_cast<int>(t)];
  return std::span<double>(values_).subspan(info.offset, info.size());
}

std::span<const double> QNetworkParams::tensor(Tensor t) const {
  const TensorInfo& info = layout_[static_cast<int>(t)];
  return std::span<const double>(values_).subspan(info.offset, info.size());
}

bool QNetworkParams::AllFinite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double x) { return std::isfinite(x); });
}

LstmState LstmState::Zero(int hidden_size) {
  return {std::vector<double>(hidden_size, 0.0),
          std::vector<double>(hidden_size, 0.0)};
}

std::vector<double> DuelingAggregate(double value,
                                     std::span<const double> advantage) {
  if (advantage.empty()) return {};
  // Offsets from the first entry cancel a common shift before any rounding
  // in the mean can depend on it.
  const double base = advantage[0];
  double sum = 0.0;
  for (double a : advantage) sum += a - base;
  const double mean = sum / static_cast<double>(advantage.size());
  std::vector<double> q(advantage.size());
  for (size_t i = 0; i < advantage.size(); ++i) {
    q[i] = value + ((advantage[i] - base) - mean);
  }
  return q;
}

ForwardResult Forward(const QNetworkParams& params,
                      std::span<const double> input, const LstmState& state,
                      OpCounter* counter) {
  CheckShapes(params, input.size(), state);
  StepCache cache;
  ForwardStep(params, input, state.hidden, state.cell, cache, counter);
  return {std::move(cache.q), {std::move(cache.hidden), std::move(cache.cell)}};
}

double Loss(const QNetworkParams& params, const TrainingBatch& batch) {
  double total = 0.0;
  StepCache cache;
  for (const auto& episode : batch.episodes) {
    if (episode.empty()) continue;
    LstmState state = LstmState::Zero(params.shape().hidden);
    double sum = 0.0;
    for (const TrainingStep& step : episode) {
      CheckShapes(params, step.input.size(), state);
      ForwardStep(params, step.input, state.hidden, state.cell, cache,
                  nullptr);
      const double err = cache.q[step.action] - step.target;
      sum += err * err;
      state.hidden = cache.hidden;
      state.cell = cache.cell;
    }
    total += sum / static_cast<double>(episode.size());
  }
  return total;
}

Gradients Backward(const QNetworkParams& params, const TrainingBatch& batch,
                   OpCounter* counter) {
  const NetworkShape& shape = params.shape();
  const int h = shape.hidden;
  const int in = shape.input_size();
  const int v = shape.value_width;
  const int a = shape.advantage_width;
  const int out = shape.output_size();

  Gradients result{QNetworkParams(shape), 0.0};
  QNetworkParams& g = result.grad;

  std::vector<StepCache> caches;
  std::vector<double> dq(out), dadv(out), dha(a), dhv(v), dh(h), dc(h);
  std::vector<double> dh_next(h), dc_next(h), dz(4 * h);

  for (const auto& episode : batch.episodes) {
    if (episode.empty()) continue;
    const size_t steps = episode.size();
    const double scale = 1.0 / static_cast<double>(steps);

    caches.resize(steps);
    LstmState state = LstmState::Zero(h);
    double sum = 0.0;
    for (size_t t = 0; t < steps; ++t) {
      const TrainingStep& step = episode[t];
      CheckShapes(params, step.input.size(), state);
      if (step.action < 0 || step.action >= out) {
        throw std::invalid_argument("training step action out of range");
      }
      ForwardStep(params, step.input, state.hidden, state.cell, caches[t],
                  counter);
      const double err = caches[t].q[step.action] - step.target;
      sum += err * err;
      state.hidden = caches[t].hidden;
      state.cell = caches[t].cell;
    }
    result.loss += sum * scale;

    std::fill(dh_next.begin(), dh_next.end(), 0.0);
    std::fill(dc_next.begin(), dc_next.end(), 0.0);
    for (size_t t = steps; t-- > 0;) {
      const StepCache& s = caches[t];
      const TrainingStep& step = episode[t];

      // Loss and dueling head.
      std::fill(dq.begin(), dq.end(), 0.0);
      dq[step.action] = 2.0 * (s.q[step.action] - step.target) * scale;
      const double dvalue = dq[step.action];
      const double dq_mean = dq[step.action] / out;
      for (int j = 0; j < out; ++j) dadv[j] = dq[j] - dq_mean;

      // Advantage branch.
      auto gao = g.tensor(Tensor::kAdvantageOut);
      OuterAcc(gao, out, a, dadv.data(), s.adv_act, counter);
      auto gaob = g.tensor(Tensor::kAdvantageOutBias);
      for (int j = 0; j < out; ++j) gaob[j] += dadv[j];
      std::fill(dha.begin(), dha.end(), 0.0);
      MatTVecAcc(params.tensor(Tensor::kAdvantageOut), out, a, dadv.data(),
                 dha.data(), counter);
      for (int j = 0; j < a; ++j) {
        if (s.adv_pre[j] <= 0.0) dha[j] = 0.0;
      }
      OuterAcc(g.tensor(Tensor::kAdvantageHidden), a, h, dha.data(), s.hidden,
               counter);
      auto gahb = g.tensor(Tensor::kAdvantageHiddenBias);
      for (int j = 0; j < a; ++j) gahb[j] += dha[j];
      std::copy(dh_next.begin(), dh_next.end(), dh.begin());
      MatTVecAcc(params.tensor(Tensor::kAdvantageHidden), a, h, dha.data(),
                 dh.data(), counter);

      // Value branch.
      auto gvo = g.tensor(Tensor::kValueOut);
      OuterAcc(gvo, 1, v, &dvalue, s.value_act, counter);
      g.tensor(Tensor::kValueOutBias)[0] += dvalue;
      auto wvo = params.tensor(Tensor::kValueOut);
      for (int j = 0; j < v; ++j) {
        dhv[j] = s.value_pre[j] > 0.0 ? dvalue * wvo[j] : 0.0;
      }
      if (counter) counter->multiplies += v;
      OuterAcc(g.tensor(Tensor::kValueHidden), v, h, dhv.data(), s.hidden,
               counter);
      auto gvhb = g.tensor(Tensor::kValueHiddenBias);
      for (int j = 0; j < v; ++j) gvhb[j] += dhv[j];
      MatTVecAcc(params.tensor(Tensor::kValueHidden), v, h, dhv.data(),
                 dh.data(), counter);

      // LSTM cell.
      for (int j = 0; j < h; ++j) {
        const double i_g = s.gates[j];
        const double f_g = s.gates[h + j];
        const double g_g = s.gates[2 * h + j];
        const double o_g = s.gates[3 * h + j];
        const double th = s.cell_tanh[j];
        const double d_o = dh[j] * th;
        dc[j] = dc_next[j] + dh[j] * o_g * (1.0 - th * th);
        dz[j] = dc[j] * g_g * i_g * (1.0 - i_g);
        dz[h + j] = dc[j] * s.c_prev[j] * f_g * (1.0 - f_g);
        dz[2 * h + j] = dc[j] * i_g * (1.0 - g_g * g_g);
        dz[3 * h + j] = d_o * o_g * (1.0 - o_g);
        dc_next[j] = dc[j] * f_g;
      }
      if (counter) counter->multiplies += 18ULL * h;

      OuterAcc(g.tensor(Tensor::kLstmInput), 4 * h, in, dz.data(), s.input,
               counter);
      OuterAcc(g.tensor(Tensor::kLstmRecurrent), 4 * h, h, dz.data(),
               s.h_prev, counter);
      auto glb = g.tensor(Tensor::kLstmBias);
      for (int j = 0; j < 4 * h; ++j) glb[j] += dz[j];
      std::fill(dh_next.begin(), dh_next.end(), 0.0);
      MatTVecAcc(params.tensor(Tensor::kLstmRecurrent), 4 * h, h, dz.data(),
                 dh_next.data(), counter);
    }
  }
  return result;
}

double GradientNorm(const QNetworkParams& gradients) {
  double sq = 0.0;
  for (double x : gradients.values()) sq += x * x;
  return std::sqrt(sq);
}

QNetworkParams OptimizerStep(const QNetworkParams& params,
                             const QNetworkParams& gradients,
                             double learning_rate, double clip_norm) {
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("learning rate must be > 0");
  }
  if (!(params.shape() == gradients.shape())) {
    throw std::invalid_argument("gradient shape does not match parameters");
  }
  double factor = learning_rate;
  if (clip_norm > 0.0) {
    const double norm = GradientNorm(gradients);
    if (norm > clip_norm) factor *= clip_norm / norm;
  }
  QNetworkParams next = params;
  auto& w = next.values();
  const auto& dw = gradients.values();
  for (size_t i = 0; i < w.size(); ++i) w[i] -= factor * dw[i];
  return next;
}

}  // namespace spectrum
