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

#include "spectrum/fading.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spectrum {

void RadioConfig::Validate() const {
  if (!std::isfinite(snr_db)) throw std::invalid_argument("snr_db must be finite");
  if (!(bandwidth_hz > 0)) throw std::invalid_argument("bandwidth_hz must be > 0");
  if (!(doppler_hz >= 0)) throw std::invalid_argument("doppler_hz must be >= 0");
  if (!(slot_duration_s > 0)) {
    throw std::invalid_argument("slot_duration_s must be > 0");
  }
}

double SnrLinear(double db) { return std::pow(10.0, db / 10.0); }

double DefaultAr1Coefficient(const RadioConfig& radio) {
  return std::exp(-2.0 * std::numbers::pi * radio.doppler_hz *
                  radio.slot_duration_s);
}

const char* FadingModeName(FadingMode mode) {
  switch (mode) {
    case FadingMode::kIid: return "iid";
    case FadingMode::kAr1: return "ar1";
    case FadingMode::kFixed: return "fixed";
  }
  return "?";
}

ChannelGainField::ChannelGainField(int num_users, int num_channels,
                                   FadingMode mode, double coefficient)
    : num_users_(num_users),
      num_channels_(num_channels),
      mode_(mode),
      ar1_coefficient_(coefficient),
      power_(static_cast<size_t>(num_users) * num_channels, 1.0) {
  if (num_users < 1 || num_channels < 1) {
    throw std::invalid_argument("gain field needs N >= 1 and K >= 1");
  }
}

ChannelGainField ChannelGainField::Iid(int num_users, int num_channels,
                                       Rng& rng) {
  ChannelGainField field(num_users, num_channels, FadingMode::kIid, 0.0);
  field.Redraw(rng);
  return field;
}

ChannelGainField ChannelGainField::Ar1(int num_users, int num_channels,
                                       double coefficient, Rng& rng) {
  if (!(coefficient >= 0.0 && coefficient < 1.0)) {
    throw std::invalid_argument("ar1 coefficient must lie in [0, 1)");
  }
  ChannelGainField field(num_users, num_channels, FadingMode::kAr1,
                         coefficient);
  field.amplitude_.resize(field.power_.size());
  field.Redraw(rng);
  return field;
}

ChannelGainField ChannelGainField::Fixed(
    const std::vector<std::vector<double>>& gains) {
  if (gains.empty() || gains.front().empty()) {
    throw std::invalid_argument("fixed gains must be a non-empty N x K table");
  }
  const int n = static_cast<int>(gains.size());
  const int k = static_cast<int>(gains.front().size());
  ChannelGainField field(n, k, FadingMode::kFixed, 0.0);
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(gains[u].size()) != k) {
      throw std::invalid_argument("fixed gains rows must all have K entries");
    }
    for (int c = 0; c < k; ++c) {
      if (!(gains[u][c] >= 0.0) || !std::isfinite(gains[u][c])) {
        throw std::invalid_argument("fixed gains must be finite and >= 0");
      }
      field.power_[static_cast<size_t>(u) * k + c] = gains[u][c];
    }
  }
  return field;
}

void ChannelGainField::RefreshPower() {
  for (size_t i = 0; i < amplitude_.size(); ++i) {
    power_[i] = std::norm(amplitude_[i]);
  }
}

void ChannelGainField::Redraw(Rng& rng) {
  switch (mode_) {
    case FadingMode::kIid: {
      std::exponential_distribution<double> exp1(1.0);
      for (double& p : power_) p = exp1(rng);
      break;
    }
    case FadingMode::kAr1: {
      // CN(0,1): real and imaginary parts each N(0, 1/2).
      std::normal_distribution<double> half(0.0, std::sqrt(0.5));
      for (auto& h : amplitude_) h = {half(rng), half(rng)};
      RefreshPower();
      break;
    }
    case FadingMode::kFixed:
      break;
  }
}

void ChannelGainField::Advance(Rng& rng) {
  if (mode_ != FadingMode::kAr1) {
    Redraw(rng);
    return;
  }
  const double a = ar1_coefficient_;
  const double innovation = std::sqrt(1.0 - a * a);
  std::normal_distribution<double> half(0.0, std::sqrt(0.5));
  for (auto& h : amplitude_) {
    const std::complex<double> w(half(rng), half(rng));
    h = a * h + innovation * w;
  }
  RefreshPower();
}

ChannelGainField AdvanceGains(ChannelGainField field, Rng& rng) {
  field.Advance(rng);
  return field;
}

double SoleTransmitterRate(double gain, const RadioConfig& radio) {
  return radio.bandwidth_hz * std::log2(1.0 + SnrLinear(radio.snr_db) * gain);
}

double InstantaneousUtility(const ActionProfile& profile,
                            const ChannelGainField& field, int user,
                            const RadioConfig& radio) {
  const int k = profile.action(user);
  if (k == 0) return 0.0;
  for (int m = 0; m < profile.num_users(); ++m) {
    if (m != user && profile.action(m) == k) return 0.0;
  }
  return SoleTransmitterRate(field.gain(user, k), radio);
}

}  // namespace spectrum
