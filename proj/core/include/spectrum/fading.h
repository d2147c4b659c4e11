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

#ifndef SPECTRUM_FADING_H_
#define SPECTRUM_FADING_H_

#include <complex>
#include <vector>

#include "spectrum/action_profile.h"
#include "spectrum/rng.h"

namespace spectrum {

struct RadioConfig {
  double snr_db = 35.0;
  double bandwidth_hz = 20e6;
  double doppler_hz = 100.0;
  double slot_duration_s = 1e-3;

  // Throws std::invalid_argument on a non-finite SNR or non-positive
  // bandwidth / slot duration / negative Doppler.
  void Validate() const;
};

double SnrLinear(double db);

// exp(-2*pi*doppler*slot): first-order coherence between consecutive slots.
double DefaultAr1Coefficient(const RadioConfig& radio);

enum class FadingMode { kIid, kAr1, kFixed };

const char* FadingModeName(FadingMode mode);

// Per-user, per-channel power gains |h_n(k)|^2. Channels are addressed
// 1..K to match action indices.
class ChannelGainField {
 public:
  static ChannelGainField Iid(int num_users, int num_channels, Rng& rng);
  static ChannelGainField Ar1(int num_users, int num_channels,
                              double coefficient, Rng& rng);
  // gains[n][k-1] is the constant power gain of user n on channel k.
  static ChannelGainField Fixed(const std::vector<std::vector<double>>& gains);

  int num_users() const { return num_users_; }
  int num_channels() const { return num_channels_; }
  FadingMode mode() const { return mode_; }
  double ar1_coefficient() const { return ar1_coefficient_; }

  double gain(int user, int channel) const {
    return power_[static_cast<size_t>(user) * num_channels_ + channel - 1];
  }

  // One slot of evolution. iid: fresh draws; ar1: h <- a*h + sqrt(1-a^2)*w
  // on the underlying complex gain; fixed: unchanged.
  void Advance(Rng& rng);

  // Draws a fresh stationary sample (no-op for fixed gains).
  void Redraw(Rng& rng);

 private:
  ChannelGainField(int num_users, int num_channels, FadingMode mode,
                   double coefficient);

  void RefreshPower();

  int num_users_;
  int num_channels_;
  FadingMode mode_;
  double ar1_coefficient_;
  std::vector<double> power_;
  std::vector<std::complex<double>> amplitude_;  // ar1 only
};

ChannelGainField AdvanceGains(ChannelGainField field, Rng& rng);

// B*log2(1 + snr*|h_user(k)|^2) when `user` is the only transmitter on its
// channel k, otherwise 0.
double InstantaneousUtility(const ActionProfile& profile,
                            const ChannelGainField& field, int user,
                            const RadioConfig& radio);

// Rate of a collision-free transmission at power gain `gain`.
double SoleTransmitterRate(double gain, const RadioConfig& radio);

}  // namespace spectrum

#endif  // SPECTRUM_FADING_H_
