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

#include "spectrum/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace spectrum {
namespace {

using Kind = ConfigError::Kind;

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void BadValue(const std::string& key, const std::string& value,
                           const std::string& expected) {
  throw ConfigError(Kind::kBadValue, "config key '" + key + "': cannot parse '" +
                                         value + "' as " + expected);
}

template <typename T>
T ParseNumber(const std::string& key, const std::string& value,
              const char* expected) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  if (!value.empty() && value.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) BadValue(key, value, expected);
  return out;
}

int ParseInt(const std::string& key, const std::string& v) {
  return ParseNumber<int>(key, v, "an integer");
}

double ParseDouble(const std::string& key, const std::string& v) {
  const double x = ParseNumber<double>(key, v, "a real number");
  if (!std::isfinite(x)) BadValue(key, v, "a finite real number");
  return x;
}

bool ParseBool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  BadValue(key, v, "a boolean (true/false)");
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(Trim(part));
  return parts;
}

std::string FormatDouble(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

struct Field {
  std::function<void(SimConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const SimConfig&)> get;
};

template <typename M>
Field IntField(M member) {
  return {[member](SimConfig& c, const std::string& k, const std::string& v) {
            c.*member = ParseInt(k, v);
          },
          [member](const SimConfig& c) { return std::to_string(c.*member); }};
}

template <typename M>
Field DoubleField(M member) {
  return {[member](SimConfig& c, const std::string& k, const std::string& v) {
            c.*member = ParseDouble(k, v);
          },
          [member](const SimConfig& c) { return FormatDouble(c.*member); }};
}

template <typename M>
Field RadioField(M member) {
  return {[member](SimConfig& c, const std::string& k, const std::string& v) {
            c.radio.*member = ParseDouble(k, v);
          },
          [member](const SimConfig& c) { return FormatDouble(c.radio.*member); }};
}

template <typename M>
Field BoolField(M member) {
  return {[member](SimConfig& c, const std::string& k, const std::string& v) {
            c.*member = ParseBool(k, v);
          },
          [member](const SimConfig& c) {
            return std::string(c.*member ? "true" : "false");
          }};
}

const std::map<std::string, Field>& Fields() {
  static const std::map<std::string, Field> fields = [] {
    std::map<std::string, Field> f;
    f["N"] = IntField(&SimConfig::num_users);
    f["K"] = IntField(&SimConfig::num_channels);
    f["M"] = IntField(&SimConfig::top_m);
    f["R"] = IntField(&SimConfig::iterations);
    f["E"] = IntField(&SimConfig::episodes);
    f["T"] = IntField(&SimConfig::slots);
    f["p_T"] = {[](SimConfig& c, const std::string& k, const std::string& v) {
                  if (v == "auto") {
                    c.p_transmit.reset();
                  } else {
                    c.p_transmit = ParseDouble(k, v);
                  }
                },
                [](const SimConfig& c) {
                  return c.p_transmit ? FormatDouble(*c.p_transmit)
                                      : std::string("auto");
                }};
    f["gamma"] = DoubleField(&SimConfig::gamma);
    f["alpha"] = DoubleField(&SimConfig::alpha);
    f["hidden"] = IntField(&SimConfig::hidden);
    f["value_width"] = IntField(&SimConfig::value_width);
    f["advantage_width"] = IntField(&SimConfig::advantage_width);
    f["snr_db"] = RadioField(&RadioConfig::snr_db);
    f["bandwidth_hz"] = RadioField(&RadioConfig::bandwidth_hz);
    f["doppler_hz"] = RadioField(&RadioConfig::doppler_hz);
    f["slot_duration_s"] = RadioField(&RadioConfig::slot_duration_s);
    f["channel_mode"] = {
        [](SimConfig& c, const std::string& k, const std::string& v) {
          if (v == "iid") {
            c.channel_mode = FadingMode::kIid;
          } else if (v == "ar1") {
            c.channel_mode = FadingMode::kAr1;
          } else if (v == "fixed") {
            c.channel_mode = FadingMode::kFixed;
          } else {
            BadValue(k, v, "one of iid, ar1, fixed");
          }
        },
        [](const SimConfig& c) { return std::string(FadingModeName(c.channel_mode)); }};
    f["ar1_coefficient"] = {
        [](SimConfig& c, const std::string& k, const std::string& v) {
          if (v == "auto") {
            c.ar1_coefficient.reset();
          } else {
            c.ar1_coefficient = ParseDouble(k, v);
          }
        },
        [](const SimConfig& c) {
          return c.ar1_coefficient ? FormatDouble(*c.ar1_coefficient)
                                   : std::string("auto");
        }};
    f["fixed_gains"] = {
        [](SimConfig& c, const std::string& k, const std::string& v) {
          c.fixed_gains.clear();
          if (v.empty()) return;
          for (const std::string& row : Split(v, ';')) {
            std::vector<double> gains;
            for (const std::string& g : Split(row, ',')) {
              gains.push_back(ParseDouble(k, g));
            }
            c.fixed_gains.push_back(std::move(gains));
          }
        },
        [](const SimConfig& c) {
          std::string out;
          for (size_t n = 0; n < c.fixed_gains.size(); ++n) {
            if (n) out += ';';
            for (size_t k = 0; k < c.fixed_gains[n].size(); ++k) {
              if (k) out += ',';
              out += FormatDouble(c.fixed_gains[n][k]);
            }
          }
          return out;
        }};
    f["redraw_gains_each_episode"] =
        BoolField(&SimConfig::redraw_gains_each_episode);
    f["observability"] = {
        [](SimConfig& c, const std::string& k, const std::string& v) {
          if (v == "distributed") {
            c.observability = Observability::kDistributed;
          } else if (v == "genie") {
            c.observability = Observability::kGenie;
          } else {
            BadValue(k, v, "one of distributed, genie");
          }
        },
        [](const SimConfig& c) {
          return std::string(ObservabilityName(c.observability));
        }};
    f["policy"] = {[](SimConfig& c, const std::string& k, const std::string& v) {
                     try {
                       c.policy = ParsePolicy(v);
                     } catch (const std::invalid_argument&) {
                       BadValue(k, v, "one of d3rl, softmax, random");
                     }
                   },
                   [](const SimConfig& c) { return std::string(PolicyName(c.policy)); }};
    f["beta"] = DoubleField(&SimConfig::beta);
    f["beta_start"] = DoubleField(&SimConfig::beta_start);
    f["seeds"] = {[](SimConfig& c, const std::string& k, const std::string& v) {
                    c.seeds.clear();
                    for (const std::string& s : Split(v, ',')) {
                      c.seeds.push_back(
                          ParseNumber<std::uint64_t>(k, s, "an unsigned 64-bit seed"));
                    }
                  },
                  [](const SimConfig& c) {
                    std::string out;
                    for (size_t i = 0; i < c.seeds.size(); ++i) {
                      if (i) out += ',';
                      out += std::to_string(c.seeds[i]);
                    }
                    return out;
                  }};
    f["window"] = IntField(&SimConfig::window);
    f["clip_norm"] = DoubleField(&SimConfig::clip_norm);
    f["epsilon_start"] = DoubleField(&SimConfig::epsilon_start);
    f["epsilon_end"] = DoubleField(&SimConfig::epsilon_end);
    f["epsilon_decay_fraction"] = DoubleField(&SimConfig::epsilon_decay_fraction);
    f["train_steps"] = IntField(&SimConfig::train_steps);
    f["shared_weights"] = BoolField(&SimConfig::shared_weights);
    f["eval_episodes"] = IntField(&SimConfig::eval_episodes);
    f["log_rows"] = BoolField(&SimConfig::log_rows);
    f["allow_underloaded"] = BoolField(&SimConfig::allow_underloaded);
    return f;
  }();
  return fields;
}

[[noreturn]] void Violated(const std::string& what) {
  throw ConfigError(Kind::kInvariant, "invalid configuration: " + what);
}

bool IsProbability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

const char* PolicyName(Policy policy) {
  switch (policy) {
    case Policy::kD3rl: return "d3rl";
    case Policy::kSoftmax: return "softmax";
    case Policy::kRandom: return "random";
  }
  return "?";
}

const char* ObservabilityName(Observability obs) {
  return obs == Observability::kGenie ? "genie" : "distributed";
}

Policy ParsePolicy(const std::string& text) {
  if (text == "d3rl") return Policy::kD3rl;
  if (text == "softmax") return Policy::kSoftmax;
  if (text == "random") return Policy::kRandom;
  throw std::invalid_argument("unknown policy '" + text + "'");
}

double SimConfig::TransmitProbability() const {
  if (p_transmit) return *p_transmit;
  return std::min(1.0, static_cast<double>(num_channels) / num_users);
}

double SimConfig::Ar1Coefficient() const {
  return ar1_coefficient.value_or(DefaultAr1Coefficient(radio));
}

void SimConfig::Validate() const {
  if (num_users < 1 || num_channels < 1 || top_m < 1 || iterations < 1 ||
      episodes < 1 || slots < 1) {
    Violated("N, K, M, R, E, T must all be >= 1");
  }
  if (num_users <= num_channels && !allow_underloaded) {
    Violated("N > K required (got N=" + std::to_string(num_users) +
             ", K=" + std::to_string(num_channels) + ")");
  }
  if (top_m > num_channels) {
    Violated("K >= M required (got K=" + std::to_string(num_channels) +
             ", M=" + std::to_string(top_m) + ")");
  }
  const double p = TransmitProbability();
  if (!(p > 0.0 && p <= 1.0)) Violated("p_T must lie in (0, 1]");
  if (!IsProbability(gamma)) Violated("gamma must lie in [0, 1]");
  if (!(alpha > 0.0)) Violated("alpha must be > 0");
  if (hidden < 1 || value_width < 1 || advantage_width < 1) {
    Violated("hidden, value_width, advantage_width must be >= 1");
  }
  try {
    radio.Validate();
  } catch (const std::invalid_argument& e) {
    Violated(e.what());
  }
  if (channel_mode == FadingMode::kAr1) {
    const double a = Ar1Coefficient();
    if (!(a >= 0.0 && a < 1.0)) Violated("ar1_coefficient must lie in [0, 1)");
  }
  if (channel_mode == FadingMode::kFixed) {
    if (static_cast<int>(fixed_gains.size()) != num_users) {
      Violated("fixed_gains needs N rows");
    }
    for (const auto& row : fixed_gains) {
      if (static_cast<int>(row.size()) != num_channels) {
        Violated("fixed_gains rows need K entries");
      }
      for (double g : row) {
        if (!(g >= 0.0)) Violated("fixed_gains must be >= 0");
      }
    }
  }
  if (!(beta >= 0.0) || !(beta_start >= 0.0)) Violated("beta must be >= 0");
  if (seeds.empty()) Violated("at least one seed required");
  if (window < 1) Violated("window must be >= 1");
  if (!(clip_norm >= 0.0)) Violated("clip_norm must be >= 0 (0 disables)");
  if (!IsProbability(epsilon_start) || !IsProbability(epsilon_end)) {
    Violated("epsilon_start and epsilon_end must lie in [0, 1]");
  }
  if (!(epsilon_decay_fraction > 0.0 && epsilon_decay_fraction <= 1.0)) {
    Violated("epsilon_decay_fraction must lie in (0, 1]");
  }
  if (train_steps < 1) Violated("train_steps must be >= 1");
  if (eval_episodes < 0) Violated("eval_episodes must be >= 0");
}

void ApplySetting(SimConfig& cfg, const std::string& key,
                  const std::string& value) {
  const auto& fields = Fields();
  const auto it = fields.find(key);
  if (it == fields.end()) {
    throw ConfigError(Kind::kUnknownKey, "unknown config key '" + key + "'");
  }
  it->second.set(cfg, key, value);
}

namespace {

void ApplyLine(SimConfig& cfg, const std::string& raw, const std::string& where) {
  std::string line = raw;
  if (const auto hash = line.find('#'); hash != std::string::npos) {
    line.resize(hash);
  }
  line = Trim(line);
  if (line.empty()) return;
  const auto eq = line.find('=');
  if (eq == std::string::npos) {
    throw ConfigError(Kind::kSyntax,
                      where + ": expected 'key = value', got '" + line + "'");
  }
  ApplySetting(cfg, Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)));
}

SimConfig Finish(SimConfig cfg, const std::vector<std::string>& overrides) {
  for (const std::string& o : overrides) ApplyLine(cfg, o, "override");
  cfg.Validate();
  return cfg;
}

}  // namespace

SimConfig ParseConfigText(const std::string& text,
                          const std::vector<std::string>& overrides) {
  SimConfig cfg;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    ApplyLine(cfg, line, "line " + std::to_string(number));
  }
  return Finish(std::move(cfg), overrides);
}

SimConfig ParseConfig(const std::string& path,
                      const std::vector<std::string>& overrides) {
  if (path.empty()) return ParseConfigText("", overrides);
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(Kind::kMissingFile, "config file not found: " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfigText(buffer.str(), overrides);
}

std::string ToConfigText(const SimConfig& cfg) {
  std::string out;
  for (const auto& [key, field] : Fields()) {
    out += key + " = " + field.get(cfg) + "\n";
  }
  return out;
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const auto& [key, field] : Fields()) keys.push_back(key);
  return keys;
}

}  // namespace spectrum
