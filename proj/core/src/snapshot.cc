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

#include "spectrum/snapshot.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace spectrum {
namespace {

constexpr std::string_view kMagic = "spectrum-snapshot";
constexpr int kVersion = 1;

[[noreturn]] void Fail(const std::string& what) {
  throw std::runtime_error("snapshot: " + what);
}

void Expect(std::istream& in, std::string_view keyword) {
  std::string token;
  if (!(in >> token) || token != keyword) {
    Fail("expected '" + std::string(keyword) + "', got '" + token + "'");
  }
}

template <typename T>
T ReadValue(std::istream& in, const char* what) {
  T value{};
  if (!(in >> value)) Fail(std::string("could not read ") + what);
  return value;
}

}  // namespace

std::string FormatHexDouble(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::hex);
  if (ec != std::errc()) Fail("could not format double");
  return std::string(buf, ptr);
}

double ParseHexDouble(std::string_view text) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x,
                                   std::chars_format::hex);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail("bad hex double '" + std::string(text) + "'");
  }
  return x;
}

void WriteSnapshot(std::ostream& out, std::span<const AgentSnapshot> agents) {
  if (agents.empty()) Fail("nothing to write");
  const NetworkShape& shape = agents.front().params.shape();
  out << kMagic << ' ' << kVersion << '\n';
  out << "shape " << shape.num_channels << ' ' << shape.hidden << ' '
      << shape.value_width << ' ' << shape.advantage_width << '\n';
  out << "agents " << agents.size() << '\n';
  for (size_t n = 0; n < agents.size(); ++n) {
    const AgentSnapshot& agent = agents[n];
    if (!(agent.params.shape() == shape)) Fail("agents differ in shape");
    out << "agent " << n << '\n';
    const auto entries = agent.counters.WindowEntries();
    out << "counters " << agent.counters.window() << ' ' << entries.size();
    for (const auto& e : entries) out << ' ' << e.channel << ':' << e.ack;
    out << '\n';
    for (int t = 0; t < kNumTensors; ++t) {
      const TensorInfo& info = agent.params.info(static_cast<Tensor>(t));
      out << "tensor " << info.name << ' ' << info.rows << ' ' << info.cols
          << '\n';
      auto data = agent.params.tensor(static_cast<Tensor>(t));
      for (int r = 0; r < info.rows; ++r) {
        for (int c = 0; c < info.cols; ++c) {
          if (c) out << ' ';
          out << FormatHexDouble(data[static_cast<size_t>(r) * info.cols + c]);
        }
        out << '\n';
      }
    }
  }
  out << "end\n";
}

std::vector<AgentSnapshot> ReadSnapshot(std::istream& in) {
  Expect(in, kMagic);
  if (ReadValue<int>(in, "version") != kVersion) Fail("unsupported version");
  Expect(in, "shape");
  NetworkShape shape;
  shape.num_channels = ReadValue<int>(in, "K");
  shape.hidden = ReadValue<int>(in, "hidden");
  shape.value_width = ReadValue<int>(in, "value_width");
  shape.advantage_width = ReadValue<int>(in, "advantage_width");
  try {
    shape.Validate();
  } catch (const std::invalid_argument& e) {
    Fail(e.what());
  }
  Expect(in, "agents");
  const auto count = ReadValue<size_t>(in, "agent count");
  if (count == 0) Fail("no agents");

  std::vector<AgentSnapshot> agents;
  agents.reserve(count);
  for (size_t n = 0; n < count; ++n) {
    Expect(in, "agent");
    if (ReadValue<size_t>(in, "agent index") != n) Fail("agents out of order");
    Expect(in, "counters");
    const int window = ReadValue<int>(in, "window");
    const auto num_entries = ReadValue<size_t>(in, "entry count");
    if (window < 1 || num_entries > static_cast<size_t>(window)) {
      Fail("bad counter window");
    }
    std::vector<LoadCounters::Entry> entries(num_entries);
    for (auto& e : entries) {
      std::string token = ReadValue<std::string>(in, "counter entry");
      const auto colon = token.find(':');
      if (colon == std::string::npos) Fail("bad counter entry " + token);
      int channel = 0, ack = 0;
      std::from_chars(token.data(), token.data() + colon, channel);
      std::from_chars(token.data() + colon + 1, token.data() + token.size(),
                      ack);
      if (channel < 0 || channel > shape.num_channels || (ack != 0 && ack != 1)) {
        Fail("bad counter entry " + token);
      }
      e.channel = channel;
      e.ack = ack == 1;
    }
    AgentSnapshot agent{QNetworkParams(shape),
                        LoadCounters(shape.num_channels, window)};
    try {
      agent.counters =
          LoadCounters::FromEntries(shape.num_channels, window, entries);
    } catch (const std::invalid_argument& e) {
      Fail(e.what());
    }
    for (int t = 0; t < kNumTensors; ++t) {
      const TensorInfo& info = agent.params.info(static_cast<Tensor>(t));
      Expect(in, "tensor");
      const auto name = ReadValue<std::string>(in, "tensor name");
      const int rows = ReadValue<int>(in, "rows");
      const int cols = ReadValue<int>(in, "cols");
      if (name != info.name || rows != info.rows || cols != info.cols) {
        Fail("tensor '" + name + "' does not match layout entry '" +
             std::string(info.name) + "'");
      }
      auto data = agent.params.tensor(static_cast<Tensor>(t));
      for (double& x : data) x = ParseHexDouble(ReadValue<std::string>(in, "weight"));
    }
    agents.push_back(std::move(agent));
  }
  Expect(in, "end");
  return agents;
}

void SaveSnapshot(const std::string& path,
                  std::span<const AgentSnapshot> agents) {
  std::ofstream out(path);
  if (!out) Fail("cannot open " + path + " for writing");
  WriteSnapshot(out, agents);
  if (!out) Fail("write to " + path + " failed");
}

std::vector<AgentSnapshot> LoadSnapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail("cannot open " + path);
  return ReadSnapshot(in);
}

}  // namespace spectrum
