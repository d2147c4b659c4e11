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

#ifndef SPECTRUM_SNAPSHOT_H_
#define SPECTRUM_SNAPSHOT_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spectrum/load_estimator.h"
#include "spectrum/qnetwork.h"

namespace spectrum {

// Trained state of one user: its selection network and its load counters.
struct AgentSnapshot {
  QNetworkParams params;
  LoadCounters counters{1, 1};
};

// Text format, one token group per line:
//
//   spectrum-snapshot 1
//   shape <K> <hidden> <value_width> <advantage_width>
//   agents <count>
//   agent <index>
//   counters <window> <entries> <channel>:<ack> ...   (oldest first)
//   tensor <name> <rows> <cols>
//   <rows lines of cols hexadecimal doubles>
//   ... (all tensors in layout order, then the next agent)
//   end
//
// Doubles use std::to_chars hex form (e.g. "-1.8p+1"), so a write/read
// cycle reproduces every bit.
void WriteSnapshot(std::ostream& out, std::span<const AgentSnapshot> agents);
std::vector<AgentSnapshot> ReadSnapshot(std::istream& in);

void SaveSnapshot(const std::string& path,
                  std::span<const AgentSnapshot> agents);
std::vector<AgentSnapshot> LoadSnapshot(const std::string& path);

std::string FormatHexDouble(double x);
double ParseHexDouble(std::string_view text);

}  // namespace spectrum

#endif  // SPECTRUM_SNAPSHOT_H_
