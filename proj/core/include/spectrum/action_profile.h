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

#ifndef SPECTRUM_ACTION_PROFILE_H_
#define SPECTRUM_ACTION_PROFILE_H_

#include <span>
#include <vector>

namespace spectrum {

// Joint action of all users for one slot. Entry 0 means "stay silent",
// entry k in 1..K means "transmit on channel k".
class ActionProfile {
 public:
  ActionProfile(std::vector<int> actions, int num_channels);

  int num_users() const { return static_cast<int>(actions_.size()); }
  int num_channels() const { return num_channels_; }
  int action(int user) const { return actions_[user]; }
  std::span<const int> actions() const { return actions_; }

  // Entry 0 counts silent users, entry k the users transmitting on channel k.
  std::vector<int> ChannelCounts() const;

  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;

 private:
  std::vector<int> actions_;
  int num_channels_;
};

}  // namespace spectrum

#endif  // SPECTRUM_ACTION_PROFILE_H_
