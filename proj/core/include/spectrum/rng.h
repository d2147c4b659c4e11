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

#ifndef SPECTRUM_RNG_H_
#define SPECTRUM_RNG_H_

#include <cstdint>
#include <random>

namespace spectrum {

using Rng = std::mt19937_64;

// Named random streams. A run's master seed expands into one independent
// stream per (kind, index) pair, so switching policy never shifts the fading
// sequence or the per-user transmit coins.
enum class StreamKind : std::uint64_t {
  kFading = 1,
  kTransmit = 2,
  kExploration = 3,
  kInit = 4,
  kPolicy = 5,
  kBound = 6,
  kEvalFading = 7,
  kEvalTransmit = 8,
  kEvalPolicy = 9,
};

std::uint64_t SplitMix64(std::uint64_t& state);

Rng MakeStream(std::uint64_t master_seed, StreamKind kind,
               std::uint64_t index = 0);

}  // namespace spectrum

#endif  // SPECTRUM_RNG_H_
