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

#ifndef SPECTRUM_TOOLS_CLI_H_
#define SPECTRUM_TOOLS_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace spectrum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

// Runs the command line `args` (without the program name) and returns the
// process exit code. Diagnostics go to `err`, results to `out`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// 64-bit FNV-1a of a file's bytes, as 16 lowercase hex digits.
std::string FileDigest(const std::filesystem::path& path);

// Output directory used when --out is absent: $SPECTRUM_SIM_OUT, else
// "spectrum_out".
std::filesystem::path DefaultOutputDir();

}  // namespace spectrum::cli

#endif  // SPECTRUM_TOOLS_CLI_H_
