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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "gtest/gtest.h"

namespace spectrum::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path Fresh(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("spectrum_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::vector<std::string> TinyTrain(const fs::path& out, const std::string& seed) {
  return {"train", "--out", out.string(), "--seed", seed,
          "--set", "R=2", "--set", "E=2", "--set", "T=4", "--set", "hidden=4"};
}

std::map<std::string, std::string> Digests(const std::string& text) {
  std::map<std::string, std::string> d;
  std::istringstream in(text);
  for (std::string word, file, hash; in >> word;) {
    if (word == "digest" && in >> file >> hash) d[file] = hash;
  }
  return d;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(CliTest, OracleTwoByTwo) {
  const auto r = Invoke({"oracle", "--out", Fresh("oracle").string(),
                      "--set", "N=2", "--set", "K=2", "--set", "channel_mode=fixed",
                      "--set", "fixed_gains=2,1;1,2", "--set", "snr_db=0",
                      "--set", "bandwidth_hz=1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("optimal_profile 1,2\n"), std::string::npos);
  EXPECT_NE(r.out.find("welfare 3.1699"), std::string::npos);
}

TEST(CliTest, TabulateMatchesClosedForm) {
  const auto r = Invoke({"tabulate", "--pt", "0.5", "--lmax", "3", "--out",
                      Fresh("tabulate").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("0.5,1,0.5,0.5,0,"), std::string::npos);
  EXPECT_NE(r.out.find("0.5,2,0.5,0.25,0.25,"), std::string::npos);
  EXPECT_NE(r.out.find("0.5,3,0.5,0.125,0.375,"), std::string::npos);
}

TEST(CliTest, TrainTwiceSameDigests) {
  const auto a = Invoke(TinyTrain(Fresh("train_a"), "7"));
  const auto b = Invoke(TinyTrain(Fresh("train_b"), "7"));
  ASSERT_EQ(a.code, kExitOk) << a.err;
  ASSERT_EQ(b.code, kExitOk) << b.err;
  const auto da = Digests(a.out);
  EXPECT_FALSE(da.empty());
  EXPECT_EQ(da, Digests(b.out));
  EXPECT_TRUE(da.count("run_0/snapshot.txt"));
  EXPECT_TRUE(da.count("summary_train.csv"));
}

TEST(CliTest, WorkersDoNotChangeOutputs) {
  auto args = TinyTrain(Fresh("workers_1"), "1");
  args.insert(args.end(), {"--set", "seeds=1,2,3"});
  // --seed would override the seed list; drop it.
  args.erase(args.begin() + 3, args.begin() + 5);
  auto parallel = args;
  parallel[2] = Fresh("workers_3").string();
  parallel.insert(parallel.end(), {"--workers", "3"});
  const auto a = Invoke(args), b = Invoke(parallel);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_EQ(Digests(a.out), Digests(b.out));
  EXPECT_TRUE(Digests(a.out).count("run_2/train_loads.csv"));
}

TEST(CliTest, EvalReadsTrainingSnapshots) {
  const fs::path dir = Fresh("eval");
  ASSERT_EQ(Invoke(TinyTrain(dir, "3")).code, kExitOk);
  const auto r = Invoke({"eval", "--out", dir.string(), "--seed", "3", "--set",
                      "R=2", "--set", "E=2", "--set", "T=4", "--set", "hidden=4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("artifact_bound"), std::string::npos);
  const std::string rows = Slurp(dir / "run_0" / "eval_rows.csv");
  EXPECT_EQ(rows.substr(0, rows.find('\n')),
            "run,iteration,episode,slot,user,action,ack,reward");
  EXPECT_EQ(Slurp(dir / "summary_eval.csv").substr(0, 34),
            "run,seed,policy,phase,metric,value");
}

TEST(CliTest, ManifestEchoesResolvedConfig) {
  const fs::path dir = Fresh("manifest");
  auto args = TinyTrain(dir, "2");
  args.insert(args.end(), {"--set", "gamma=0.95", "--set", "alpha=0.05"});
  ASSERT_EQ(Invoke(args).code, kExitOk);
  const std::string manifest = Slurp(dir / "manifest_train.json");
  EXPECT_NE(manifest.find("\"gamma\": \"0.95\""), std::string::npos);
  EXPECT_NE(manifest.find("\"alpha\": \"0.05\""), std::string::npos);
  EXPECT_NE(manifest.find("run_0/snapshot.txt"), std::string::npos);
  EXPECT_NE(manifest.find("\"seeds\""), std::string::npos);
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(Invoke({"train", "--set", "bogus=1"}).code, kExitConfigError);
  EXPECT_EQ(Invoke({"train", "--config", "/nonexistent.cfg"}).code, kExitConfigError);
  EXPECT_EQ(Invoke({"train", "--set", "N=50", "--set", "K=100"}).code,
            kExitConfigError);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitConfigError);
  EXPECT_EQ(Invoke({"train", "--policy", "greedy"}).code, kExitConfigError);
  const auto missing = Invoke({"eval", "--out", Fresh("missing").string(),
                            "--snapshots", "/nonexistent"});
  EXPECT_EQ(missing.code, kExitRuntimeError);
  EXPECT_NE(missing.err.find("snapshot"), std::string::npos);
}

TEST(CliTest, EnvironmentSetsDefaultOutput) {
  const fs::path dir = Fresh("env");
  setenv("SPECTRUM_SIM_OUT", dir.string().c_str(), 1);
  EXPECT_EQ(DefaultOutputDir(), dir);
  const auto r = Invoke({"tabulate", "--lmax", "2"});
  unsetenv("SPECTRUM_SIM_OUT");
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_TRUE(fs::exists(dir / "aloha_table.csv"));
  EXPECT_EQ(DefaultOutputDir(), fs::path("spectrum_out"));
}

TEST(CliTest, FileDigestIsFnv1a) {
  const fs::path p = fs::temp_directory_path() / "spectrum_fnv.txt";
  std::ofstream(p) << "a";
  EXPECT_EQ(FileDigest(p), "af63dc4c8601ec8c");
  std::ofstream(p, std::ios::trunc).close();
  EXPECT_EQ(FileDigest(p), "cbf29ce484222325");
}

}  // namespace
}  // namespace spectrum::cli
