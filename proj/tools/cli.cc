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

#include "cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "spectrum/aloha.h"
#include "spectrum/config.h"
#include "spectrum/fading.h"
#include "spectrum/metrics.h"
#include "spectrum/oracle.h"
#include "spectrum/simulator.h"
#include "spectrum/snapshot.h"

#ifndef SPECTRUM_VERSION
#define SPECTRUM_VERSION "unknown"
#endif

namespace spectrum::cli {
namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::vector<std::string> sets;
  std::string policy;
  int workers = 1;
  std::string snapshots;          // eval
  std::vector<double> pt;         // tabulate
  int lmax = 5;                   // tabulate
};

std::string Timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

SimConfig ResolveConfig(const Options& opts,
                        std::vector<std::string> prefix = {}) {
  std::vector<std::string> overrides = std::move(prefix);
  overrides.insert(overrides.end(), opts.sets.begin(), opts.sets.end());
  if (!opts.policy.empty()) overrides.push_back("policy = " + opts.policy);
  if (opts.seed) overrides.push_back("seeds = " + std::to_string(*opts.seed));
  return ParseConfig(opts.config, overrides);
}

fs::path OutputDir(const Options& opts) {
  fs::path dir = opts.out.empty() ? DefaultOutputDir() : fs::path(opts.out);
  fs::create_directories(dir);
  return dir;
}

fs::path RunDir(const fs::path& root, size_t index) {
  return root / ("run_" + std::to_string(index));
}

// Records the resolved configuration and the files a command produces.
class Manifest {
 public:
  Manifest(std::string command, const SimConfig& cfg, fs::path root)
      : command_(std::move(command)), cfg_(cfg), root_(std::move(root)) {
    started_ = Timestamp();
  }

  fs::path path() const { return root_ / ("manifest_" + command_ + ".json"); }

  void Add(const fs::path& file) {
    std::lock_guard<std::mutex> lock(mu_);
    files_.push_back(fs::relative(file, root_));
  }

  void Write(bool finished) const {
    ordered_json j;
    j["command"] = command_;
    j["version"] = SPECTRUM_VERSION;
    j["output_dir"] = fs::absolute(root_).string();
    j["started"] = started_;
    j["finished"] = finished ? Timestamp() : "";
    j["seeds"] = cfg_.seeds;
    j["config_text"] = ToConfigText(cfg_);
    ordered_json settings = ordered_json::object();
    std::istringstream in(ToConfigText(cfg_));
    for (std::string line; std::getline(in, line);) {
      const auto eq = line.find(" = ");
      if (eq != std::string::npos) {
        settings[line.substr(0, eq)] = line.substr(eq + 3);
      }
    }
    j["config"] = settings;
    ordered_json outputs = ordered_json::array();
    std::vector<fs::path> files = files_;
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
      ordered_json entry;
      entry["file"] = f.generic_string();
      entry["fnv1a64"] = finished ? FileDigest(root_ / f) : "";
      outputs.push_back(entry);
    }
    j["outputs"] = outputs;
    std::ofstream(path()) << j.dump(2) << '\n';
  }

  void Report(std::ostream& out) const {
    std::vector<fs::path> files = files_;
    std::sort(files.begin(), files.end());
    for (const fs::path& f : files) {
      out << "digest " << f.generic_string() << ' ' << FileDigest(root_ / f)
          << '\n';
    }
    out << "manifest " << path().string() << '\n';
  }

 private:
  std::string command_;
  SimConfig cfg_;
  fs::path root_;
  std::string started_;
  mutable std::mutex mu_;
  std::vector<fs::path> files_;
};

template <typename Fn>
void WriteFile(Manifest& manifest, const fs::path& path, Fn&& body) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  body(out);
  out.close();
  manifest.Add(path);
}

// Runs fn(index) for every seed index on `workers` threads; the first
// exception is rethrown after all workers stop.
template <typename Fn>
void ForEachSeed(size_t count, int workers, Fn&& fn) {
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto work = [&] {
    for (size_t i; (i = next++) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(workers, static_cast<int>(count)));
  std::vector<std::thread> threads;
  for (int w = 1; w < n; ++w) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

void WriteSummary(Manifest& manifest, const fs::path& path,
                  const std::vector<std::vector<SummaryLine>>& per_run) {
  WriteFile(manifest, path, [&](std::ostream& out) {
    out << kSummaryCsvHeader << '\n';
    for (const auto& lines : per_run) WriteSummaryCsv(out, lines, false);
  });
}

void WriteConfig(Manifest& manifest, const fs::path& root,
                 const std::string& command, const SimConfig& cfg) {
  WriteFile(manifest, root / (command + ".config"),
            [&](std::ostream& out) { out << ToConfigText(cfg); });
}

int Train(const Options& opts, std::ostream& out) {
  const SimConfig cfg = ResolveConfig(opts);
  const fs::path root = OutputDir(opts);
  Manifest manifest("train", cfg, root);
  WriteConfig(manifest, root, "train", cfg);
  manifest.Write(false);

  std::vector<std::vector<SummaryLine>> summary(cfg.seeds.size());
  ForEachSeed(cfg.seeds.size(), opts.workers, [&](size_t i) {
    const fs::path dir = RunDir(root, i);
    TrainingResult result = RunTraining(cfg, cfg.seeds[i], static_cast<int>(i));
    fs::create_directories(dir);
    SaveSnapshot((dir / "snapshot.txt").string(), result.snapshots);
    manifest.Add(dir / "snapshot.txt");
    if (cfg.log_rows) {
      WriteFile(manifest, dir / "train_rows.csv", [&](std::ostream& o) {
        WriteRowsCsv(o, result.metrics);
      });
    }
    WriteFile(manifest, dir / "train_loads.csv",
              [&](std::ostream& o) { WriteLoadsCsv(o, result.metrics); });
    WriteFile(manifest, dir / "train_iterations.csv",
              [&](std::ostream& o) { WriteIterationsCsv(o, result.metrics); });
    summary[i] = SummaryLines(result.metrics, cfg.seeds[i],
                              PolicyName(cfg.policy), "train");
  });
  WriteSummary(manifest, root / "summary_train.csv", summary);
  manifest.Write(true);
  manifest.Report(out);
  return kExitOk;
}

int Eval(const Options& opts, std::ostream& out) {
  const SimConfig cfg = ResolveConfig(opts);
  const fs::path root = OutputDir(opts);
  const fs::path source = opts.snapshots.empty() ? root : fs::path(opts.snapshots);
  Manifest manifest("eval", cfg, root);
  WriteConfig(manifest, root, "eval", cfg);
  manifest.Write(false);

  const double norm = SoleTransmitterRate(1.0, cfg.radio);
  const double bound = UpperBoundCurve(cfg) / norm;
  std::vector<std::vector<SummaryLine>> summary(cfg.seeds.size());
  ForEachSeed(cfg.seeds.size(), opts.workers, [&](size_t i) {
    const fs::path dir = RunDir(root, i);
    std::vector<AgentSnapshot> snapshots;
    if (cfg.policy == Policy::kRandom) {
      snapshots = ZeroSnapshots(cfg);
    } else {
      snapshots = LoadSnapshot((RunDir(source, i) / "snapshot.txt").string());
    }
    const MetricsRecord record =
        RunEvaluation(cfg, cfg.seeds[i], snapshots, static_cast<int>(i));
    if (cfg.log_rows) {
      WriteFile(manifest, dir / "eval_rows.csv",
                [&](std::ostream& o) { WriteRowsCsv(o, record); });
    }
    WriteFile(manifest, dir / "eval_loads.csv",
              [&](std::ostream& o) { WriteLoadsCsv(o, record); });
    summary[i] = SummaryLines(record, cfg.seeds[i], PolicyName(cfg.policy),
                              "eval");
    summary[i].push_back({static_cast<int>(i), cfg.seeds[i],
                          PolicyName(cfg.policy), "eval", "artifact_bound",
                          bound});
  });
  WriteSummary(manifest, root / "summary_eval.csv", summary);
  manifest.Write(true);
  for (const auto& lines : summary) {
    out << "seed " << lines.front().seed << " average_reward "
        << FormatCsvDouble(lines[1].value) << " artifact_bound "
        << FormatCsvDouble(bound) << '\n';
  }
  manifest.Report(out);
  return kExitOk;
}

std::string ProfileText(const ActionProfile& profile) {
  std::string s;
  for (int n = 0; n < profile.num_users(); ++n) {
    if (n) s += ',';
    s += std::to_string(profile.action(n));
  }
  return s;
}

int Oracle(const Options& opts, std::ostream& out) {
  // Enumerable instances are typically N <= K; the oracle permits them.
  const SimConfig cfg = ResolveConfig(opts, {"allow_underloaded = true"});
  if (cfg.channel_mode != FadingMode::kFixed) {
    throw ConfigError(ConfigError::Kind::kInvariant,
                      "oracle needs channel_mode = fixed and fixed_gains");
  }
  const fs::path root = OutputDir(opts);
  Manifest manifest("oracle", cfg, root);
  WriteConfig(manifest, root, "oracle", cfg);
  manifest.Write(false);

  const ChannelGainField field = ChannelGainField::Fixed(cfg.fixed_gains);
  const UtilityTable table = UtilityTable::Build(field, cfg.radio);
  const OptimalProfile best = BruteForceOptimal(table);
  out << "optimal_profile " << ProfileText(best.profile) << '\n';
  out << "welfare " << FormatCsvDouble(best.welfare) << '\n';
  for (const ActionProfile& p : PureNashProfiles(table)) {
    out << "pure_nash " << ProfileText(p) << " welfare "
        << FormatCsvDouble(Welfare(table.utilities(p))) << '\n';
  }
  WriteFile(manifest, root / "oracle.csv", [&](std::ostream& o) {
    o << "profile,welfare,pure_nash,optimal\n";
    for (size_t i = 0; i < table.num_profiles(); ++i) {
      const ActionProfile p = table.ProfileAt(i);
      o << '"' << ProfileText(p) << "\"," << FormatCsvDouble(Welfare(table.utilities(i)))
        << ',' << (IsPureNash(p, table) ? 1 : 0) << ','
        << (p == best.profile ? 1 : 0) << '\n';
    }
  });
  manifest.Write(true);
  manifest.Report(out);
  return kExitOk;
}

int Tabulate(const Options& opts, std::ostream& out) {
  const SimConfig cfg = ResolveConfig(opts);
  if (opts.lmax < 1) {
    throw ConfigError(ConfigError::Kind::kBadValue, "--lmax must be >= 1");
  }
  std::vector<double> pts = opts.pt;
  if (pts.empty()) pts.push_back(cfg.TransmitProbability());

  std::ostringstream table;
  table << "p_T,L,no_transmit,success,collision,channel_throughput\n";
  for (double p : pts) {
    for (int l = 1; l <= opts.lmax; ++l) {
      const AlohaProbabilities a = AnalyticProbabilities(p, l);
      table << FormatCsvDouble(p) << ',' << l << ','
            << FormatCsvDouble(a.no_transmit) << ','
            << FormatCsvDouble(a.success) << ','
            << FormatCsvDouble(a.collision) << ','
            << FormatCsvDouble(l * a.success) << '\n';
    }
  }
  const double p_t = cfg.TransmitProbability();
  const double split =
      BestSplitSuccessProbability(cfg.num_users, cfg.num_channels, p_t);
  const double rate = BestChannelRate(cfg);
  std::ostringstream bound;
  bound << "N,K,M,p_T,best_split_success,best_channel_rate,artifact_bound,"
           "artifact_bound_normalized\n"
        << cfg.num_users << ',' << cfg.num_channels << ',' << cfg.top_m << ','
        << FormatCsvDouble(p_t) << ',' << FormatCsvDouble(split) << ','
        << FormatCsvDouble(rate) << ',' << FormatCsvDouble(split * rate) << ','
        << FormatCsvDouble(split * rate / SoleTransmitterRate(1.0, cfg.radio))
        << '\n';
  out << table.str() << bound.str();

  const fs::path root = OutputDir(opts);
  Manifest manifest("tabulate", cfg, root);
  WriteConfig(manifest, root, "tabulate", cfg);
  manifest.Write(false);
  WriteFile(manifest, root / "aloha_table.csv",
            [&](std::ostream& o) { o << table.str(); });
  WriteFile(manifest, root / "artifact_bound.csv",
            [&](std::ostream& o) { o << bound.str(); });
  manifest.Write(true);
  return kExitOk;
}

void AddCommon(CLI::App* cmd, Options& opts) {
  cmd->add_option("--config", opts.config, "Flat key = value config file");
  cmd->add_option("--seed", opts.seed, "Single master seed (replaces seeds)");
  cmd->add_option("--out", opts.out, "Output directory");
  cmd->add_option("--set", opts.sets, "KEY=VALUE override (repeatable)")
      ->take_last()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  cmd->add_option("--policy", opts.policy, "d3rl | softmax | random")
      ->check(CLI::IsMember({"d3rl", "softmax", "random"}));
  cmd->add_option("--workers", opts.workers, "Parallel seeds")
      ->check(CLI::PositiveNumber);
}

}  // namespace

fs::path DefaultOutputDir() {
  if (const char* env = std::getenv("SPECTRUM_SIM_OUT"); env && *env) {
    return env;
  }
  return "spectrum_out";
}

std::string FileDigest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Multi-agent spectrum access simulator", "spectrum_sim"};
  app.require_subcommand(1);
  Options opts;
  CLI::App* train = app.add_subcommand("train", "Train agents, write snapshots");
  CLI::App* eval = app.add_subcommand("eval", "Evaluate trained snapshots");
  CLI::App* oracle = app.add_subcommand("oracle", "Enumerate a fixed-gain game");
  CLI::App* tabulate =
      app.add_subcommand("tabulate", "Closed-form ALOHA tables and bound");
  for (CLI::App* cmd : {train, eval, oracle, tabulate}) AddCommon(cmd, opts);
  eval->add_option("--snapshots", opts.snapshots,
                   "Training output directory (default: --out)");
  tabulate->add_option("--pt", opts.pt, "Transmit probabilities")
      ->check(CLI::Range(0.0, 1.0));
  tabulate->add_option("--lmax", opts.lmax, "Largest channel load");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*train) return Train(opts, out);
    if (*eval) return Eval(opts, out);
    if (*oracle) return Oracle(opts, out);
    return Tabulate(opts, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
}

}  // namespace spectrum::cli
