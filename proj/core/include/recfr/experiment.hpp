// Copyright 2026 The recfr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment configuration, CSV logs and run comparison.

#ifndef RECFR_EXPERIMENT_HPP_
#define RECFR_EXPERIMENT_HPP_

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "recfr/run.hpp"

namespace recfr {

inline constexpr char kCsvHeader[] =
    "iteration,nodes_touched,samples,exploit_chips,exploit_mbbg,lambda,vsum,seconds";

// Thrown by parse_config for --help; what() is the usage text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  RunConfig run;
  std::string output;  // CSV path; empty or "-" writes to stdout
};

// Keys accepted on the command line (as --key) and in config files.
const std::vector<std::string>& config_keys();

// Applies `key = value` settings over the defaults. Throws ConfigError on an
// unknown key, a malformed value or an out-of-range value.
ExperimentConfig config_from_settings(const std::map<std::string, std::string>& settings);

// Reads `key = value` lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path);

// Parses the arguments of the `run` subcommand (without the program and
// subcommand names). A --config file is read first and flags override it.
// RECFR_SEED supplies the seed when neither sets one.
ExperimentConfig parse_config(const std::vector<std::string>& args);

// The resolved configuration as `# key = value` lines.
std::string describe(const ExperimentConfig& config);

std::string format_csv_row(const RunRecord& record);
std::string format_csv(const RunLog& log);
void write_csv(const RunLog& log, const std::string& path);
RunLog parse_csv(const std::string& text);
RunLog read_csv(const std::string& path);

// Runs the solver and writes the CSV as records arrive.
RunLog run_experiment(const ExperimentConfig& config);

struct ThresholdCrossing {
  double threshold_mbbg = 0.0;
  bool reached = false;
  int iteration = 0;
  std::int64_t nodes_touched = 0;
};

struct RunSummary {
  std::string path;
  RunRecord final_record;
  std::vector<ThresholdCrossing> crossings;
};

inline const std::vector<double>& comparison_thresholds() {
  static const std::vector<double> thresholds{1000.0, 100.0, 10.0};
  return thresholds;
}

RunSummary summarize(const std::string& path, const RunLog& log);

// Reads at least two CSVs with the standard header and prints final
// exploitability and threshold crossings per run.
std::vector<RunSummary> compare_runs(const std::vector<std::string>& paths, std::ostream& out);

}  // namespace recfr

#endif  // RECFR_EXPERIMENT_HPP_
