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

// Runs one solver with periodic exploitability evaluation.

#ifndef RECFR_RUN_HPP_
#define RECFR_RUN_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "recfr/bootstrap.hpp"
#include "recfr/game.hpp"
#include "recfr/solver.hpp"

namespace recfr {

// Invalid configuration value; `key()` names the offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& message)
      : Error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

enum class Algorithm { kCfr, kRecfr, kXfp, kWarm, kRecfrB };

const char* to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);

struct RunConfig {
  std::string game = "kuhn";
  GameParams game_params;
  Algorithm algorithm = Algorithm::kCfr;
  int iterations = 100;
  int eval_every = 1;
  LambdaSchedule lambda;
  BootstrapConfig bootstrap;  // its lambda and seed are taken from this struct
  int warm_iterations = 100;        // virtual iterations of the initial profile
  std::string warm_source = "cfr";  // "cfr": average of warm_iterations CFR iterations; "uniform"
  std::uint64_t seed = 0;

  // Throws ConfigError naming the first invalid field.
  void validate() const;
};

struct RunRecord {
  int iteration = 0;
  std::int64_t nodes_touched = 0;  // cumulative
  std::int64_t samples = 0;        // cumulative
  double exploit_chips = 0.0;
  double exploit_mbbg = 0.0;
  double lambda = 0.0;
  double vsum = 0.0;
  double seconds = 0.0;  // solver time, evaluation excluded
};

struct RunLog {
  std::vector<RunRecord> records;
};

// Evaluates every `eval_every` iterations and after the last one.
RunLog run_solver(const RunConfig& config,
                  const std::function<void(const RunRecord&)>& on_record = {});

}  // namespace recfr

#endif  // RECFR_RUN_HPP_
