// mtsim/cli.hpp

// Copyright 2026  The mtsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MTSIM_CLI_HPP_
#define MTSIM_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "mtsim/mixer.hpp"
#include "mtsim/metrics.hpp"
#include "mtsim/tasks.hpp"
#include "mtsim/toy_corpus.hpp"

namespace mtsim {

inline constexpr const char *kToolkitName = "mtsim";
inline constexpr const char *kToolkitVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitIo = 3 };

/// Everything that determines a run's outputs. Precedence when building it:
/// defaults, then the --config file, then command-line flags.
struct RunConfig {
  uint64_t seed = 0;
  std::string manifest;
  std::string out;
  std::string templates;
  std::string mixtures;
  int sample_rate = kDefaultSampleRate;
  SimPlan plan;
  std::string tasks = "mt:1,tt:1,kt:1,ss:1,os:1,tl:1";
  NormalizationConfig norm;
  bool tt_allow_same_utterance = false;
  bool tt_random_window = false;
  bool ss_allow_absent = false;
  std::string mode = "sot_permutation";
  ToyCorpusConfig toy;
};

/// Serialized form. Paths are written relative to `base_dir` when given, so
/// the same run laid out in two directories yields the same bytes.
nlohmann::json to_json(const RunConfig &cfg,
                       const std::optional<std::filesystem::path> &base_dir = std::nullopt);
/// Applies the keys present in `j` on top of `cfg`. Throws Error(kUsage).
void merge_config(RunConfig &cfg, const nlohmann::json &j);

/// Entry point behind the `mtsim` binary. Returns the process exit code:
/// 0 success, 1 usage error, 2 data error, 3 I/O error.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace mtsim

#endif  // MTSIM_CLI_HPP_
