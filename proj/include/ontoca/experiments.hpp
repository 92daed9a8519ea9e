// Copyright 2026 The ontoca Authors
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

// Declarative experiments: a JSON document names the experiment kind and its
// inputs, run() validates everything first and then executes it.

#ifndef ONTOCA_EXPERIMENTS_HPP_
#define ONTOCA_EXPERIMENTS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ontoca/gup.hpp"
#include "ontoca/io.hpp"

namespace ontoca {

enum class OutputFormat { kCsv, kJson };

/// Command-line values that take precedence over the document.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> steps;
  std::optional<std::filesystem::path> out;
  std::optional<OutputFormat> format;
  std::optional<int> sites;
  std::optional<double> scale;
  std::optional<Boundary> boundary;
  std::optional<int> samples;
};

struct ExperimentConfig {
  std::string kind;
  Json document = Json::object();
  /// Relative file references in the document resolve against this.
  std::filesystem::path base_dir = ".";
  Overrides overrides;
};

/// Names accepted in the "kind" field.
const std::vector<std::string>& experiment_kinds();

/// Reads a config file; `kind` (the subcommand) must agree with the
/// document's "kind" when both are present.
ExperimentConfig load_config(const std::filesystem::path& path, std::string_view kind);

struct RunResult {
  std::string kind;
  bool invariants_ok = true;
  /// One line, no trailing newline.
  std::string summary;
  /// Artifact text in the requested format.
  std::string artifact;
  std::optional<std::filesystem::path> written;

  int exit_code() const { return invariants_ok ? 0 : 1; }
};

/// Validates the whole configuration (ConfigInvalid on the first problem),
/// then runs the experiment and writes the artifact when an output path is
/// configured.
RunResult run(const ExperimentConfig& config);

/// The built-in invariant suite behind `verify-all`. Deterministic in `seed`.
Json verify_all(std::uint64_t seed);

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

/// From ONTOCA_LOG (error, warn, info, debug); warn when unset.
LogLevel log_level();
void log_message(LogLevel level, const std::string& message);

}  // namespace ontoca

#endif  // ONTOCA_EXPERIMENTS_HPP_
