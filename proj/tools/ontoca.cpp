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

// ontoca <subcommand> [--config FILE] [overrides]
//
// Exit status: 0 all invariants held, 1 an invariant failed, 2 bad
// configuration or usage, 3 any other error.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ontoca/errors.hpp"
#include "ontoca/experiments.hpp"

namespace {

struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  int steps = 0;
  std::string out;
  std::string format;
  int sites = 0;
  double scale = 0.0;
  std::string boundary;
  int samples = 0;
};

void add_flags(CLI::App* sub, Flags& f, bool gup) {
  sub->add_option("--config,-c", f.config, "JSON experiment document")->check(CLI::ExistingFile);
  sub->add_option("--seed", f.seed, "RNG seed");
  sub->add_option("--steps", f.steps, "number of steps")->check(CLI::PositiveNumber);
  sub->add_option("--out,-o", f.out, "artifact path");
  sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  if (gup) {
    sub->add_option("--sites", f.sites, "lattice sites")->check(CLI::Range(16, 1 << 20));
    sub->add_option("--scale", f.scale, "discreteness scale l")->check(CLI::PositiveNumber);
    sub->add_option("--boundary", f.boundary, "periodic or open")
        ->check(CLI::IsMember({"periodic", "open"}));
    sub->add_option("--samples", f.samples, "random states")->check(CLI::PositiveNumber);
  }
}

ontoca::ExperimentConfig build_config(const std::string& kind, const CLI::App* sub, const Flags& f) {
  ontoca::ExperimentConfig config;
  if (!f.config.empty()) {
    config = ontoca::load_config(f.config, kind);
  } else {
    config.kind = kind;
  }
  ontoca::Overrides& ov = config.overrides;
  if (sub->count("--seed")) ov.seed = f.seed;
  if (sub->count("--steps")) ov.steps = f.steps;
  if (sub->count("--out")) ov.out = f.out;
  if (sub->count("--format")) {
    ov.format = f.format == "csv" ? ontoca::OutputFormat::kCsv : ontoca::OutputFormat::kJson;
  }
  if (kind == "gup") {
    if (sub->count("--sites")) ov.sites = f.sites;
    if (sub->count("--scale")) ov.scale = f.scale;
    if (sub->count("--boundary")) {
      ov.boundary = f.boundary == "open" ? ontoca::Boundary::kOpen : ontoca::Boundary::kPeriodic;
    }
    if (sub->count("--samples")) ov.samples = f.samples;
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cellular automaton ontology experiments"};
  app.require_subcommand(1);
  Flags flags;
  for (const std::string& kind : ontoca::experiment_kinds()) {
    add_flags(app.add_subcommand(kind, "run the " + kind + " experiment"), flags, kind == "gup");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string kind = sub->get_name();
  try {
    const ontoca::RunResult result = ontoca::run(build_config(kind, sub, flags));
    std::cout << result.summary << "\n";
    return result.exit_code();
  } catch (const ontoca::ConfigInvalid& e) {
    std::cerr << "ontoca: invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ontoca: " << kind << ": " << e.what() << "\n";
    return 3;
  }
}
