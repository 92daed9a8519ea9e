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

// File formats: JSON documents for models, topologies, schedules and
// reports, CSV for traces.

#ifndef ONTOCA_IO_HPP_
#define ONTOCA_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "ontoca/evolution.hpp"
#include "ontoca/hamiltonian.hpp"
#include "ontoca/ising.hpp"
#include "ontoca/multitime.hpp"
#include "ontoca/propagator.hpp"

namespace ontoca {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Parses and returns a JSON file. Throws IoError when it cannot be read and
/// ConfigInvalid(path) when it is not JSON.
Json load_json_file(const std::filesystem::path& path);

/// Deterministic text: keys in insertion order, two-space indent, doubles
/// with 17 significant digits, trailing newline.
std::string dump_json(const Json& value);

/// %.17g.
std::string format_double(double value);

/// Writes through a temporary file in the same directory and renames it over
/// `path`. Throws IoError.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Parsers. `where` is the JSON path used in ConfigInvalid messages. Integers
// may be given as JSON numbers or as decimal strings.

BigInt big_int_from_json(const Json& value, const std::string& where);

/// {"preset": "H2"} or {"dim": d, "S": [[...]], "A": [[...]]}.
HamiltonianModel model_from_json(const Json& value, const std::string& where);
Json model_to_json(const HamiltonianModel& model);

/// A list of components, each an integer or a [re, im] pair.
GaussianVector gaussian_vector_from_json(const Json& value, const std::string& where);
Json gaussian_to_json(const GaussianInt& z);

/// {"n_vertices": N, "edges": [[i, j], ...]} or
/// {"preset": "ring" | "path" | "fully_connected" | "empty", "n_vertices": N}.
GraphTopology topology_from_json(const Json& value, const std::string& where);
Json topology_to_json(const GraphTopology& topology);

/// {"kind": "periodic" | "seeded_random" | "explicit", "seed": s,
///  "steps": [[i, j, sign], ...]}.
Schedule schedule_from_json(const Json& value, const std::string& where);

/// '0'/'1' string, spin 0 first.
std::vector<bool> bits_from_string(const std::string& bits, std::size_t expected,
                                   const std::string& where);

// CSV writers; every row ends in '\n' and the first row is a header.

/// n, alpha, re, im.
std::string trajectory_csv(const Trajectory& trajectory);
/// n1, n2, component, re, im.
std::string field_csv(const MultiTimeField<GaussianInt>& field);
/// step, vertex_bits, edge_bits, phase_exponent.
std::string ising_csv(const std::vector<PhasedState>& states, const GraphTopology& topology,
                      bool include_edges);
/// lambda, re_omega, im_omega.
std::string dispersion_csv(const std::vector<double>& lambdas);

/// [{"epsilon": ..., "deviation": ...}, ...].
Json sweep_to_json(const std::vector<SweepPoint>& sweep);

}  // namespace ontoca

#endif  // ONTOCA_IO_HPP_
