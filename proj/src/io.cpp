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

#include "ontoca/io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "ontoca/errors.hpp"
#include "ontoca/ontology.hpp"

namespace ontoca {

namespace fs = std::filesystem;

Json load_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigInvalid(path.string(), std::string("not valid JSON: ") + e.what());
  }
}

std::string format_double(double value) {
  if (!std::isfinite(value)) {
    return std::isnan(value) ? "NaN" : (value > 0 ? "Infinity" : "-Infinity");
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

void dump_into(const Json& v, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        dump_into(it.value(), indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        dump_into(e, indent + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      // JSON has no non-finite numbers.
      out += std::isfinite(d) ? format_double(d) : Json(format_double(d)).dump();
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string dump_json(const Json& value) {
  std::string out;
  dump_into(value, 0, out);
  out += "\n";
  return out;
}

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  std::error_code ec;
  if (!fs::exists(dir, ec)) throw IoError("output directory does not exist: " + dir.string());
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

// -- Parsers ----------------------------------------------------------------

BigInt big_int_from_json(const Json& value, const std::string& where) {
  if (value.is_number_integer()) return BigInt(value.get<std::int64_t>());
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
      throw ConfigInvalid(where, "not a decimal integer: \"" + s + "\"");
    }
    return BigInt(s[0] == '+' ? s.substr(1) : s);
  }
  throw ConfigInvalid(where, "expected an integer");
}

namespace {

Json big_int_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return Json(static_cast<std::int64_t>(v));
  }
  return Json(v.str());
}

IntMatrix int_matrix_from_json(const Json& value, int dim, const std::string& where) {
  if (!value.is_array() || static_cast<int>(value.size()) != dim) {
    throw ConfigInvalid(where, "expected " + std::to_string(dim) + " rows");
  }
  IntMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const Json& row = value[static_cast<std::size_t>(r)];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ConfigInvalid(rw, "expected " + std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      m(r, c) = big_int_from_json(row[static_cast<std::size_t>(c)], rw + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

Json int_matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(big_int_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

int int_from_json(const Json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ConfigInvalid(where, "expected an integer");
  const auto v = value.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigInvalid(where, "integer out of range");
  }
  return static_cast<int>(v);
}

}  // namespace

HamiltonianModel model_from_json(const Json& value, const std::string& where) {
  if (!value.is_object()) throw ConfigInvalid(where, "model must be an object");
  if (value.contains("preset")) {
    const Json& p = value["preset"];
    if (!p.is_string()) throw ConfigInvalid(where + ".preset", "expected a string");
    try {
      return preset_hamiltonian(p.get<std::string>());
    } catch (const UnknownPreset& e) {
      throw ConfigInvalid(where + ".preset", e.what());
    }
  }
  if (!value.contains("dim")) throw ConfigInvalid(where, "needs \"preset\" or \"dim\"");
  const int dim = int_from_json(value["dim"], where + ".dim");
  if (dim < 1) throw ConfigInvalid(where + ".dim", "must be positive");
  IntMatrix s = IntMatrix::Zero(dim, dim);
  IntMatrix a = IntMatrix::Zero(dim, dim);
  if (value.contains("S")) s = int_matrix_from_json(value["S"], dim, where + ".S");
  if (value.contains("A")) a = int_matrix_from_json(value["A"], dim, where + ".A");
  try {
    return build_hamiltonian(std::move(s), std::move(a));
  } catch (const SymmetryViolation& e) {
    throw ConfigInvalid(where, e.what());
  }
}

Json model_to_json(const HamiltonianModel& model) {
  Json j;
  j["dim"] = model.dim();
  j["S"] = int_matrix_to_json(model.S());
  j["A"] = int_matrix_to_json(model.A());
  return j;
}

GaussianVector gaussian_vector_from_json(const Json& value, const std::string& where) {
  if (!value.is_array() || value.empty()) throw ConfigInvalid(where, "expected a nonempty list");
  GaussianVector v(static_cast<Eigen::Index>(value.size()));
  for (std::size_t k = 0; k < value.size(); ++k) {
    const std::string w = where + "[" + std::to_string(k) + "]";
    const Json& c = value[k];
    if (c.is_array()) {
      if (c.size() != 2) throw ConfigInvalid(w, "expected [re, im]");
      v(static_cast<Eigen::Index>(k)) =
          GaussianInt(big_int_from_json(c[0], w + "[0]"), big_int_from_json(c[1], w + "[1]"));
    } else {
      v(static_cast<Eigen::Index>(k)) = GaussianInt(big_int_from_json(c, w));
    }
  }
  return v;
}

Json gaussian_to_json(const GaussianInt& z) {
  return Json::array({big_int_to_json(z.real()), big_int_to_json(z.imag())});
}

GraphTopology topology_from_json(const Json& value, const std::string& where) {
  if (!value.is_object()) throw ConfigInvalid(where, "topology must be an object");
  if (!value.contains("n_vertices")) throw ConfigInvalid(where, "missing \"n_vertices\"");
  const int n = int_from_json(value["n_vertices"], where + ".n_vertices");
  try {
    if (value.contains("preset")) {
      const std::string p = value["preset"].is_string() ? value["preset"].get<std::string>() : "";
      if (p == "ring") return GraphTopology::ring(n);
      if (p == "path") return GraphTopology::path(n);
      if (p == "fully_connected") return GraphTopology::fully_connected(n);
      if (p == "empty") return GraphTopology::empty(n);
      throw ConfigInvalid(where + ".preset", "unknown topology preset \"" + p + "\"");
    }
    if (!value.contains("edges") || !value["edges"].is_array()) {
      throw ConfigInvalid(where + ".edges", "expected a list of [i, j] pairs");
    }
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < value["edges"].size(); ++k) {
      const Json& e = value["edges"][k];
      const std::string w = where + ".edges[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 2) throw ConfigInvalid(w, "expected [i, j]");
      edges.push_back({int_from_json(e[0], w + "[0]"), int_from_json(e[1], w + "[1]")});
    }
    return GraphTopology(n, std::move(edges));
  } catch (const InvalidTopology& e) {
    throw ConfigInvalid(where, e.what());
  }
}

Json topology_to_json(const GraphTopology& topology) {
  Json j;
  j["n_vertices"] = topology.n_vertices();
  Json edges = Json::array();
  for (const Edge& e : topology.edges()) edges.push_back(Json::array({e.i, e.j}));
  j["edges"] = std::move(edges);
  return j;
}

Schedule schedule_from_json(const Json& value, const std::string& where) {
  if (!value.is_object()) throw ConfigInvalid(where, "schedule must be an object");
  if (!value.contains("kind") || !value["kind"].is_string()) {
    throw ConfigInvalid(where + ".kind", "expected periodic, seeded_random or explicit");
  }
  const std::string kind = value["kind"].get<std::string>();
  if (!value.contains("steps") || !value["steps"].is_array()) {
    throw ConfigInvalid(where + ".steps", "expected a list of [i, j, sign]");
  }
  std::vector<ScheduledFlip> flips;
  for (std::size_t k = 0; k < value["steps"].size(); ++k) {
    const Json& s = value["steps"][k];
    const std::string w = where + ".steps[" + std::to_string(k) + "]";
    if (!s.is_array() || (s.size() != 2 && s.size() != 3)) {
      throw ConfigInvalid(w, "expected [i, j] or [i, j, sign]");
    }
    ScheduledFlip f;
    f.edge = {int_from_json(s[0], w + "[0]"), int_from_json(s[1], w + "[1]")};
    f.sign = s.size() == 3 ? int_from_json(s[2], w + "[2]") : 1;
    if (f.sign != 1 && f.sign != -1) throw ConfigInvalid(w + "[2]", "sign must be +1 or -1");
    flips.push_back(f);
  }
  if (flips.empty()) throw ConfigInvalid(where + ".steps", "schedule has no active edge");
  if (kind == "periodic") return Schedule::periodic(std::move(flips));
  if (kind == "explicit") return Schedule::explicit_steps(std::move(flips));
  if (kind == "seeded_random") {
    if (!value.contains("seed") || !value["seed"].is_number_unsigned()) {
      throw ConfigInvalid(where + ".seed", "seeded_random needs a nonnegative integer seed");
    }
    return Schedule::seeded_random(value["seed"].get<std::uint64_t>(), std::move(flips));
  }
  throw ConfigInvalid(where + ".kind", "unknown schedule kind \"" + kind + "\"");
}

std::vector<bool> bits_from_string(const std::string& bits, std::size_t expected,
                                   const std::string& where) {
  if (bits.size() != expected) {
    throw ConfigInvalid(where, "expected " + std::to_string(expected) + " bits, got \"" + bits + "\"");
  }
  std::vector<bool> out;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ConfigInvalid(where, "bits must be 0 or 1");
    out.push_back(c == '1');
  }
  return out;
}

// -- CSV --------------------------------------------------------------------

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out = "n,alpha,re,im\n";
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    const auto n = trajectory.start_index + static_cast<std::int64_t>(k);
    const GaussianVector& v = trajectory.states[k];
    for (Eigen::Index a = 0; a < v.size(); ++a) {
      out += std::to_string(n) + "," + std::to_string(a) + "," + v(a).real().str() + "," +
             v(a).imag().str() + "\n";
    }
  }
  return out;
}

std::string field_csv(const MultiTimeField<GaussianInt>& field) {
  std::string out = "n1,n2,component,re,im\n";
  for (const auto& [p, v] : field.values()) {
    for (Eigen::Index c = 0; c < v.size(); ++c) {
      out += std::to_string(p.first) + "," + std::to_string(p.second) + "," + std::to_string(c) +
             "," + v(c).real().str() + "," + v(c).imag().str() + "\n";
    }
  }
  return out;
}

std::string ising_csv(const std::vector<PhasedState>& states, const GraphTopology& topology,
                      bool include_edges) {
  std::string out = "step,vertex_bits,edge_bits,phase_exponent\n";
  const int edges = include_edges ? topology.n_edges() : 0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const SpinConfiguration c =
        SpinConfiguration::from_index(states[k].index, topology.n_vertices(), edges);
    out += std::to_string(k) + "," + c.vertex_string() + "," + c.edge_string() + "," +
           std::to_string(static_cast<int>(states[k].phase_exponent)) + "\n";
  }
  return out;
}

std::string dispersion_csv(const std::vector<double>& lambdas) {
  std::string out = "lambda,re_omega,im_omega\n";
  for (double l : lambdas) {
    const std::complex<double> w = dispersion_omega(l);
    out += format_double(l) + "," + format_double(w.real()) + "," + format_double(w.imag()) + "\n";
  }
  return out;
}

Json sweep_to_json(const std::vector<SweepPoint>& sweep) {
  Json out = Json::array();
  for (const SweepPoint& p : sweep) {
    Json row;
    row["epsilon"] = p.epsilon;
    row["deviation"] = p.deviation;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace ontoca
