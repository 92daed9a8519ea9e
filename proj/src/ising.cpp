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

#include "ontoca/ising.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <utility>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "ontoca/errors.hpp"

namespace ontoca {

namespace {

using SparseC = Eigen::SparseMatrix<std::complex<double>>;

constexpr std::complex<double> kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

Edge normalized(Edge e) {
  if (e.i > e.j) std::swap(e.i, e.j);
  return e;
}

std::size_t checked_size(int bits, int max_bits) {
  if (bits > max_bits || bits > 31) {
    throw DimensionOverflow("configuration space needs " + std::to_string(bits) +
                            " bits, limit is " + std::to_string(std::min(max_bits, 31)));
  }
  return std::size_t{1} << bits;
}

SparseC local_operator(const Eigen::Matrix2cd& m) { return m.sparseView(); }

/// ⊗ over bits n-1 .. 0, with `ops` indexed by bit; missing entries are 1.
SparseC tensor(int n_bits, const std::vector<std::pair<int, Eigen::Matrix2cd>>& ops) {
  SparseC out(1, 1);
  out.insert(0, 0) = 1.0;
  for (int bit = n_bits - 1; bit >= 0; --bit) {
    Eigen::Matrix2cd local = Eigen::Matrix2cd::Identity();
    for (const auto& [b, m] : ops) {
      if (b == bit) local = m;
    }
    SparseC next = Eigen::kroneckerProduct(out, local_operator(local));
    out = std::move(next);
  }
  out.makeCompressed();
  return out;
}

Eigen::Matrix2cd sigma1() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

// Rows/columns are (bit 0, bit 1); bit 1 is sigma_3 = +1.
Eigen::Matrix2cd projector_up() {
  Eigen::Matrix2cd m;
  m << 0, 0, 0, 1;
  return m;
}

Eigen::Matrix2cd projector_down() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, 0;
  return m;
}

/// G_e = P_up(e) sigma_1^(i) sigma_1^(j) + P_down(e).
SparseC edge_generator(const GraphTopology& topology, int e) {
  const int n = topology.total_bits();
  const Edge edge = topology.edges()[static_cast<std::size_t>(e)];
  const int edge_bit = topology.n_vertices() + e;
  SparseC up = tensor(n, {{edge_bit, projector_up()}, {edge.i, sigma1()}, {edge.j, sigma1()}});
  SparseC down = tensor(n, {{edge_bit, projector_down()}});
  SparseC g = up + down;
  g.makeCompressed();
  return g;
}

}  // namespace

// -- GraphTopology ----------------------------------------------------------

GraphTopology::GraphTopology(int n_vertices, std::vector<Edge> edges)
    : n_vertices_(n_vertices), edges_(std::move(edges)) {
  if (n_vertices_ < 2) throw InvalidTopology("topology needs at least two vertices");
  std::set<std::pair<int, int>> seen;
  for (Edge& e : edges_) {
    e = normalized(e);
    if (e.i < 0 || e.j >= n_vertices_) {
      throw InvalidTopology("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                            ") has a vertex out of range");
    }
    if (e.i == e.j) throw InvalidTopology("self-loop at vertex " + std::to_string(e.i));
    if (!seen.insert({e.i, e.j}).second) {
      throw InvalidTopology("duplicate edge (" + std::to_string(e.i) + "," +
                            std::to_string(e.j) + ")");
    }
  }
}

GraphTopology GraphTopology::fully_connected(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return GraphTopology(n, std::move(edges));
}

GraphTopology GraphTopology::ring(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  if (n > 2) edges.push_back({0, n - 1});
  return GraphTopology(n, std::move(edges));
}

GraphTopology GraphTopology::path(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return GraphTopology(n, std::move(edges));
}

GraphTopology GraphTopology::empty(int n) { return GraphTopology(n, {}); }

std::optional<int> GraphTopology::edge_index(Edge e) const {
  e = normalized(e);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (edges_[k] == e) return static_cast<int>(k);
  }
  return std::nullopt;
}

// -- SpinConfiguration ------------------------------------------------------

BasisIndex SpinConfiguration::basis_index() const {
  const std::size_t bits = vertex_bits.size() + edge_bits.size();
  if (bits > 31) throw DimensionOverflow("spin configuration wider than 31 bits");
  BasisIndex b = 0;
  for (std::size_t v = 0; v < vertex_bits.size(); ++v) {
    if (vertex_bits[v]) b |= BasisIndex{1} << v;
  }
  for (std::size_t e = 0; e < edge_bits.size(); ++e) {
    if (edge_bits[e]) b |= BasisIndex{1} << (vertex_bits.size() + e);
  }
  return b;
}

SpinConfiguration SpinConfiguration::from_index(BasisIndex index, int n_vertices, int n_edges) {
  SpinConfiguration c;
  for (int v = 0; v < n_vertices; ++v) c.vertex_bits.push_back((index >> v) & 1U);
  for (int e = 0; e < n_edges; ++e) c.edge_bits.push_back((index >> (n_vertices + e)) & 1U);
  return c;
}

namespace {
std::string bit_string(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}
}  // namespace

std::string SpinConfiguration::vertex_string() const { return bit_string(vertex_bits); }
std::string SpinConfiguration::edge_string() const { return bit_string(edge_bits); }

// -- PhasedPermutation ------------------------------------------------------

PhasedPermutation::PhasedPermutation(std::vector<BasisIndex> target,
                                     std::vector<std::uint8_t> phase_exponent)
    : target_(std::move(target)), phase_(std::move(phase_exponent)) {
  if (phase_.size() != target_.size()) {
    throw NotPermutation("target and phase maps have different sizes");
  }
  std::vector<bool> hit(target_.size(), false);
  for (std::size_t b = 0; b < target_.size(); ++b) {
    const BasisIndex t = target_[b];
    if (t >= target_.size()) throw NotPermutation("target out of range at " + std::to_string(b));
    if (hit[t]) throw NotPermutation("target " + std::to_string(t) + " hit twice");
    hit[t] = true;
    phase_[b] &= 3U;
  }
}

PhasedPermutation PhasedPermutation::identity(std::size_t size) {
  std::vector<BasisIndex> t(size);
  for (std::size_t b = 0; b < size; ++b) t[b] = static_cast<BasisIndex>(b);
  return PhasedPermutation(std::move(t), std::vector<std::uint8_t>(size, 0));
}

PhasedPermutation compose(const PhasedPermutation& after, const PhasedPermutation& before) {
  if (after.size() != before.size()) throw DimensionMismatch("compose: sizes differ");
  std::vector<BasisIndex> t(before.size());
  std::vector<std::uint8_t> p(before.size());
  for (std::size_t b = 0; b < before.size(); ++b) {
    const BasisIndex mid = before.target_[b];
    t[b] = after.target_[mid];
    p[b] = static_cast<std::uint8_t>((before.phase_[b] + after.phase_[mid]) & 3U);
  }
  return PhasedPermutation(std::move(t), std::move(p));
}

PhasedPermutation PhasedPermutation::inverse() const {
  std::vector<BasisIndex> t(size());
  std::vector<std::uint8_t> p(size());
  for (std::size_t b = 0; b < size(); ++b) {
    t[target_[b]] = static_cast<BasisIndex>(b);
    p[target_[b]] = static_cast<std::uint8_t>((4U - phase_[b]) & 3U);
  }
  return PhasedPermutation(std::move(t), std::move(p));
}

PhasedPermutation PhasedPermutation::with_global_phase(int k) const {
  std::vector<std::uint8_t> p(phase_);
  const int shift = ((k % 4) + 4) % 4;
  for (auto& e : p) e = static_cast<std::uint8_t>((e + shift) & 3U);
  return PhasedPermutation(target_, std::move(p));
}

ComplexMatrix PhasedPermutation::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t b = 0; b < size(); ++b) m(target_[b], static_cast<Eigen::Index>(b)) = kPhases[phase_[b]];
  return m;
}

Eigen::SparseMatrix<std::complex<double>> PhasedPermutation::sparse() const {
  const auto n = static_cast<Eigen::Index>(size());
  std::vector<Eigen::Triplet<std::complex<double>>> entries;
  entries.reserve(size());
  for (std::size_t b = 0; b < size(); ++b) {
    entries.emplace_back(target_[b], static_cast<Eigen::Index>(b), kPhases[phase_[b]]);
  }
  SparseC m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

std::vector<PhasedState> iterate(const PhasedPermutation& perm, PhasedState start, int steps) {
  if (start.index >= perm.size()) throw DimensionMismatch("start index outside the basis");
  std::vector<PhasedState> out{start};
  out.reserve(static_cast<std::size_t>(std::max(steps, 0)) + 1);
  for (int n = 0; n < steps; ++n) {
    const PhasedState& s = out.back();
    out.push_back({perm.target(s.index),
                   static_cast<std::uint8_t>((s.phase_exponent + perm.phase_exponent(s.index)) & 3U)});
  }
  return out;
}

PhasedPermutation power(const PhasedPermutation& perm, int k) {
  PhasedPermutation out = PhasedPermutation::identity(perm.size());
  for (int n = 0; n < k; ++n) out = compose(perm, out);
  return out;
}

// -- Model A ----------------------------------------------------------------

Schedule::Schedule(Kind kind, std::uint64_t seed, std::vector<ScheduledFlip> flips)
    : kind_(kind), seed_(seed), flips_(std::move(flips)) {}

Schedule Schedule::periodic(std::vector<ScheduledFlip> flips) {
  return Schedule(Kind::kPeriodic, 0, std::move(flips));
}

Schedule Schedule::seeded_random(std::uint64_t seed, std::vector<ScheduledFlip> pool) {
  return Schedule(Kind::kSeededRandom, seed, std::move(pool));
}

Schedule Schedule::explicit_steps(std::vector<ScheduledFlip> flips) {
  return Schedule(Kind::kExplicit, 0, std::move(flips));
}

std::vector<ScheduledFlip> Schedule::expand(int steps) const {
  if (flips_.empty()) throw InvalidSchedule("schedule has no active edge");
  std::vector<ScheduledFlip> out;
  out.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  switch (kind_) {
    case Kind::kPeriodic:
      for (int n = 0; n < steps; ++n) out.push_back(flips_[static_cast<std::size_t>(n) % flips_.size()]);
      break;
    case Kind::kSeededRandom: {
      std::mt19937_64 rng(seed_);
      for (int n = 0; n < steps; ++n) out.push_back(flips_[rng() % flips_.size()]);
      break;
    }
    case Kind::kExplicit:
      if (static_cast<std::size_t>(steps) > flips_.size()) {
        throw ScheduleExhausted("explicit schedule covers " + std::to_string(flips_.size()) +
                                " steps, " + std::to_string(steps) + " requested");
      }
      out.assign(flips_.begin(), flips_.begin() + steps);
      break;
  }
  return out;
}

void Schedule::validate(const GraphTopology& topology) const {
  if (flips_.empty()) throw InvalidSchedule("schedule has no active edge");
  for (const ScheduledFlip& f : flips_) {
    if (f.sign != 1 && f.sign != -1) {
      throw InvalidSchedule("coefficient must be +1 or -1, got " + std::to_string(f.sign));
    }
    if (!topology.edge_index(f.edge)) {
      throw EdgeNotInTopology("edge (" + std::to_string(f.edge.i) + "," +
                              std::to_string(f.edge.j) + ") is not in the topology");
    }
  }
}

PhasedPermutation model_a_step_operator(const GraphTopology& topology, Edge active_edge,
                                        int sign) {
  if (!topology.edge_index(active_edge)) {
    throw EdgeNotInTopology("edge (" + std::to_string(active_edge.i) + "," +
                            std::to_string(active_edge.j) + ") is not in the topology");
  }
  if (sign != 1 && sign != -1) throw InvalidSchedule("coefficient must be +1 or -1");
  const std::size_t size = checked_size(topology.n_vertices(), kDefaultMaxBits);
  const BasisIndex mask = (BasisIndex{1} << active_edge.i) | (BasisIndex{1} << active_edge.j);
  std::vector<BasisIndex> t(size);
  for (std::size_t b = 0; b < size; ++b) t[b] = static_cast<BasisIndex>(b) ^ mask;
  // -i for c = +1, +i for c = -1.
  return PhasedPermutation(std::move(t),
                           std::vector<std::uint8_t>(size, sign == 1 ? 3 : 1));
}

std::vector<PhasedState> model_a_evolve(const GraphTopology& topology, BasisIndex start,
                                        const Schedule& schedule, int steps) {
  schedule.validate(topology);
  if (start >> topology.n_vertices() != 0) {
    throw DimensionMismatch("start configuration has bits beyond the vertex spins");
  }
  const std::vector<ScheduledFlip> flips = schedule.expand(steps);
  std::vector<PhasedState> out{{start, 0}};
  for (const ScheduledFlip& f : flips) {
    const Edge e = normalized(f.edge);
    const PhasedState& s = out.back();
    const BasisIndex mask = (BasisIndex{1} << e.i) | (BasisIndex{1} << e.j);
    const std::uint8_t phase = f.sign == 1 ? 3 : 1;
    out.push_back({s.index ^ mask, static_cast<std::uint8_t>((s.phase_exponent + phase) & 3U)});
  }
  return out;
}

// -- Model B ----------------------------------------------------------------

PhasedPermutation model_b_factor(const GraphTopology& topology, int edge_index, int max_bits) {
  if (edge_index < 0 || edge_index >= topology.n_edges()) {
    throw EdgeNotInTopology("edge index " + std::to_string(edge_index) + " out of range");
  }
  const std::size_t size = checked_size(topology.total_bits(), max_bits);
  const Edge e = topology.edges()[static_cast<std::size_t>(edge_index)];
  const BasisIndex flip = (BasisIndex{1} << e.i) | (BasisIndex{1} << e.j);
  const BasisIndex gate = BasisIndex{1} << (topology.n_vertices() + edge_index);
  std::vector<BasisIndex> t(size);
  for (std::size_t b = 0; b < size; ++b) {
    const auto bb = static_cast<BasisIndex>(b);
    t[b] = (bb & gate) ? bb ^ flip : bb;
  }
  return PhasedPermutation(std::move(t), std::vector<std::uint8_t>(size, 0));
}

PhasedPermutation model_b_transfer(const GraphTopology& topology, int max_bits) {
  const std::size_t size = checked_size(topology.total_bits(), max_bits);
  const int n = topology.n_vertices();
  std::vector<BasisIndex> flips;
  for (const Edge& e : topology.edges()) {
    flips.push_back((BasisIndex{1} << e.i) | (BasisIndex{1} << e.j));
  }
  std::vector<BasisIndex> t(size);
  for (std::size_t b = 0; b < size; ++b) {
    auto bb = static_cast<BasisIndex>(b);
    BasisIndex out = bb;
    for (std::size_t e = 0; e < flips.size(); ++e) {
      if ((bb >> (n + e)) & 1U) out ^= flips[e];
    }
    t[b] = out;
  }
  return PhasedPermutation(std::move(t), std::vector<std::uint8_t>(size, 3));
}

Eigen::SparseMatrix<std::complex<double>> model_b_matrix(const GraphTopology& topology,
                                                         const std::vector<int>& edge_order) {
  const int bits = topology.total_bits();
  checked_size(bits, kDefaultMaxBits);
  std::vector<int> order = edge_order;
  if (order.empty()) {
    for (int e = 0; e < topology.n_edges(); ++e) order.push_back(e);
  }
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] != static_cast<int>(k) || sorted.size() != static_cast<std::size_t>(topology.n_edges())) {
      throw InvalidTopology("edge order is not a permutation of the edges");
    }
  }
  const Eigen::Index dim = Eigen::Index{1} << bits;
  SparseC m(dim, dim);
  m.setIdentity();
  m *= std::complex<double>(0, -1);
  for (int e : order) {
    SparseC next = edge_generator(topology, e) * m;
    m = std::move(next);
  }
  m.prune(std::complex<double>(0.0, 0.0));
  m.makeCompressed();
  return m;
}

PermutationStructure audit_phased_permutation(const Eigen::SparseMatrix<std::complex<double>>& m) {
  PermutationStructure out;
  if (m.rows() != m.cols()) return out;
  const Eigen::Index n = m.rows();
  std::vector<int> row_count(static_cast<std::size_t>(n), 0);
  std::vector<int> col_count(static_cast<std::size_t>(n), 0);
  bool unit = true;
  for (Eigen::Index c = 0; c < m.outerSize(); ++c) {
    for (SparseC::InnerIterator it(m, c); it; ++it) {
      if (it.value() == std::complex<double>(0.0, 0.0)) continue;
      ++row_count[static_cast<std::size_t>(it.row())];
      ++col_count[static_cast<std::size_t>(it.col())];
      // Entries are built from 0, ±1, ±i only, so this comparison is exact.
      if (std::norm(it.value()) != 1.0) unit = false;
    }
  }
  out.one_entry_per_row_and_column =
      std::all_of(row_count.begin(), row_count.end(), [](int k) { return k == 1; }) &&
      std::all_of(col_count.begin(), col_count.end(), [](int k) { return k == 1; });
  out.unit_modulus_entries = unit;
  SparseC product = SparseC(m.adjoint()) * m;
  product.prune(std::complex<double>(0.0, 0.0));
  SparseC id(n, n);
  id.setIdentity();
  out.unitary = (product - id).norm() == 0.0;
  return out;
}

ExponentialFormReport verify_exponential_form(const GraphTopology& topology) {
  const int bits = topology.total_bits();
  if (bits > kDenseVerificationBits) {
    throw DimensionOverflow("exponential-form check limited to " +
                            std::to_string(kDenseVerificationBits) + " bits");
  }
  const Eigen::Index dim = Eigen::Index{1} << bits;
  SparseC generator(dim, dim);
  for (int e = 0; e < topology.n_edges(); ++e) generator += edge_generator(topology, e);
  generator.makeCompressed();

  // Connected components of the sparsity graph; the generator is block
  // diagonal over them.
  std::vector<int> component(static_cast<std::size_t>(dim), -1);
  std::vector<std::vector<Eigen::Index>> blocks;
  for (Eigen::Index seed = 0; seed < dim; ++seed) {
    if (component[static_cast<std::size_t>(seed)] >= 0) continue;
    const int id = static_cast<int>(blocks.size());
    blocks.emplace_back();
    std::vector<Eigen::Index> stack{seed};
    component[static_cast<std::size_t>(seed)] = id;
    while (!stack.empty()) {
      const Eigen::Index c = stack.back();
      stack.pop_back();
      blocks.back().push_back(c);
      for (SparseC::InnerIterator it(generator, c); it; ++it) {
        if (it.value() == std::complex<double>(0.0, 0.0)) continue;
        auto& slot = component[static_cast<std::size_t>(it.row())];
        if (slot < 0) {
          slot = id;
          stack.push_back(it.row());
        }
      }
    }
  }

  const PhasedPermutation exact = model_b_transfer(topology, kDenseVerificationBits);
  const double angle = std::numbers::pi / 2.0;
  ExponentialFormReport report;
  std::vector<ComplexMatrix> exps;
  std::vector<std::vector<Eigen::Index>> position(blocks.size());
  std::vector<Eigen::Index> local(static_cast<std::size_t>(dim), 0);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    auto& members = blocks[k];
    std::sort(members.begin(), members.end());
    const auto size = static_cast<Eigen::Index>(members.size());
    report.largest_block = std::max(report.largest_block, static_cast<int>(size));
    for (Eigen::Index a = 0; a < size; ++a) local[static_cast<std::size_t>(members[static_cast<std::size_t>(a)])] = a;
    ComplexMatrix block = ComplexMatrix::Zero(size, size);
    for (Eigen::Index a = 0; a < size; ++a) {
      for (SparseC::InnerIterator it(generator, members[static_cast<std::size_t>(a)]); it; ++it) {
        block(local[static_cast<std::size_t>(it.row())], a) = it.value();
      }
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(block);
    ComplexVector phases(size);
    for (Eigen::Index a = 0; a < size; ++a) {
      phases(a) = std::exp(std::complex<double>(0.0, -angle * solver.eigenvalues()(a)));
    }
    exps.push_back(solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint());
  }

  auto numeric = [&](Eigen::Index row, Eigen::Index col) -> std::complex<double> {
    const int kr = component[static_cast<std::size_t>(row)];
    const int kc = component[static_cast<std::size_t>(col)];
    if (kr != kc) return 0.0;
    return exps[static_cast<std::size_t>(kc)](local[static_cast<std::size_t>(row)],
                                              local[static_cast<std::size_t>(col)]);
  };

  std::complex<double> overlap = 0.0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto bb = static_cast<BasisIndex>(b);
    overlap += std::conj(kPhases[exact.phase_exponent(bb)]) * numeric(exact.target(bb), b);
  }
  const std::complex<double> c =
      std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : std::complex<double>(1.0, 0.0);
  report.global_phase = c;

  double worst = 0.0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& members = blocks[k];
    const auto size = static_cast<Eigen::Index>(members.size());
    for (Eigen::Index a = 0; a < size; ++a) {
      const auto col = static_cast<BasisIndex>(members[static_cast<std::size_t>(a)]);
      const BasisIndex target = exact.target(col);
      const bool target_inside = component[target] == static_cast<int>(k);
      if (!target_inside) worst = std::max(worst, 1.0);
      for (Eigen::Index r = 0; r < size; ++r) {
        const auto row = static_cast<BasisIndex>(members[static_cast<std::size_t>(r)]);
        const std::complex<double> expected =
            row == target ? c * kPhases[exact.phase_exponent(col)] : std::complex<double>(0.0);
        worst = std::max(worst, std::abs(exps[k](r, a) - expected));
      }
    }
  }
  report.max_deviation = worst;
  return report;
}

bool projector_identity_check(int k) {
  if (k < 1) throw DomainTooSmall("projector identity needs k >= 1");
  using R = BigRational;
  Matrix<R> s3(2, 2), id(2, 2);
  s3 << R(-1), R(0), R(0), R(1);
  id << R(1), R(0), R(0), R(1);
  const R half(1, 2);
  const Matrix<R> plus = half * (s3 + id);
  const Matrix<R> minus = -half * (s3 - id);
  bool ok = true;
  for (const Matrix<R>* p : {&plus, &minus}) {
    Matrix<R> acc = *p;
    for (int n = 1; n < k; ++n) acc = Matrix<R>(acc * *p);
    ok = ok && acc == *p;
  }
  return ok;
}

GaugeReport gauge_check(const PhasedPermutation& transform, const GraphTopology& topology) {
  const PhasedPermutation transfer = model_b_transfer(topology);
  if (transform.size() != transfer.size()) {
    throw DimensionMismatch("gauge transform acts on " + std::to_string(transform.size()) +
                            " states, model has " + std::to_string(transfer.size()));
  }
  const PhasedPermutation ut = compose(transform, transfer);
  const PhasedPermutation tu = compose(transfer, transform);
  GaugeReport report;
  for (std::size_t b = 0; b < ut.size(); ++b) {
    const auto bb = static_cast<BasisIndex>(b);
    double entry = 0.0;
    if (ut.target(bb) != tu.target(bb)) {
      entry = 1.0;
    } else {
      entry = std::abs(kPhases[ut.phase_exponent(bb)] - kPhases[tu.phase_exponent(bb)]);
    }
    report.max_commutator_entry = std::max(report.max_commutator_entry, entry);
  }
  report.commutes = report.max_commutator_entry == 0.0;
  return report;
}

GaugeReport gauge_check(const ComplexMatrix& transform, const GraphTopology& topology) {
  if (topology.total_bits() > kDenseVerificationBits) {
    throw DimensionOverflow("dense gauge check limited to " +
                            std::to_string(kDenseVerificationBits) + " bits");
  }
  const PhasedPermutation t = model_b_transfer(topology);
  const auto n = static_cast<Eigen::Index>(t.size());
  if (transform.rows() != n || transform.cols() != n) {
    throw DimensionMismatch("gauge transform dimension does not match 2^(N+E)");
  }
  // T e_b = i^p(b) e_t(b): (U T) column b = i^p(b) U column t(b) and
  // (T U) row t(b) = i^p(b) U row b.
  ComplexMatrix ut(n, n), tu(n, n);
  for (Eigen::Index b = 0; b < n; ++b) {
    const auto bb = static_cast<BasisIndex>(b);
    const std::complex<double> ph = kPhases[t.phase_exponent(bb)];
    ut.col(b) = ph * transform.col(t.target(bb));
    tu.row(t.target(bb)) = ph * transform.row(b);
  }
  GaugeReport report;
  report.max_commutator_entry = (ut - tu).cwiseAbs().maxCoeff();
  report.commutes = report.max_commutator_entry <= 1e-10;
  return report;
}

PhasedPermutation global_vertex_flip(const GraphTopology& topology) {
  const std::size_t size = checked_size(topology.total_bits(), kDefaultMaxBits);
  std::vector<BasisIndex> t(size);
  for (std::size_t b = 0; b < size; ++b) t[b] = static_cast<BasisIndex>(b) ^ topology.vertex_mask();
  return PhasedPermutation(std::move(t), std::vector<std::uint8_t>(size, 0));
}

PhasedPermutation vertex_sigma1(const GraphTopology& topology, int vertex) {
  if (vertex < 0 || vertex >= topology.n_vertices()) throw InvalidTopology("vertex out of range");
  const std::size_t size = checked_size(topology.total_bits(), kDefaultMaxBits);
  std::vector<BasisIndex> t(size);
  for (std::size_t b = 0; b < size; ++b) t[b] = static_cast<BasisIndex>(b) ^ (BasisIndex{1} << vertex);
  return PhasedPermutation(std::move(t), std::vector<std::uint8_t>(size, 0));
}

PhasedPermutation vertex_sigma3(const GraphTopology& topology, int vertex) {
  if (vertex < 0 || vertex >= topology.n_vertices()) throw InvalidTopology("vertex out of range");
  const std::size_t size = checked_size(topology.total_bits(), kDefaultMaxBits);
  PhasedPermutation id = PhasedPermutation::identity(size);
  std::vector<std::uint8_t> p(size);
  for (std::size_t b = 0; b < size; ++b) p[b] = ((b >> vertex) & 1U) ? 0 : 2;
  return PhasedPermutation(id.targets(), std::move(p));
}

// -- Edge dynamics ----------------------------------------------------------

PhasedPermutation frozen_edges(const GraphTopology& topology) {
  return PhasedPermutation::identity(checked_size(topology.total_bits(), kDefaultMaxBits));
}

PhasedPermutation cyclic_edge_shift(const GraphTopology& topology) {
  const std::size_t size = checked_size(topology.total_bits(), kDefaultMaxBits);
  const int n = topology.n_vertices();
  const int m = topology.n_edges();
  std::vector<BasisIndex> t(size);
  for (std::size_t b = 0; b < size; ++b) {
    const auto bb = static_cast<BasisIndex>(b);
    BasisIndex out = bb & topology.vertex_mask();
    for (int e = 0; e < m; ++e) {
      if ((bb >> (n + e)) & 1U) out |= BasisIndex{1} << (n + (e + 1) % m);
    }
    t[b] = out;
  }
  return PhasedPermutation(std::move(t), std::vector<std::uint8_t>(size, 0));
}

PhasedPermutation random_edge_permutation(const GraphTopology& topology, std::uint64_t seed) {
  const std::size_t size = checked_size(topology.total_bits(), kDefaultMaxBits);
  const std::size_t edge_states = std::size_t{1} << topology.n_edges();
  std::vector<BasisIndex> shuffled(edge_states);
  for (std::size_t k = 0; k < edge_states; ++k) shuffled[k] = static_cast<BasisIndex>(k);
  // Fisher-Yates with an explicit draw, so the result does not depend on the
  // standard library's shuffle.
  std::mt19937_64 rng(seed);
  for (std::size_t k = edge_states; k > 1; --k) {
    std::swap(shuffled[k - 1], shuffled[rng() % k]);
  }
  const int n = topology.n_vertices();
  std::vector<BasisIndex> t(size);
  for (std::size_t b = 0; b < size; ++b) {
    const auto bb = static_cast<BasisIndex>(b);
    t[b] = (bb & topology.vertex_mask()) | (shuffled[bb >> n] << n);
  }
  return PhasedPermutation(std::move(t), std::vector<std::uint8_t>(size, 0));
}

PhasedPermutation edge_update_compose(const PhasedPermutation& transfer,
                                      const PhasedPermutation& edge_rule,
                                      const GraphTopology& topology) {
  const std::size_t size = checked_size(topology.total_bits(), kDefaultMaxBits);
  if (transfer.size() != size || edge_rule.size() != size) {
    throw NotPermutation("edge rule and transfer must act on 2^(N+E) configurations");
  }
  const BasisIndex vmask = topology.vertex_mask();
  for (std::size_t b = 0; b < size; ++b) {
    const auto bb = static_cast<BasisIndex>(b);
    if ((edge_rule.target(bb) & vmask) != (bb & vmask)) {
      throw NotPermutation("edge rule changes vertex spins of configuration " +
                           std::to_string(b));
    }
  }
  return compose(edge_rule, transfer);
}

}  // namespace ontoca
