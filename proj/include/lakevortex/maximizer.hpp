// Copyright 2026 The lakevortex Authors
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

#ifndef LAKEVORTEX_MAXIMIZER_HPP_
#define LAKEVORTEX_MAXIMIZER_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lakevortex/elliptic.hpp"
#include "lakevortex/kernel.hpp"
#include "lakevortex/rearrangement.hpp"

namespace lakevortex {

enum class InitKind {
  /// Ball at the deepest cell farthest from the boundary, or the W-search
  /// pair when tau is in (0, 1).
  kMaxDepth,
  /// Bathtub of a seeded random weight.
  kRandom,
  /// zeta supplied in SolveConfig::initial.
  kGiven,
};

struct SolveConfig {
  BathtubMode mode = BathtubMode::kPatch;
  int max_iters = 200;
  double energy_tol = 1e-10;
  /// Number of cells allowed to change at convergence.
  int support_tol = 0;
  InitKind init = InitKind::kMaxDepth;
  std::uint64_t seed = 0;
  bool zero_island_circulation = false;
  /// Candidate cap for the initial W search.
  std::size_t w_search_candidates = 200;
  std::optional<ScalarField> initial;
  /// Cap on one-cell translations of a converged state that are tried and
  /// kept when they raise the energy. Zero disables the search.
  int polish_moves = 50;
  /// Lakes with at most this many cells also start from every cell
  /// (every ordered cell pair when tau is in (0, 1)).
  int exhaustive_start_cells = 64;
};

struct SweepOptions {
  /// Start each member from balls at the previous centroids.
  bool warm_start = true;
  /// Also solve each warm-started member from the default start and keep
  /// the higher energy.
  bool cold_restart = true;
};

struct EnergyParts {
  double total = 0.0;
  /// 1/2 sum zeta kpart mu.
  double kpart = 0.0;
  /// total - kpart.
  double island = 0.0;
};

struct SolveReport {
  VortexBudget budget;
  ScalarField zeta;
  StreamSolution stream;
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  bool degenerate = false;
  std::vector<double> energy_trace;
  std::vector<int> changed_trace;
  /// Iterations of the run that produced zeta.
  int iterations = 0;
  /// Iterations including the translation search.
  int total_iterations = 0;
  int polish_moves = 0;
  bool warm_started = false;
  /// Total iterations of the warm and cold runs of a sweep member (0 if not run).
  int warm_iterations = 0;
  int cold_iterations = 0;
  bool converged = false;
  bool cycle = false;
  /// The other state of a detected 2-cycle.
  std::optional<ScalarField> cycle_partner;
  double energy = 0.0;
};

/// E = 1/2 a(psi, psi) = 1/2 <zeta, psi>_mu - 1/2 sum_j Gamma_j beta_j.
EnergyParts energy_stream_form(const Lake& lake, const ScalarField& zeta, const StreamSolution& stream);

/// 1/2 sum_{x,y} [b(x)/2pi log(diam/|x - y|) + F(x, y)] zeta(x) zeta(y) mu(x) mu(y).
/// Limited to 20000 support cells.
double energy_kernel_form(const KernelTables& tables, const ScalarField& zeta);

/// Psi^+ and Psi^- with the cell self-average on the diagonal.
std::pair<ScalarField, ScalarField> first_order_flows(const Lake& lake, const ScalarField& zeta);

/// Energy ascent by alternating stream solves and bathtub projections.
SolveReport solve(const KernelTables& tables, const VortexBudget& budget, const SolveConfig& config);

/// Solves budgets in order of decreasing epsilon.
std::vector<SolveReport> sweep(const KernelTables& tables, const std::vector<VortexBudget>& budgets,
                               const SolveConfig& config, const SweepOptions& options = {});

/// mu-weighted centroid of {sign * zeta > 0}; nullopt when empty.
std::optional<Point> support_centroid(const Lake& lake, const ScalarField& zeta, int sign);

}  // namespace lakevortex

#endif  // LAKEVORTEX_MAXIMIZER_HPP_
