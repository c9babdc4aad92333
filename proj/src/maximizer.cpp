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

#include "lakevortex/maximizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace lakevortex {

namespace {

constexpr double kInv4Pi = 0.25 / std::numbers::pi;

int deepest_interior_cell(const Lake& lake) {
  const double sup = lake.max_depth();
  const double threshold = sup - 1e-6 * (sup - lake.min_depth());
  int best = -1;
  double best_d = -1.0;
  for (int c = 0; c < static_cast<int>(lake.size()); ++c) {
    if (lake.depth(c) < threshold) continue;
    const double d = lake.boundary_distance(c);
    if (d > best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

// Weight whose top cells form a ball around `plus` and whose bottom cells
// form a ball around `minus`.
ScalarField distance_weight(const LakePtr& lake, std::optional<Point> plus, std::optional<Point> minus) {
  const double far = 4.0 * lake->diam() + 1.0;
  return ScalarField::from_function(lake, [&](Point p) {
    const double dp = plus ? distance(p, *plus) : far;
    const double dm = minus ? distance(p, *minus) : far;
    return dp <= dm ? 2.0 * far - dp : dm - 2.0 * far;
  });
}

ScalarField initial_weight(const KernelTables& tables, const VortexBudget& budget, const SolveConfig& config) {
  const LakePtr& lake = tables.lake_ptr();
  switch (config.init) {
    case InitKind::kGiven:
      if (!config.initial) throw LakeError("given initialization requires an initial field");
      if (config.initial->lake_ptr() != lake) throw LakeError("initial field belongs to a different lake");
      return *config.initial;
    case InitKind::kRandom: {
      std::mt19937_64 rng(config.seed);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::vector<double> w(lake->size());
      for (double& v : w) v = u(rng);
      return ScalarField(lake, std::move(w));
    }
    case InitKind::kMaxDepth:
      break;
  }
  const double tau = budget.tau;
  if (tau == 1.0 || tau == 0.0) {
    const Point x = lake->center(deepest_interior_cell(*lake));
    return tau == 1.0 ? distance_weight(lake, x, std::nullopt) : distance_weight(lake, std::nullopt, x);
  }
  const LocalizationFunctional loc(tables, tau);
  const WMinimum wmin = minimize_W_over_maxdepth(loc, 1e-6, config.w_search_candidates);
  if (!wmin.degenerate) return distance_weight(lake, wmin.px, wmin.py);
  // Single deepest cell: pair it with the farthest cell.
  const Point x = wmin.px;
  int far = 0;
  for (int c = 0; c < static_cast<int>(lake->size()); ++c) {
    if (distance(lake->center(c), x) > distance(lake->center(far), x)) far = c;
  }
  return distance_weight(lake, x, lake->center(far));
}

int count_changed(const ScalarField& a, const ScalarField& b) {
  int n = 0;
  for (std::size_t c = 0; c < a.size(); ++c) n += a[c] != b[c];
  return n;
}

}  // namespace

EnergyParts energy_stream_form(const Lake& lake, const ScalarField& zeta, const StreamSolution& stream) {
  if (!zeta.same_lake(stream.psi) || &zeta.lake() != &lake) throw LakeError("stream and vortex belong to different lakes");
  double with_psi = 0.0;
  double with_k = 0.0;
  for (std::size_t c = 0; c < zeta.size(); ++c) {
    if (zeta[c] == 0.0) continue;
    const double m = zeta[c] * lake.mass(static_cast<int>(c));
    with_psi += m * stream.psi[c];
    with_k += m * stream.kpart[c];
  }
  double boundary = 0.0;
  for (std::size_t j = 0; j < stream.betas.size(); ++j) boundary += stream.circulations_achieved[j] * stream.betas[j];
  EnergyParts e;
  e.total = 0.5 * (with_psi - boundary);
  e.kpart = 0.5 * with_k;
  e.island = e.total - e.kpart;
  return e;
}

double energy_kernel_form(const KernelTables& tables, const ScalarField& zeta) {
  const Lake& lake = tables.lake();
  if (zeta.lake_ptr() != tables.lake_ptr()) throw LakeError("vortex field belongs to a different lake");
  std::vector<int> support;
  for (std::size_t c = 0; c < zeta.size(); ++c) {
    if (zeta[c] != 0.0) support.push_back(static_cast<int>(c));
  }
  if (support.size() > 20000) throw LakeError("support too large for the kernel energy");
  const Eigen::MatrixXd F = tables.correction_F_block(support);
  double e = 0.0;
  for (std::size_t a = 0; a < support.size(); ++a) {
    const int x = support[a];
    const double wx = zeta[x] * lake.mass(x);
    double row = 0.0;
    for (std::size_t b = 0; b < support.size(); ++b) {
      const int y = support[b];
      row += (lake.depth(x) * tables.log_kernel(x, y) + F(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))) *
             zeta[y] * lake.mass(y);
    }
    e += wx * row;
  }
  return 0.5 * e;
}

std::pair<ScalarField, ScalarField> first_order_flows(const Lake& lake, const ScalarField& zeta) {
  std::vector<int> pos;
  std::vector<int> neg;
  for (std::size_t c = 0; c < zeta.size(); ++c) {
    if (zeta[c] > 0.0) pos.push_back(static_cast<int>(c));
    if (zeta[c] < 0.0) neg.push_back(static_cast<int>(c));
  }
  if (pos.size() + neg.size() > 20000) throw LakeError("support too large for the first order flows");
  const double log_diam = std::log(lake.diam());
  const double self = log_diam - std::log(lake.h()) - kSquareLogMean;
  auto flow = [&](const std::vector<int>& cells, double sign) {
    std::vector<double> out(lake.size(), 0.0);
    for (int x = 0; x < static_cast<int>(lake.size()); ++x) {
      const Point px = lake.center(x);
      double acc = 0.0;
      for (int y : cells) {
        const double lg = x == y ? self : log_diam - std::log(distance(px, lake.center(y)));
        acc += lg * sign * zeta[y] * lake.mass(y);
      }
      out[x] = kInv4Pi * lake.depth(x) * acc;
    }
    return ScalarField(zeta.lake_ptr(), std::move(out));
  };
  return {flow(pos, 1.0), flow(neg, -1.0)};
}

std::optional<Point> support_centroid(const Lake& lake, const ScalarField& zeta, int sign) {
  double mass = 0.0;
  Point acc;
  for (std::size_t c = 0; c < zeta.size(); ++c) {
    if (!(sign * zeta[c] > 0.0)) continue;
    const double m = lake.mass(static_cast<int>(c));
    mass += m;
    acc = acc + m * lake.center(static_cast<int>(c));
  }
  if (!(mass > 0.0)) return std::nullopt;
  return (1.0 / mass) * acc;
}

namespace {

SolveReport ascend(const KernelTables& tables, const VortexBudget& budget, const SolveConfig& config,
                   const ScalarField& weight) {
  const Lake& lake = tables.lake();
  const EllipticOperator& op = tables.depth_operator();
  const HarmonicBasis& basis = tables.basis();
  SolveReport report;
  report.budget = budget;
  ScalarField zeta = bathtub_maximize(lake, weight, budget, config.mode).zeta;
  std::optional<ScalarField> previous;
  for (int k = 0;; ++k) {
    StreamSolution stream = solve_stream(op, basis, zeta, budget, config.zero_island_circulation);
    const double energy = energy_stream_form(lake, zeta, stream).total;
    if (!report.energy_trace.empty()) {
      const double last = report.energy_trace.back();
      if (energy < last - config.energy_tol * std::abs(last)) {
        throw LakeError("energy decreased during ascent: " + std::to_string(last) + " -> " + std::to_string(energy));
      }
    }
    report.energy_trace.push_back(energy);
    BathtubResult next = bathtub_maximize(lake, stream.psi, budget, config.mode);
    const int changed = count_changed(next.zeta, zeta);
    report.changed_trace.push_back(changed);
    report.iterations = k + 1;
    report.gamma_plus = next.gamma_plus;
    report.gamma_minus = next.gamma_minus;
    report.degenerate = next.degenerate;
    report.energy = energy;
    report.stream = std::move(stream);
    if (changed <= config.support_tol) {
      report.converged = true;
      break;
    }
    if (previous && count_changed(next.zeta, *previous) == 0) {
      report.cycle = true;
      report.cycle_partner = std::move(next.zeta);
      break;
    }
    if (k + 1 >= config.max_iters) break;
    previous = std::move(zeta);
    zeta = std::move(next.zeta);
  }
  report.zeta = std::move(zeta);
  report.total_iterations = report.iterations;
  return report;
}

}  // namespace

SolveReport solve(const KernelTables& tables, const VortexBudget& budget, const SolveConfig& config) {
  budget.validate();
  if (config.max_iters < 1) throw LakeError("max_iters must be at least 1");
  if (!(config.energy_tol > 0.0) || config.support_tol < 0) throw LakeError("solver tolerances must be positive");
  const Lake& lake = tables.lake();
  SolveReport best = ascend(tables, budget, config, initial_weight(tables, budget, config));
  int total = best.iterations;
  const int n = static_cast<int>(lake.size());
  if (config.init == InitKind::kMaxDepth && n <= config.exhaustive_start_cells) {
    // Small lake: start from a ball (or ball pair) at every cell.
    const bool pair = budget.tau > 0.0 && budget.tau < 1.0;
    for (int a = 0; a < n; ++a) {
      for (int b = pair ? 0 : a; b < (pair ? n : a + 1); ++b) {
        if (pair && a == b) continue;
        const std::optional<Point> p = budget.tau > 0.0 ? std::optional<Point>(lake.center(a)) : std::nullopt;
        const std::optional<Point> m =
            pair ? std::optional<Point>(lake.center(b))
                 : (budget.tau < 1.0 ? std::optional<Point>(lake.center(a)) : std::nullopt);
        SolveReport trial = ascend(tables, budget, config, distance_weight(tables.lake_ptr(), p, m));
        total += trial.iterations;
        if (trial.converged && (!best.converged || trial.energy > best.energy + 1e-12 * std::abs(best.energy))) {
          best = std::move(trial);
        }
      }
    }
  }
  if (!best.converged || config.polish_moves <= 0) {
    best.total_iterations = total;
    return best;
  }

  // Translate the converged supports by one cell at a time while the energy improves.
  const double h = lake.h();
  const Point steps[8] = {{h, 0}, {-h, 0}, {0, h}, {0, -h}, {h, h}, {h, -h}, {-h, h}, {-h, -h}};
  for (int move = 0; move < config.polish_moves; ++move) {
    const auto plus = support_centroid(lake, best.zeta, +1);
    const auto minus = support_centroid(lake, best.zeta, -1);
    bool improved = false;
    for (int part = 0; part < 2 && !improved; ++part) {
      if ((part == 0 && !plus) || (part == 1 && !minus)) continue;
      for (const Point& step : steps) {
        const auto p = part == 0 ? std::optional<Point>(*plus + step) : plus;
        const auto m = part == 1 ? std::optional<Point>(*minus + step) : minus;
        SolveReport trial = ascend(tables, budget, config, distance_weight(tables.lake_ptr(), p, m));
        total += trial.iterations;
        if (trial.converged && trial.energy > best.energy + 1e-12 * std::abs(best.energy)) {
          trial.polish_moves = best.polish_moves + 1;
          best = std::move(trial);
          improved = true;
          break;
        }
      }
    }
    if (!improved) break;
  }
  if (n <= config.exhaustive_start_cells) {
    // Small lake: force each pair of cells to the top of either support.
    for (int move = 0; move < config.polish_moves; ++move) {
      bool improved = false;
      const std::span<const double> psi = best.stream.psi.values();
      const auto [lo, hi] = std::minmax_element(psi.begin(), psi.end());
      const double span = *hi - *lo + 1.0;
      for (int sign : {+1, -1}) {
        if ((sign > 0 && budget.tau <= 0.0) || (sign < 0 && budget.tau >= 1.0)) continue;
        for (int c = 0; c < n && !improved; ++c) {
          for (int d = c; d < n && !improved; ++d) {
            if (sign * best.zeta[c] > 0.0 && sign * best.zeta[d] > 0.0) continue;
            ScalarField weight = best.stream.psi;
            weight[c] += sign * 2.0 * span;
            if (d != c) weight[d] += sign * span;
            SolveReport trial = ascend(tables, budget, config, weight);
            total += trial.iterations;
            if (trial.converged && trial.energy > best.energy + 1e-12 * std::abs(best.energy)) {
              trial.polish_moves = best.polish_moves + 1;
              best = std::move(trial);
              improved = true;
            }
          }
        }
        if (improved) break;
      }
      if (!improved) break;
    }
  }
  best.total_iterations = total;
  return best;
}

std::vector<SolveReport> sweep(const KernelTables& tables, const std::vector<VortexBudget>& budgets,
                               const SolveConfig& config, const SweepOptions& options) {
  for (std::size_t i = 1; i < budgets.size(); ++i) {
    if (!(budgets[i].epsilon < budgets[i - 1].epsilon)) throw LakeError("sweep budgets must have decreasing epsilon");
  }
  std::vector<SolveReport> out;
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    if (!options.warm_start || i == 0) {
      out.push_back(solve(tables, budgets[i], config));
      continue;
    }
    const Lake& lake = tables.lake();
    const ScalarField& prev = out.back().zeta;
    SolveConfig member = config;
    member.init = InitKind::kGiven;
    member.initial =
        distance_weight(tables.lake_ptr(), support_centroid(lake, prev, +1), support_centroid(lake, prev, -1));
    SolveReport warm = solve(tables, budgets[i], member);
    warm.warm_started = true;
    if (options.cold_restart) {
      SolveReport cold = solve(tables, budgets[i], config);
      if (cold.energy > warm.energy + 1e-12 * std::abs(warm.energy)) {
        cold.cold_iterations = cold.total_iterations;
        cold.warm_iterations = warm.total_iterations;
        out.push_back(std::move(cold));
        continue;
      }
      warm.cold_iterations = cold.total_iterations;
    }
    warm.warm_iterations = warm.total_iterations;
    out.push_back(std::move(warm));
  }
  return out;
}

}  // namespace lakevortex
