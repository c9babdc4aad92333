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

// Shared lakes and oracles for the unit tests and the acceptance runner.

#ifndef LAKEVORTEX_TESTS_SUPPORT_HPP_
#define LAKEVORTEX_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "lakevortex/asymptotics.hpp"
#include "lakevortex/maximizer.hpp"

namespace lakevortex::testing {

struct LakeSetup {
  LakePtr lake;
  OperatorPtr op;
  std::shared_ptr<const HarmonicBasis> basis;
  std::shared_ptr<KernelTables> tables;
};

inline LakeSetup make_setup(const LakeSpec& spec, KernelTables::Options options = {}) {
  LakeSetup s;
  s.lake = Lake::build(spec);
  s.op = EllipticOperator::assemble(s.lake);
  s.basis = std::make_shared<const HarmonicBasis>(harmonic_basis(*s.op));
  s.tables = std::make_shared<KernelTables>(s.op, s.basis, options);
  return s;
}

inline LakeSpec unit_disk(int n, DepthProfile depth = DepthProfile::constant(1.0)) {
  return {Domain::disk({0.0, 0.0}, 1.0), std::move(depth), n, n, {}};
}

/// Unit disk with two sharp bumps centered on mirrored cell centers.
inline LakeSpec two_max_disk(int n) {
  const double h = 2.0 / n;
  const double x = -1.0 + (std::floor(0.2 * n) + 0.5) * h;
  const double y = -1.0 + (n / 2 - 0.5) * h;
  return unit_disk(n, DepthProfile::two_bump({x, y}, {-x, y}, 1.0, 1.0, 0.02));
}

/// nx x ny lake with h = 1 and the given row-major depths at cell centers.
inline LakeSpec tiny_lake(int nx, int ny, std::vector<double> depths) {
  return {Domain::rectangle({0.0, 0.0}, {double(nx), double(ny)}),
          DepthProfile::table({0.5, 0.5}, {nx - 0.5, ny - 0.5}, nx, ny, std::move(depths)), nx, ny, {}};
}

inline VortexBudget budget(double epsilon, double tau, double strength = 1.0) {
  VortexBudget b;
  b.epsilon = epsilon;
  b.tau = tau;
  b.strength = strength;
  return b;
}

inline ScalarField vortex_ball(const LakePtr& lake, Point center, double mass, double strength) {
  const MuBall ball = mu_ball(*lake, center, mass);
  ScalarField z = ScalarField::zeros(lake);
  for (int c : ball.cells) z[static_cast<std::size_t>(c)] = strength / ball.mass;
  return z;
}

/// Nondecreasing within a relative tolerance.
inline bool ascending(const std::vector<double>& trace, double tol = 1e-10) {
  for (std::size_t k = 1; k < trace.size(); ++k) {
    if (trace[k] < trace[k - 1] - tol * std::abs(trace[k - 1])) return false;
  }
  return true;
}

/// The converged state is the bathtub of its own stream function:
///   psi >= gamma+ on {zeta > 0}, psi <= gamma+ off it,
///   psi <= gamma- on {zeta < 0}, psi >= gamma- off it,
/// and in distribution mode each part is a nonincreasing function of psi.
inline bool level_set_sandwich(const SolveReport& r, BathtubMode mode) {
  const ScalarField& z = r.zeta;
  const ScalarField& psi = r.stream.psi;
  const bool has_plus = !std::isnan(r.gamma_plus);
  const bool has_minus = !std::isnan(r.gamma_minus);
  for (std::size_t c = 0; c < z.size(); ++c) {
    if (has_plus) {
      if (z[c] > 0.0 && psi[c] < r.gamma_plus) return false;
      if (!(z[c] > 0.0) && psi[c] > r.gamma_plus) return false;
    }
    if (has_minus) {
      if (z[c] < 0.0 && psi[c] > r.gamma_minus) return false;
      if (!(z[c] < 0.0) && psi[c] < r.gamma_minus) return false;
    }
  }
  if (mode == BathtubMode::kDistribution) {
    for (int sign : {+1, -1}) {
      std::vector<std::size_t> cells;
      for (std::size_t c = 0; c < z.size(); ++c) {
        if (sign * z[c] > 0.0) cells.push_back(c);
      }
      std::sort(cells.begin(), cells.end(), [&](std::size_t a, std::size_t b) { return sign * psi[a] > sign * psi[b]; });
      for (std::size_t k = 1; k < cells.size(); ++k) {
        const std::size_t a = cells[k - 1];
        const std::size_t b = cells[k];
        if (psi[a] != psi[b] && sign * z[b] > sign * z[a] * (1.0 + 1e-12)) return false;
      }
    }
  }
  return true;
}

/// Best patch-mode energy over all extreme points: whole cells plus at most
/// one partial cell per part, positive and negative supports disjoint.
inline double brute_force_patch_energy(const LakeSetup& s, const VortexBudget& b) {
  const Lake& lake = *s.lake;
  const int n = static_cast<int>(lake.size());
  const PartProfile pos = target_profile(lake, b, BathtubMode::kPatch, +1);
  const PartProfile neg = target_profile(lake, b, BathtubMode::kPatch, -1);
  double best = -INFINITY;

  auto parts = [&](const PartProfile& p, unsigned forbid, auto&& emit) {
    if (p.total() <= 0.0) {
      emit(std::vector<double>(n, 0.0), 0u);
      return;
    }
    const double mass = p.total();
    const double level = p.values.front();
    for (unsigned set = 0; set < (1u << n); ++set) {
      if (set & forbid) continue;
      double m = 0.0;
      for (int i = 0; i < n; ++i) {
        if (set >> i & 1u) m += lake.mass(i);
      }
      if (m > mass * (1.0 + 1e-12)) continue;
      const double rest = mass - m;
      std::vector<double> z(n, 0.0);
      for (int i = 0; i < n; ++i) {
        if (set >> i & 1u) z[i] = level;
      }
      if (rest <= 1e-12 * mass) {
        emit(z, set);
        continue;
      }
      for (int j = 0; j < n; ++j) {
        if ((set >> j & 1u) || (forbid >> j & 1u) || rest > lake.mass(j) * (1.0 + 1e-12)) continue;
        std::vector<double> zj = z;
        zj[j] = level * rest / lake.mass(j);
        emit(zj, set | (1u << j));
      }
    }
  };

  parts(pos, 0u, [&](const std::vector<double>& zp, unsigned used) {
    parts(neg, used, [&](const std::vector<double>& zm, unsigned) {
      std::vector<double> z(n);
      for (int i = 0; i < n; ++i) z[i] = zp[i] - zm[i];
      const ScalarField f(s.lake, std::move(z));
      const StreamSolution st = solve_stream(*s.op, *s.basis, f, b);
      best = std::max(best, energy_stream_form(lake, f, st).total);
    });
  });
  return best;
}

inline std::vector<double> random_depths(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<double> d(static_cast<std::size_t>(count));
  for (double& v : d) v = u(rng);
  return d;
}

inline ScalarField random_field(const LakePtr& lake, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(0.0, scale);
  ScalarField f = ScalarField::zeros(lake);
  for (double& v : f.mutable_values()) v = u(rng);
  return f;
}

}  // namespace lakevortex::testing

#endif  // LAKEVORTEX_TESTS_SUPPORT_HPP_
