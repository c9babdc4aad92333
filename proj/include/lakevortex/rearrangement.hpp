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

#ifndef LAKEVORTEX_REARRANGEMENT_HPP_
#define LAKEVORTEX_REARRANGEMENT_HPP_

#include <vector>

#include "lakevortex/budget.hpp"
#include "lakevortex/geometry.hpp"

namespace lakevortex {

/// lambda_f(t) = mu({f > t}) for a nonnegative cellwise-constant field.
struct DistributionCurve {
  /// Ascending levels, starting at 0 and ending at max f.
  std::vector<double> levels;
  /// masses[k] = mu({f > levels[k]}); the last entry is 0.
  std::vector<double> masses;

  double operator()(double t) const;
};

DistributionCurve distribution(const Lake& lake, const ScalarField& f);
DistributionCurve distribution(const ScalarField& f);

/// Decreasing mu-rearrangement of f laid out along balls centered at x.
/// Each cell receives the mean of the rearranged profile over its mass
/// interval, so integrals are preserved exactly.
ScalarField symmetrize_around(const Lake& lake, Point x, const ScalarField& f);

enum class BathtubMode { kPatch, kDistribution };

struct BathtubResult {
  ScalarField zeta;
  /// min weight on {zeta > 0} (NaN when empty).
  double gamma_plus = 0.0;
  /// max weight on {zeta < 0} (NaN when empty).
  double gamma_minus = 0.0;
  /// Ties in the weight straddle a support edge.
  bool degenerate = false;
  double positive_mass = 0.0;
  double negative_mass = 0.0;
  /// Cells in weight order for each part.
  std::vector<int> positive_cells;
  std::vector<int> negative_cells;
};

/// Maximizes the integral of weight * zeta over the admissible class.
///
/// Patch mode: masses tau eps^2 and (1 - tau) eps^2, each at level S / eps^2.
/// With uniform cell mass the support is whole cells and the level is
/// adjusted to keep the strengths exact. Distribution mode: each part has
/// the decreasing profile prescribed by budget.distribution.
BathtubResult bathtub_maximize(const Lake& lake, const ScalarField& weight, const VortexBudget& budget,
                               BathtubMode mode);

/// Mass-coordinate profile of one signed part: values[k] on
/// [ends[k-1], ends[k]). Values are nonincreasing.
struct PartProfile {
  std::vector<double> ends;
  std::vector<double> values;
  double total() const { return ends.empty() ? 0.0 : ends.back(); }
};

/// Positive (sign = +1) or negative (sign = -1) target profile.
PartProfile target_profile(const Lake& lake, const VortexBudget& budget, BathtubMode mode, int sign);

/// A field viewed in the blow-up coordinates z = (x - X) / eps with
/// values eps^2 f / S and cell weights b (h / eps)^2.
struct RescaledField {
  std::vector<int> cells;
  std::vector<Point> points;
  std::vector<double> values;
  std::vector<double> weights;
  double epsilon = 0.0;
  double strength = 0.0;
  Point center;

  double integral() const;
  double lp_norm(double p) const;
};

RescaledField scale_field(const Lake& lake, const ScalarField& f, double epsilon, double strength, Point center);
/// Inverse of scale_field on the originating lake.
ScalarField unscale_field(LakePtr lake, const RescaledField& r);

struct ConvergenceThresholds {
  double curve_tol = 1e-3;
  double symdiff_tol = 1e-3;
  int levels = 32;
};

struct ConvergenceReport {
  std::vector<double> levels;
  /// max over levels of |lambda_n(t) - lambda(t)|, per member.
  std::vector<double> curve_error;
  /// max over levels of mu({f_n > t} sym-diff {f > t}), per member.
  std::vector<double> symdiff;
  /// Full traces, [member][level].
  std::vector<std::vector<double>> curve_trace;
  std::vector<std::vector<double>> symdiff_trace;
  bool converges = false;
};

/// Checks both parts of the convergence-in-measure criterion on a geometric
/// level grid strictly inside (min positive value, max value) of the limit.
ConvergenceReport converges_in_measure(const std::vector<ScalarField>& seq, const ScalarField& limit,
                                       const ConvergenceThresholds& thresholds = {});

/// ||f - symmetrize_around(center, f)||_1 / ||f||_1 in L1(mu).
double radial_deviation(const Lake& lake, const ScalarField& f, Point center);

/// Mean of log|u| over a unit square centered at the origin.
inline constexpr double kSquareLogMean = -1.0611754268825243;
/// Mean of log|u - v| for u, v independent and uniform on a unit square.
inline constexpr double kSquarePairLogMean = -0.80508672195008715;

/// sum_{x,y} log(1/|x - y|) f(x) f(y) mu(x) mu(y), with the diagonal
/// replaced by the self-average over a cell.
double log_interaction_energy(const Lake& lake, const ScalarField& f);

}  // namespace lakevortex

#endif  // LAKEVORTEX_REARRANGEMENT_HPP_
