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

#ifndef LAKEVORTEX_ASYMPTOTICS_HPP_
#define LAKEVORTEX_ASYMPTOTICS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "lakevortex/kernel.hpp"
#include "lakevortex/maximizer.hpp"

namespace lakevortex {

/// Per-solution diagnostics. Quantities of an empty part are NaN.
struct AsymptoticsBundle {
  double epsilon = 0.0;
  double tau = 1.0;
  double strength = 1.0;
  bool converged = false;

  double support_diam_plus = 0.0;
  double support_diam_minus = 0.0;
  std::optional<Point> centroid_plus;
  std::optional<Point> centroid_minus;
  double depth_at_centroid_plus = 0.0;
  double depth_at_centroid_minus = 0.0;
  /// Distance from the centroid to the nearest deepest cell.
  double argmax_distance_plus = 0.0;
  /// min over the support of d(x, boundary).
  double dist_to_boundary_plus = 0.0;
  double dist_to_boundary_minus = 0.0;
  /// Smallest distance between the two supports.
  double pair_distance = 0.0;
  double centroid_distance = 0.0;

  /// mu(A sym-diff B(centroid, R sqrt(tau) eps)) / eps^2 with R = 1/sqrt(pi sup b).
  double roundness_plus = 0.0;
  double roundness_minus = 0.0;
  /// Same ratio for the best ball (center and radius optimized).
  double best_roundness_plus = 0.0;
  double best_roundness_minus = 0.0;
  double radial_dev_plus = 0.0;
  double radial_dev_minus = 0.0;

  std::optional<double> W_at_centroids;
  std::optional<double> W_min;

  double kappa = 0.5;
  /// {zeta > 0} inside D^kappa.
  bool concentration_containment = false;
  /// Smallest kappa for which the containment holds.
  double min_kappa = 0.0;
};

struct DiagnoseOptions {
  double kappa = 0.5;
  /// Evaluate W at the centroids and its minimum over the max-depth set.
  bool localization = false;
  std::size_t w_candidates = 500;
};

AsymptoticsBundle diagnose(const KernelTables& tables, const SolveReport& report, const DiagnoseOptions& options = {});

/// D^kappa = {Psi+ >= avg - kappa (sup b / 4pi) S log(1/eps)}, where avg is
/// the mean of Psi+ against zeta+ mu / (tau S).
std::vector<char> concentration_set(const Lake& lake, const ScalarField& zeta, const VortexBudget& budget,
                                    double kappa);

/// mu(A sym-diff B(center, radius)) / eps^2 for A = {sign * zeta > 0}.
double roundness_ratio(const Lake& lake, const ScalarField& zeta, int sign, Point center, double radius,
                       double epsilon);
/// Same ratio minimized over radius and over centers near `center`.
double best_ball_ratio(const Lake& lake, const ScalarField& zeta, int sign, Point center, double epsilon);

struct ScalingFit {
  double exponent = 0.0;
  double std_error = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t points = 0;
  bool in_range = false;
};

/// Least-squares slope of log(diam+) against log(eps), with a 2-sigma band.
ScalingFit fit_scaling(const std::vector<AsymptoticsBundle>& bundles);
/// Same from raw (eps, diam) pairs.
ScalingFit fit_scaling(const std::vector<double>& epsilon, const std::vector<double>& diam);

struct RepulsionRow {
  double epsilon = 0.0;
  double dist_plus = 0.0;
  double dist_minus = 0.0;
  double pair = 0.0;
  double proxy_plus = 0.0;
  double proxy_minus = 0.0;
  double proxy_pair = 0.0;
};

struct RepulsionReport {
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
  double gamma_pair = 0.0;
  std::vector<RepulsionRow> rows;
  bool pair_applicable = false;
  /// min over the sweep of the pair distance divided by its max.
  double pair_ratio = 0.0;
  bool boundary_nondecreasing = false;
  bool pair_nondecreasing = false;
};

/// Exponents at kappa = 1:
///   gamma_plus  = (2 - k) / (k a tau^2)
///   gamma_minus = (2 - k) / (k a (1 - tau)^2)
///   gamma_pair  = (2 - k) / (k a) (1 / min(tau^2, (1 - tau)^2) + 1 / (2 tau (1 - tau)))
RepulsionReport repulsion_check(const std::vector<AsymptoticsBundle>& bundles, double alpha, double tau);

struct LocalizationReport {
  int argmin_x = -1;
  int argmin_y = -1;
  double W_centroids = 0.0;
  double W_min = 0.0;
  double gap = 0.0;
  /// gap / range of W over the search set.
  double gap_fraction = 0.0;
  double dist_plus = 0.0;
  double dist_minus = 0.0;
  /// Some max-depth cell touches the boundary.
  bool out_of_theory = false;
};

LocalizationReport localization_check(const LocalizationFunctional& loc, const AsymptoticsBundle& bundle,
                                      double tolerance = 1e-6, std::size_t max_candidates = 500);

struct RoundnessReport {
  double radius_plus = 0.0;
  double radius_minus = 0.0;
  double ratio_plus = 0.0;
  double ratio_minus = 0.0;
  double best_ratio_plus = 0.0;
  double best_ratio_minus = 0.0;
};

RoundnessReport roundness_check(const Lake& lake, const SolveReport& report, BathtubMode mode);

}  // namespace lakevortex

#endif  // LAKEVORTEX_ASYMPTOTICS_HPP_
