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

#include "lakevortex/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace lakevortex {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<int> part_cells(const ScalarField& zeta, int sign) {
  std::vector<int> cells;
  for (std::size_t c = 0; c < zeta.size(); ++c) {
    if (sign * zeta[c] > 0.0) cells.push_back(static_cast<int>(c));
  }
  return cells;
}

double set_diameter(const Lake& lake, const std::vector<int>& cells) {
  if (cells.empty()) return kNaN;
  double d = 0.0;
  for (std::size_t a = 0; a < cells.size(); ++a) {
    for (std::size_t b = a + 1; b < cells.size(); ++b) d = std::max(d, distance(lake.center(cells[a]), lake.center(cells[b])));
  }
  return d;
}

std::vector<int> deepest_cells(const Lake& lake, double tolerance) {
  const double sup = lake.max_depth();
  const double threshold = sup - tolerance * (sup - lake.min_depth());
  std::vector<int> out;
  for (int c = 0; c < static_cast<int>(lake.size()); ++c) {
    if (lake.depth(c) >= threshold) out.push_back(c);
  }
  return out;
}

Point inside_point(const Lake& lake, Point p) {
  return lake.domain().contains(p) ? p : lake.center(lake.nearest_cell(p));
}

double predicted_radius(const Lake& lake, double fraction, double epsilon) {
  return std::sqrt(fraction / (std::numbers::pi * lake.max_depth())) * epsilon;
}

}  // namespace

std::vector<char> concentration_set(const Lake& lake, const ScalarField& zeta, const VortexBudget& budget,
                                    double kappa) {
  const ScalarField flow = first_order_flows(lake, zeta).first;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t c = 0; c < zeta.size(); ++c) {
    if (!(zeta[c] > 0.0)) continue;
    const double w = zeta[c] * lake.mass(static_cast<int>(c));
    num += flow[c] * w;
    den += w;
  }
  std::vector<char> in(lake.size(), 0);
  if (!(den > 0.0)) return in;
  const double scale = lake.max_depth() / (4.0 * std::numbers::pi) * budget.strength * std::log(1.0 / budget.epsilon);
  const double threshold = num / den - kappa * scale;
  for (std::size_t c = 0; c < in.size(); ++c) in[c] = flow[c] >= threshold;
  return in;
}

double roundness_ratio(const Lake& lake, const ScalarField& zeta, int sign, Point center, double radius,
                       double epsilon) {
  double sym = 0.0;
  for (std::size_t c = 0; c < zeta.size(); ++c) {
    const int cell = static_cast<int>(c);
    const bool in_a = sign * zeta[c] > 0.0;
    const bool in_b = distance(lake.center(cell), center) <= radius;
    if (in_a != in_b) sym += lake.mass(cell);
  }
  return sym / (epsilon * epsilon);
}

double best_ball_ratio(const Lake& lake, const ScalarField& zeta, int sign, Point center, double epsilon) {
  const std::vector<int> a = part_cells(zeta, sign);
  if (a.empty()) return kNaN;
  const double mass_a = mu_measure(lake, a);
  double best = mass_a;
  const double h = lake.h();
  for (int i = -4; i <= 4; ++i) {
    for (int j = -4; j <= 4; ++j) {
      const Point x = center + Point{0.25 * h * i, 0.25 * h * j};
      double reach = 0.0;
      for (int c : a) reach = std::max(reach, distance(lake.center(c), x));
      reach += 2.0 * h;
      std::vector<std::pair<double, int>> near;
      for (int c = 0; c < static_cast<int>(lake.size()); ++c) {
        const double d = distance(lake.center(c), x);
        if (d <= reach) near.emplace_back(d, c);
      }
      std::sort(near.begin(), near.end());
      double ball = 0.0;
      double overlap = 0.0;
      for (std::size_t k = 0; k < near.size(); ++k) {
        const int c = near[k].second;
        ball += lake.mass(c);
        if (sign * zeta[c] > 0.0) overlap += lake.mass(c);
        if (k + 1 < near.size() && near[k + 1].first == near[k].first) continue;
        best = std::min(best, mass_a + ball - 2.0 * overlap);
      }
    }
  }
  return best / (epsilon * epsilon);
}

AsymptoticsBundle diagnose(const KernelTables& tables, const SolveReport& report, const DiagnoseOptions& options) {
  const Lake& lake = tables.lake();
  const ScalarField& zeta = report.zeta;
  if (zeta.lake_ptr() != tables.lake_ptr()) throw LakeError("report belongs to a different lake");
  const VortexBudget& budget = report.budget;
  AsymptoticsBundle b;
  b.epsilon = budget.epsilon;
  b.tau = budget.tau;
  b.strength = budget.strength;
  b.converged = report.converged;
  b.kappa = options.kappa;

  const std::vector<int> pos = part_cells(zeta, +1);
  const std::vector<int> neg = part_cells(zeta, -1);
  b.support_diam_plus = set_diameter(lake, pos);
  b.support_diam_minus = set_diameter(lake, neg);
  b.centroid_plus = support_centroid(lake, zeta, +1);
  b.centroid_minus = support_centroid(lake, zeta, -1);
  const auto& profile = lake.depth_profile();
  b.depth_at_centroid_plus = b.centroid_plus ? profile.eval(*b.centroid_plus) : kNaN;
  b.depth_at_centroid_minus = b.centroid_minus ? profile.eval(*b.centroid_minus) : kNaN;

  b.argmax_distance_plus = kNaN;
  if (b.centroid_plus) {
    b.argmax_distance_plus = std::numeric_limits<double>::infinity();
    for (int c : deepest_cells(lake, 1e-6)) {
      b.argmax_distance_plus = std::min(b.argmax_distance_plus, distance(lake.center(c), *b.centroid_plus));
    }
  }

  auto boundary_min = [&](const std::vector<int>& cells) {
    if (cells.empty()) return kNaN;
    double d = std::numeric_limits<double>::infinity();
    for (int c : cells) d = std::min(d, lake.boundary_distance(c));
    return d;
  };
  b.dist_to_boundary_plus = boundary_min(pos);
  b.dist_to_boundary_minus = boundary_min(neg);
  b.pair_distance = kNaN;
  b.centroid_distance = kNaN;
  if (!pos.empty() && !neg.empty()) {
    double d = std::numeric_limits<double>::infinity();
    for (int p : pos) {
      for (int q : neg) d = std::min(d, distance(lake.center(p), lake.center(q)));
    }
    b.pair_distance = d;
    b.centroid_distance = distance(*b.centroid_plus, *b.centroid_minus);
  }

  b.roundness_plus = b.roundness_minus = kNaN;
  b.best_roundness_plus = b.best_roundness_minus = kNaN;
  b.radial_dev_plus = b.radial_dev_minus = kNaN;
  if (b.centroid_plus) {
    const Point c = *b.centroid_plus;
    b.roundness_plus = roundness_ratio(lake, zeta, +1, c, predicted_radius(lake, budget.tau, budget.epsilon), budget.epsilon);
    b.best_roundness_plus = best_ball_ratio(lake, zeta, +1, c, budget.epsilon);
    std::vector<double> part(zeta.size(), 0.0);
    for (int p : pos) part[p] = zeta[p];
    b.radial_dev_plus = radial_deviation(lake, ScalarField(zeta.lake_ptr(), std::move(part)), inside_point(lake, c));
  }
  if (b.centroid_minus) {
    const Point c = *b.centroid_minus;
    b.roundness_minus =
        roundness_ratio(lake, zeta, -1, c, predicted_radius(lake, 1.0 - budget.tau, budget.epsilon), budget.epsilon);
    b.best_roundness_minus = best_ball_ratio(lake, zeta, -1, c, budget.epsilon);
    std::vector<double> part(zeta.size(), 0.0);
    for (int q : neg) part[q] = -zeta[q];
    b.radial_dev_minus = radial_deviation(lake, ScalarField(zeta.lake_ptr(), std::move(part)), inside_point(lake, c));
  }

  if (!pos.empty()) {
    const ScalarField flow = first_order_flows(lake, zeta).first;
    double num = 0.0;
    double den = 0.0;
    double lowest = std::numeric_limits<double>::infinity();
    for (int p : pos) {
      const double w = zeta[p] * lake.mass(p);
      num += flow[p] * w;
      den += w;
      lowest = std::min(lowest, flow[p]);
    }
    const double scale =
        lake.max_depth() / (4.0 * std::numbers::pi) * budget.strength * std::log(1.0 / budget.epsilon);
    const double gap = num / den - lowest;
    b.min_kappa = scale > 0.0 ? std::max(0.0, gap / scale) : std::numeric_limits<double>::infinity();
    b.concentration_containment = options.kappa >= b.min_kappa;
  }

  if (options.localization) {
    const LocalizationFunctional loc(tables, budget.tau);
    const Point x = b.centroid_plus.value_or(b.centroid_minus.value_or(Point{}));
    const Point y = b.centroid_minus.value_or(x);
    const int cx = lake.nearest_cell(x);
    const int cy = lake.nearest_cell(y);
    b.W_at_centroids = loc(cx, cy);
    b.W_min = minimize_W_over_maxdepth(loc, 1e-6, options.w_candidates).value;
  }
  return b;
}

ScalingFit fit_scaling(const std::vector<double>& epsilon, const std::vector<double>& diam) {
  if (epsilon.size() != diam.size()) throw LakeError("scaling fit needs matching inputs");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t k = 0; k < epsilon.size(); ++k) {
    if (!(diam[k] > 0.0) || !(epsilon[k] > 0.0)) throw LakeError("scaling fit is degenerate: zero diameter");
    xs.push_back(std::log(epsilon[k]));
    ys.push_back(std::log(diam[k]));
  }
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  if (std::unique(sorted.begin(), sorted.end()) - sorted.begin() < 3) {
    throw LakeError("scaling fit needs at least three distinct epsilon values");
  }
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  ScalingFit fit;
  fit.points = xs.size();
  fit.exponent = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double r = ys[k] - my - fit.exponent * (xs[k] - mx);
    ssr += r * r;
  }
  fit.std_error = std::sqrt(ssr / (n - 2.0) / sxx);
  fit.lower = fit.exponent - 2.0 * fit.std_error;
  fit.upper = fit.exponent + 2.0 * fit.std_error;
  fit.in_range = fit.exponent > 0.0 && fit.exponent <= 1.2;
  return fit;
}

ScalingFit fit_scaling(const std::vector<AsymptoticsBundle>& bundles) {
  std::vector<double> eps;
  std::vector<double> diam;
  for (const auto& b : bundles) {
    eps.push_back(b.epsilon);
    diam.push_back(b.support_diam_plus);
  }
  return fit_scaling(eps, diam);
}

RepulsionReport repulsion_check(const std::vector<AsymptoticsBundle>& bundles, double alpha, double tau) {
  if (bundles.size() < 2) throw LakeError("repulsion check needs at least two epsilon values");
  if (!(alpha > 0.0)) throw LakeError("Holder exponent must be positive");
  constexpr double k = 1.0;
  RepulsionReport r;
  const double base = (2.0 - k) / (k * alpha);
  r.pair_applicable = tau > 0.0 && tau < 1.0;
  r.gamma_plus = tau > 0.0 ? base / (tau * tau) : kNaN;
  r.gamma_minus = tau < 1.0 ? base / ((1.0 - tau) * (1.0 - tau)) : kNaN;
  r.gamma_pair = r.pair_applicable
                     ? base * (1.0 / std::min(tau * tau, (1.0 - tau) * (1.0 - tau)) + 1.0 / (2.0 * tau * (1.0 - tau)))
                     : kNaN;
  std::vector<AsymptoticsBundle> sorted = bundles;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.epsilon > b.epsilon; });
  double pair_min = std::numeric_limits<double>::infinity();
  double pair_max = 0.0;
  for (const auto& b : sorted) {
    RepulsionRow row;
    row.epsilon = b.epsilon;
    const double lg = std::log(1.0 / b.epsilon);
    row.dist_plus = b.dist_to_boundary_plus;
    row.dist_minus = b.dist_to_boundary_minus;
    row.pair = r.pair_applicable ? b.pair_distance : kNaN;
    row.proxy_plus = row.dist_plus * std::pow(lg, r.gamma_plus);
    row.proxy_minus = row.dist_minus * std::pow(lg, r.gamma_minus);
    row.proxy_pair = row.pair * std::pow(lg, r.gamma_pair);
    if (r.pair_applicable) {
      pair_min = std::min(pair_min, row.pair);
      pair_max = std::max(pair_max, row.pair);
    }
    r.rows.push_back(row);
  }
  r.pair_ratio = r.pair_applicable && pair_max > 0.0 ? pair_min / pair_max : kNaN;
  auto nondecreasing = [&](auto get) {
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
      const double a = get(r.rows[i - 1]);
      const double b = get(r.rows[i]);
      if (std::isnan(a) || std::isnan(b)) continue;
      if (b < a * (1.0 - 1e-9)) return false;
    }
    return true;
  };
  r.boundary_nondecreasing = nondecreasing([](const RepulsionRow& x) { return x.proxy_plus; }) &&
                             nondecreasing([](const RepulsionRow& x) { return x.proxy_minus; });
  r.pair_nondecreasing = r.pair_applicable && nondecreasing([](const RepulsionRow& x) { return x.proxy_pair; });
  return r;
}

LocalizationReport localization_check(const LocalizationFunctional& loc, const AsymptoticsBundle& bundle,
                                      double tolerance, std::size_t max_candidates) {
  const Lake& lake = loc.tables().lake();
  const WMinimum w = minimize_W_over_maxdepth(loc, tolerance, max_candidates);
  LocalizationReport r;
  r.argmin_x = w.x;
  r.argmin_y = w.y;
  r.W_min = w.value;
  for (int c : w.candidates) r.out_of_theory = r.out_of_theory || lake.touches_boundary(c);
  const Point cp = bundle.centroid_plus.value_or(bundle.centroid_minus.value_or(Point{}));
  const Point cm = bundle.centroid_minus.value_or(cp);
  r.W_centroids = loc(lake.nearest_cell(cp), lake.nearest_cell(cm));
  r.gap = r.W_centroids - r.W_min;
  r.gap_fraction = w.range > 0.0 ? r.gap / w.range : 0.0;
  const double tau = loc.tau();
  r.dist_plus = bundle.centroid_plus ? distance(*bundle.centroid_plus, w.px) : kNaN;
  r.dist_minus = bundle.centroid_minus ? distance(*bundle.centroid_minus, w.py) : kNaN;
  if (tau > 0.0 && tau < 1.0 && bundle.centroid_plus && bundle.centroid_minus) {
    // W is symmetric at tau = 1/2, so the swapped assignment is equally valid.
    const double sp = distance(*bundle.centroid_plus, w.py);
    const double sm = distance(*bundle.centroid_minus, w.px);
    if (tau == 0.5 && std::max(sp, sm) < std::max(r.dist_plus, r.dist_minus)) {
      r.dist_plus = sp;
      r.dist_minus = sm;
    }
  }
  return r;
}

RoundnessReport roundness_check(const Lake& lake, const SolveReport& report, BathtubMode mode) {
  if (mode != BathtubMode::kPatch) throw LakeError("roundness check applies to patch mode only");
  const VortexBudget& budget = report.budget;
  RoundnessReport r;
  r.radius_plus = predicted_radius(lake, budget.tau, budget.epsilon);
  r.radius_minus = predicted_radius(lake, 1.0 - budget.tau, budget.epsilon);
  r.ratio_plus = r.ratio_minus = r.best_ratio_plus = r.best_ratio_minus = kNaN;
  if (const auto c = support_centroid(lake, report.zeta, +1)) {
    r.ratio_plus = roundness_ratio(lake, report.zeta, +1, *c, r.radius_plus, budget.epsilon);
    r.best_ratio_plus = best_ball_ratio(lake, report.zeta, +1, *c, budget.epsilon);
  }
  if (const auto c = support_centroid(lake, report.zeta, -1)) {
    r.ratio_minus = roundness_ratio(lake, report.zeta, -1, *c, r.radius_minus, budget.epsilon);
    r.best_ratio_minus = best_ball_ratio(lake, report.zeta, -1, *c, budget.epsilon);
  }
  return r;
}

}  // namespace lakevortex
