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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "support.hpp"

namespace lakevortex {
namespace {

using testing::budget;
using testing::LakeSetup;
using testing::make_setup;
using testing::unit_disk;
using testing::vortex_ball;

TEST(FitScaling, RecoversPowerLaw) {
  const std::vector<double> eps = {0.2, 0.1, 0.05, 0.025};
  std::vector<double> diam;
  for (double e : eps) diam.push_back(3.0 * e);
  const ScalingFit exact = fit_scaling(eps, diam);
  EXPECT_NEAR(exact.exponent, 1.0, 1e-12);
  EXPECT_NEAR(exact.std_error, 0.0, 1e-12);
  EXPECT_TRUE(exact.in_range);
  EXPECT_EQ(exact.points, 4u);

  std::vector<double> noisy;
  for (std::size_t k = 0; k < eps.size(); ++k) noisy.push_back(3.0 * std::pow(eps[k], 1.5) * (k % 2 ? 1.05 : 0.95));
  const ScalingFit off = fit_scaling(eps, noisy);
  EXPECT_NEAR(off.exponent, 1.5, 0.1);
  EXPECT_GT(off.std_error, 0.0);
  EXPECT_LE(off.lower, off.exponent);
  EXPECT_GE(off.upper, off.exponent);
  EXPECT_FALSE(off.in_range);
  EXPECT_THROW(fit_scaling({0.1, 0.2}, {0.3, 0.6}), LakeError);
}

TEST(Repulsion, ExponentsAtKappaOne) {
  std::vector<AsymptoticsBundle> rows(2);
  rows[0].epsilon = 0.05;
  rows[1].epsilon = 0.1;
  for (AsymptoticsBundle& b : rows) {
    b.dist_to_boundary_plus = 0.5;
    b.dist_to_boundary_minus = 0.5;
    b.pair_distance = b.epsilon;
  }
  const RepulsionReport one = repulsion_check(rows, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(one.gamma_plus, 1.0);
  EXPECT_TRUE(std::isnan(one.gamma_minus));
  EXPECT_FALSE(one.pair_applicable);
  EXPECT_TRUE(one.boundary_nondecreasing);
  const RepulsionReport half = repulsion_check(rows, 2.0, 0.5);
  EXPECT_DOUBLE_EQ(half.gamma_plus, 2.0);
  EXPECT_DOUBLE_EQ(half.gamma_minus, 2.0);
  EXPECT_DOUBLE_EQ(half.gamma_pair, 0.5 * (4.0 + 2.0));
  EXPECT_TRUE(half.pair_applicable);
  EXPECT_DOUBLE_EQ(half.pair_ratio, 0.5);
  ASSERT_EQ(half.rows.size(), 2u);
  EXPECT_EQ(half.rows[0].epsilon, 0.1);
  EXPECT_THROW(repulsion_check({rows[0]}, 1.0, 1.0), LakeError);
}

TEST(Roundness, BallIsRoundAndShiftedBallIsNot) {
  auto lake = Lake::build(unit_disk(128));
  const double eps = 0.2;
  const double radius = eps / std::sqrt(std::numbers::pi);
  const ScalarField z = vortex_ball(lake, {0.1, 0.0}, eps * eps, 1.0);
  EXPECT_LT(roundness_ratio(*lake, z, +1, {0.1, 0.0}, radius, eps), 0.15);
  EXPECT_GT(roundness_ratio(*lake, z, +1, {0.1 + radius, 0.0}, radius, eps), 1.0);
  EXPECT_LE(best_ball_ratio(*lake, z, +1, {0.1 + 0.01, 0.0}, eps), roundness_ratio(*lake, z, +1, {0.11, 0.0}, radius, eps));
}

TEST(Diagnose, BundleOfDiskVortex) {
  const LakeSetup s = make_setup(unit_disk(64, DepthProfile::bump({0.3, 0.0}, 1.0, 1.0, 0.2)));
  const SolveReport r = solve(*s.tables, budget(0.15, 1.0), {});
  DiagnoseOptions o;
  o.localization = true;
  const AsymptoticsBundle a = diagnose(*s.tables, r, o);
  ASSERT_TRUE(a.centroid_plus.has_value());
  EXPECT_FALSE(a.centroid_minus.has_value());
  EXPECT_TRUE(std::isnan(a.support_diam_minus));
  EXPECT_GT(a.support_diam_plus, 0.0);
  EXPECT_LT(a.support_diam_plus, 0.4);
  EXPECT_LT(a.argmax_distance_plus, 0.1);
  EXPECT_GT(a.dist_to_boundary_plus, 0.3);
  EXPECT_TRUE(a.concentration_containment);
  EXPECT_LE(a.min_kappa, a.kappa);
  ASSERT_TRUE(a.W_min.has_value());

  const std::vector<char> set = concentration_set(*s.lake, r.zeta, r.budget, 0.5);
  for (std::size_t c = 0; c < set.size(); ++c) {
    if (r.zeta[c] > 0.0) EXPECT_TRUE(set[c]);
  }
  // A larger kappa gives a larger set.
  const std::vector<char> wide = concentration_set(*s.lake, r.zeta, r.budget, 1.5);
  for (std::size_t c = 0; c < set.size(); ++c) {
    if (set[c]) EXPECT_TRUE(wide[c]);
  }
}

TEST(Diagnose, RoundnessRejectsDistributionMode) {
  const LakeSetup s = make_setup(unit_disk(32));
  const SolveReport r = solve(*s.tables, budget(0.3, 1.0), {});
  EXPECT_NO_THROW(roundness_check(*s.lake, r, BathtubMode::kPatch));
  EXPECT_THROW(roundness_check(*s.lake, r, BathtubMode::kDistribution), LakeError);
}

TEST(Localization, CheckAgreesWithSearch) {
  const LakeSetup s = make_setup(testing::two_max_disk(64));
  const SolveReport r = solve(*s.tables, budget(0.1, 0.5), {});
  const AsymptoticsBundle a = diagnose(*s.tables, r);
  const LocalizationFunctional loc(*s.tables, 0.5);
  const LocalizationReport l = localization_check(loc, a);
  EXPECT_GE(l.gap, -1e-12);
  EXPECT_LE(l.gap_fraction, 1.0);
  EXPECT_LT(l.dist_plus, 3.0 * s.lake->h());
  EXPECT_LT(l.dist_minus, 3.0 * s.lake->h());
  EXPECT_FALSE(l.out_of_theory);
}

}  // namespace
}  // namespace lakevortex
