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
#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

namespace lakevortex {
namespace {

using testing::budget;
using testing::make_setup;
using testing::LakeSetup;
using testing::unit_disk;

LakeSpec annulus_spec(int n, DepthProfile depth = DepthProfile::constant(1.0), std::vector<double> circ = {}) {
  return {Domain::annulus({0, 0}, 0.3, 1.0), std::move(depth), n, n, std::move(circ)};
}

TEST(Stream, UniformVorticityOnDisk) {
  const LakeSetup s = make_setup(unit_disk(128));
  const double c = 1.0 / s.lake->total_mass();
  const ScalarField zeta = ScalarField::from_function(s.lake, [c](Point) { return c; });
  const StreamSolution st = solve_stream(*s.op, *s.basis, zeta, budget(0.5, 1.0));
  double worst = 0.0;
  for (int x = 0; x < static_cast<int>(s.lake->size()); ++x) {
    const double r = norm(s.lake->center(x));
    if (r > 0.9) continue;
    const double exact = c * (1.0 - r * r) / 4.0;
    worst = std::max(worst, std::abs(st.psi[x] - exact) / exact);
  }
  EXPECT_LT(worst, 0.01);
  EXPECT_NEAR(st.circulations_achieved[0], 1.0, 1e-9);
  EXPECT_LT(st.relative_residual, 1e-8);
}

TEST(Stream, CirculationTargetsOnAnnulus) {
  const LakeSetup s = make_setup(annulus_spec(64, DepthProfile::linear(1.5, {0.2, 0.1}), {0.7, 0.3}));
  std::mt19937_64 rng(3);
  ScalarField zeta = testing::random_field(s.lake, rng);
  const double total = integrate(zeta);
  for (double& v : zeta.mutable_values()) v /= total;
  const VortexBudget b = budget(0.5, 1.0);
  const std::vector<double> targets = circulation_targets(*s.lake, b);
  ASSERT_EQ(targets.size(), 2u);
  EXPECT_NEAR(targets[0], 0.7, 1e-12);
  EXPECT_NEAR(targets[1], 0.3, 1e-12);
  const StreamSolution st = solve_stream(*s.op, *s.basis, zeta, b);
  EXPECT_NEAR(st.circulations_achieved[0], 0.7, 1e-9);
  EXPECT_NEAR(st.circulations_achieved[1], 0.3, 1e-9);
  EXPECT_EQ(st.alphas[0], 0.0);
  const StreamSolution zero = solve_stream(*s.op, *s.basis, zeta, b, true);
  EXPECT_NEAR(zero.circulations_achieved[0], 1.0, 1e-9);
  EXPECT_NEAR(zero.circulations_achieved[1], 0.0, 1e-9);
}

TEST(Stream, MismatchedStrengthIsRejected) {
  const LakeSetup s = make_setup(unit_disk(32));
  const ScalarField zeta = ScalarField::from_function(s.lake, [](Point) { return 1.0; });
  EXPECT_THROW(solve_stream(*s.op, *s.basis, zeta, budget(0.5, 1.0)), LakeError);
}

TEST(Basis, CirculationMatrixIsSymmetricSemidefinite) {
  Domain d = Domain::disk({0, 0}, 1.0);
  d.islands.push_back(make_disk({0.4, 0.0}, 0.15));
  d.islands.push_back(make_disk({-0.3, 0.3}, 0.12));
  const LakeSetup s = make_setup({d, DepthProfile::bump({0.0, -0.2}, 1.0, 0.8, 0.2), 96, 96, {0.5, 0.3, 0.2}});
  const Eigen::MatrixXd& A = s.basis->A_matrix;
  ASSERT_EQ(A.rows(), 3);
  EXPECT_LT((A - A.transpose()).norm(), 1e-8 * A.norm());
  for (Eigen::Index j = 0; j < 3; ++j) EXPECT_NEAR(A.row(j).sum(), 0.0, 1e-8 * A.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (A + A.transpose()));
  EXPECT_GT(eig.eigenvalues().minCoeff(), -1e-8 * A.norm());
}

TEST(Energy, StreamFormIsHalfTheDirichletForm) {
  Domain d = Domain::disk({0, 0}, 1.0);
  d.islands.push_back(make_disk({0.4, 0.1}, 0.15));
  const LakeSetup s = make_setup({d, DepthProfile::exponential(0.4), 64, 64, {0.6, 0.4}});
  std::mt19937_64 rng(5);
  for (int k = 0; k < 5; ++k) {
    ScalarField zeta = testing::random_field(s.lake, rng);
    const double total = integrate(zeta);
    for (double& v : zeta.mutable_values()) v /= total;
    const StreamSolution st = solve_stream(*s.op, *s.basis, zeta, budget(0.5, 1.0));
    const EnergyParts e = energy_stream_form(*s.lake, zeta, st);
    const double a = s.op->dirichlet_energy(st.psi.values(), st.betas);
    EXPECT_NEAR(e.total, 0.5 * a, 1e-9 * std::abs(a));
    EXPECT_NEAR(e.total, e.kpart + e.island, 1e-15);
  }
}

TEST(Energy, IsConvexAlongSegments) {
  const LakeSetup s = make_setup(unit_disk(48, DepthProfile::bump({0.1, 0.1}, 1.0, 0.5, 0.2)));
  std::mt19937_64 rng(9);
  auto normalized = [&] {
    ScalarField z = testing::random_field(s.lake, rng);
    const double t = integrate(z);
    for (double& v : z.mutable_values()) v /= t;
    return z;
  };
  const VortexBudget b = budget(0.5, 1.0);
  auto energy = [&](const ScalarField& z) {
    return energy_stream_form(*s.lake, z, solve_stream(*s.op, *s.basis, z, b)).total;
  };
  for (int k = 0; k < 5; ++k) {
    const ScalarField a = normalized();
    const ScalarField c = normalized();
    ScalarField mid = a;
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (a[i] + c[i]);
    EXPECT_LE(energy(mid), 0.5 * (energy(a) + energy(c)) + 1e-12);
  }
}

TEST(Operator, UnitModeIgnoresDepth) {
  auto lake = Lake::build(unit_disk(32, DepthProfile::linear(2.0, {0.5, 0.0})));
  const auto unit = EllipticOperator::assemble(lake, EllipticOperator::Coefficient::kUnit);
  const auto depth = EllipticOperator::assemble(lake);
  const int c = lake->nearest_cell({0.0, 0.0});
  for (int slot = 0; slot < 4; ++slot) {
    EXPECT_DOUBLE_EQ(unit->face_coefficient(c, slot), 1.0);
    EXPECT_LT(depth->face_coefficient(c, slot), 1.0);
  }
}

TEST(Operator, SolveInvertsApply) {
  auto lake = Lake::build(annulus_spec(48, DepthProfile::bump({0.5, 0.0}, 1.0, 0.5, 0.1)));
  const auto op = EllipticOperator::assemble(lake);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> rhs(lake->size());
  for (double& v : rhs) v = u(rng);
  const std::vector<double> boundary = {0.25, -0.5};
  const std::vector<double> x = op->solve(rhs, boundary);
  const std::vector<double> back = op->apply(x, boundary);
  for (std::size_t i = 0; i < rhs.size(); ++i) EXPECT_NEAR(back[i], rhs[i], 1e-8);
}

}  // namespace
}  // namespace lakevortex
