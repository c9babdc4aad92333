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

#include "lakevortex/elliptic.hpp"

#include <cmath>

namespace lakevortex {

std::shared_ptr<const EllipticOperator> EllipticOperator::assemble(LakePtr lake, Coefficient mode) {
  if (!lake) throw LakeError("operator requires a lake");
  std::shared_ptr<EllipticOperator> op(new EllipticOperator());
  op->lake_ = std::move(lake);
  op->mode_ = mode;
  const Lake& L = *op->lake_;
  const int n = static_cast<int>(L.size());
  const double inv_h2 = 1.0 / (L.h() * L.h());
  const auto faces = L.boundary_faces();

  op->coeff_.resize(static_cast<std::size_t>(n) * 4);
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n) * 5);
  for (int p = 0; p < n; ++p) {
    double diag = 0.0;
    const auto& nb = L.neighbors(p);
    for (int s = 0; s < 4; ++s) {
      double k = 1.0;
      if (nb[s] >= 0) {
        if (mode == Coefficient::kDepth) k = 2.0 / (L.depth(p) + L.depth(nb[s]));
        diag += k;
        triplets.emplace_back(p, nb[s], -k * inv_h2);
      } else {
        const BoundaryFace& f = faces[-nb[s] - 1];
        if (mode == Coefficient::kDepth) k = 2.0 / (L.depth(p) + f.depth);
        diag += k / f.theta;
      }
      op->coeff_[static_cast<std::size_t>(p) * 4 + s] = k;
    }
    triplets.emplace_back(p, p, diag * inv_h2);
  }
  op->matrix_.resize(n, n);
  op->matrix_.setFromTriplets(triplets.begin(), triplets.end());
  op->factor_.compute(op->matrix_);
  if (op->factor_.info() != Eigen::Success) throw LakeError("elliptic operator is singular");
  return op;
}

double EllipticOperator::boundary_value(int label, std::span<const double> boundary) const {
  if (boundary.empty()) return 0.0;
  return boundary[label];
}

std::vector<double> EllipticOperator::solve(std::span<const double> rhs, std::span<const double> boundary) const {
  const Lake& L = *lake_;
  if (rhs.size() != L.size()) throw LakeError("right-hand side size does not match the lake");
  if (!boundary.empty() && static_cast<int>(boundary.size()) != L.num_components()) {
    throw LakeError("boundary data must list one value per component");
  }
  Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  if (!boundary.empty()) {
    const double inv_h2 = 1.0 / (L.h() * L.h());
    for (int p = 0; p < static_cast<int>(L.size()); ++p) {
      const auto& nb = L.neighbors(p);
      for (int s = 0; s < 4; ++s) {
        if (nb[s] >= 0) continue;
        const BoundaryFace& f = L.boundary_faces()[-nb[s] - 1];
        b[p] += face_coefficient(p, s) * boundary_value(f.label, boundary) / f.theta * inv_h2;
      }
    }
  }
  Eigen::VectorXd x;
  {
    std::lock_guard<std::mutex> lock(solve_mutex_);
    x = factor_.solve(b);
  }
  if (factor_.info() != Eigen::Success) throw LakeError("elliptic solve failed");
  return {x.data(), x.data() + x.size()};
}

std::vector<double> EllipticOperator::apply(std::span<const double> u, std::span<const double> boundary) const {
  const Lake& L = *lake_;
  const double inv_h2 = 1.0 / (L.h() * L.h());
  std::vector<double> out(L.size(), 0.0);
  for (int p = 0; p < static_cast<int>(L.size()); ++p) {
    const auto& nb = L.neighbors(p);
    double acc = 0.0;
    for (int s = 0; s < 4; ++s) {
      const double k = face_coefficient(p, s);
      if (nb[s] >= 0) {
        acc += k * (u[p] - u[nb[s]]);
      } else {
        const BoundaryFace& f = L.boundary_faces()[-nb[s] - 1];
        acc += k * (u[p] - boundary_value(f.label, boundary)) / f.theta;
      }
    }
    out[p] = acc * inv_h2;
  }
  return out;
}

std::vector<double> EllipticOperator::circulations(std::span<const double> u, std::span<const double> boundary) const {
  const Lake& L = *lake_;
  std::vector<double> out(L.num_components(), 0.0);
  for (int p = 0; p < static_cast<int>(L.size()); ++p) {
    const auto& nb = L.neighbors(p);
    for (int s = 0; s < 4; ++s) {
      if (nb[s] >= 0) continue;
      const BoundaryFace& f = L.boundary_faces()[-nb[s] - 1];
      out[f.label] += face_coefficient(p, s) * (u[p] - boundary_value(f.label, boundary)) / f.theta;
    }
  }
  return out;
}

double EllipticOperator::dirichlet_energy(std::span<const double> u, std::span<const double> boundary) const {
  const Lake& L = *lake_;
  double e = 0.0;
  for (int p = 0; p < static_cast<int>(L.size()); ++p) {
    const auto& nb = L.neighbors(p);
    for (int s = 0; s < 4; ++s) {
      const double k = face_coefficient(p, s);
      if (nb[s] >= 0) {
        if (nb[s] > p) e += k * (u[p] - u[nb[s]]) * (u[p] - u[nb[s]]);
      } else {
        const BoundaryFace& f = L.boundary_faces()[-nb[s] - 1];
        const double d = u[p] - boundary_value(f.label, boundary);
        e += k * d * d / f.theta;
      }
    }
  }
  return e;
}

Eigen::VectorXd HarmonicBasis::solve_gauge(const Eigen::VectorXd& v) const {
  const int n = num_components();
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  if (n == 1) return alpha;
  const Eigen::MatrixXd block = A_matrix.bottomRightCorner(n - 1, n - 1);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(block);
  if (!lu.isInvertible()) throw LakeError("circulation matrix is singular");
  alpha.tail(n - 1) = lu.solve(v.tail(n - 1));
  return alpha;
}

HarmonicBasis harmonic_basis(const EllipticOperator& op) {
  const Lake& L = op.lake();
  const int n = L.num_components();
  HarmonicBasis basis;
  basis.circulation_matrix.resize(n, n);
  const std::vector<double> zero(L.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> data(n, 0.0);
    data[i] = 1.0;
    std::vector<double> psi = op.solve(zero, data);
    const std::vector<double> circ = op.circulations(psi, data);
    for (int j = 0; j < n; ++j) basis.circulation_matrix(j, i) = circ[j];
    basis.psi.emplace_back(op.lake_ptr(), std::move(psi));
  }
  basis.A_matrix = -basis.circulation_matrix;
  return basis;
}

std::vector<double> circulation_targets(const Lake& lake, const VortexBudget& budget, bool zero_islands) {
  std::vector<double> t(lake.num_components(), 0.0);
  const double net = budget.net_circulation();
  for (int j = 0; j < lake.num_components(); ++j) t[j] = lake.circulations()[j] * net;
  if (zero_islands) {
    std::fill(t.begin(), t.end(), 0.0);
    t[0] = net;
  }
  return t;
}

StreamSolution solve_stream(const EllipticOperator& op, const HarmonicBasis& basis, const ScalarField& zeta,
                            std::span<const double> targets) {
  const Lake& L = op.lake();
  if (zeta.lake_ptr() != op.lake_ptr()) throw LakeError("vortex field belongs to a different lake");
  const int n = L.num_components();
  if (static_cast<int>(targets.size()) != n) throw LakeError("one circulation target per component required");

  std::vector<double> rhs(L.size());
  for (std::size_t p = 0; p < rhs.size(); ++p) rhs[p] = L.depth(static_cast<int>(p)) * zeta[p];
  std::vector<double> kpart = op.solve(rhs);
  const std::vector<double> pk = op.circulations(kpart);

  Eigen::VectorXd v(n);
  for (int j = 0; j < n; ++j) v[j] = pk[j] - targets[j];
  const Eigen::VectorXd alpha = basis.solve_gauge(v);
  double shift = 0.0;
  for (int i = 0; i < n; ++i) shift += alpha[i] * L.circulations()[i];

  std::vector<double> psi = kpart;
  for (int i = 1; i < n; ++i) {
    const double a = alpha[i];
    if (a == 0.0) continue;
    const auto vals = basis.psi[i].values();
    for (std::size_t p = 0; p < psi.size(); ++p) psi[p] += a * vals[p];
  }
  for (double& value : psi) value -= shift;

  StreamSolution sol;
  sol.alphas.assign(alpha.data(), alpha.data() + n);
  sol.betas.resize(n);
  for (int j = 0; j < n; ++j) sol.betas[j] = alpha[j] - shift;
  sol.circulations_achieved = op.circulations(psi, sol.betas);
  sol.circulation_targets.assign(targets.begin(), targets.end());

  const std::vector<double> applied = op.apply(psi, sol.betas);
  double rnorm = 0.0;
  double bnorm = 0.0;
  for (std::size_t p = 0; p < rhs.size(); ++p) {
    rnorm += (applied[p] - rhs[p]) * (applied[p] - rhs[p]);
    bnorm += rhs[p] * rhs[p];
  }
  sol.relative_residual = bnorm > 0.0 ? std::sqrt(rnorm / bnorm) : std::sqrt(rnorm);
  if (sol.relative_residual > 1e-8) throw LakeError("stream solve residual too large");

  sol.psi = ScalarField(op.lake_ptr(), std::move(psi));
  sol.kpart = ScalarField(op.lake_ptr(), std::move(kpart));
  return sol;
}

StreamSolution solve_stream(const EllipticOperator& op, const HarmonicBasis& basis, const ScalarField& zeta,
                            const VortexBudget& budget, bool zero_islands) {
  const Lake& L = op.lake();
  double pos = 0.0;
  double neg = 0.0;
  for (std::size_t p = 0; p < zeta.size(); ++p) {
    const double m = L.mass(static_cast<int>(p));
    if (zeta[p] > 0.0) pos += zeta[p] * m;
    if (zeta[p] < 0.0) neg -= zeta[p] * m;
  }
  const double tol = 0.01 * budget.strength;
  if (std::abs(pos - budget.positive_strength()) > tol || std::abs(neg - budget.negative_strength()) > tol) {
    throw LakeError("vortex strengths do not match the budget");
  }
  const std::vector<double> t = circulation_targets(L, budget, zero_islands);
  return solve_stream(op, basis, zeta, t);
}

}  // namespace lakevortex
