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

#ifndef LAKEVORTEX_ELLIPTIC_HPP_
#define LAKEVORTEX_ELLIPTIC_HPP_

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "lakevortex/budget.hpp"
#include "lakevortex/geometry.hpp"

namespace lakevortex {

/// Finite-volume discretization of -div(k grad u) on the active cells.
///
/// Interior faces use k = 2 / (b_p + b_q), the harmonic mean of 1/b. Faces
/// cut by the boundary are shortened to the crossing distance theta*h and
/// carry k = 2 / (b_p + b_boundary). Unit mode sets k = 1 everywhere and is
/// the Dirichlet Laplacian.
///
/// (A u)_p = h^-2 [ sum_q k (u_p - u_q) + sum_faces k (u_p - u_face) / theta ]
class EllipticOperator {
 public:
  enum class Coefficient { kDepth, kUnit };

  static std::shared_ptr<const EllipticOperator> assemble(LakePtr lake, Coefficient mode = Coefficient::kDepth);

  const Lake& lake() const { return *lake_; }
  const LakePtr& lake_ptr() const { return lake_; }
  Coefficient mode() const { return mode_; }
  std::size_t size() const { return lake_->size(); }

  /// Coefficient k on neighbor slot `slot` of `cell`, boundary or interior.
  double face_coefficient(int cell, int slot) const { return coeff_[static_cast<std::size_t>(cell) * 4 + slot]; }
  /// Sparse matrix of A acting on cell values with zero boundary data.
  const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }

  /// Solves A u = rhs with boundary value boundary[label] on each component
  /// (all zero when `boundary` is empty).
  std::vector<double> solve(std::span<const double> rhs, std::span<const double> boundary = {}) const;
  /// A u including boundary data.
  std::vector<double> apply(std::span<const double> u, std::span<const double> boundary = {}) const;
  /// Per-component flux sum_faces k (u_p - u_face) / theta, the discrete
  /// circulation of b^-1 grad-perp u along each boundary component.
  std::vector<double> circulations(std::span<const double> u, std::span<const double> boundary = {}) const;
  /// Discrete Dirichlet form a(u, u) including boundary faces.
  double dirichlet_energy(std::span<const double> u, std::span<const double> boundary = {}) const;

 private:
  EllipticOperator() = default;
  double boundary_value(int label, std::span<const double> boundary) const;

  LakePtr lake_;
  Coefficient mode_ = Coefficient::kDepth;
  std::vector<double> coeff_;
  Eigen::SparseMatrix<double> matrix_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor_;
  mutable std::mutex solve_mutex_;
};

using OperatorPtr = std::shared_ptr<const EllipticOperator>;

/// psi_0..psi_m with psi_i = delta_ij on component j, and the matrix of
/// their circulations.
struct HarmonicBasis {
  std::vector<ScalarField> psi;
  /// M(j, i) = circulation of psi_i around component j.
  Eigen::MatrixXd circulation_matrix;
  /// The map from boundary data to circulations with the sign making it
  /// positive semidefinite: A = -M. Rows and columns sum to zero.
  Eigen::MatrixXd A_matrix;

  int num_components() const { return static_cast<int>(psi.size()); }
  /// alpha with alpha_0 = 0 solving sum_{i>=1} A(j, i) alpha_i = v_j for j >= 1.
  Eigen::VectorXd solve_gauge(const Eigen::VectorXd& v) const;
};

HarmonicBasis harmonic_basis(const EllipticOperator& op);

struct StreamSolution {
  ScalarField psi;
  ScalarField kpart;
  /// Coefficients on (psi_i - c_i), alpha_0 = 0.
  std::vector<double> alphas;
  /// Boundary value of psi on each component, alpha_i - sum_j alpha_j c_j.
  std::vector<double> betas;
  std::vector<double> circulations_achieved;
  std::vector<double> circulation_targets;
  double relative_residual = 0.0;
};

/// Circulation targets c_i (2 tau - 1) S, or zero when zero_islands is set
/// (the outer component then carries the remainder).
std::vector<double> circulation_targets(const Lake& lake, const VortexBudget& budget, bool zero_islands = false);

/// Stream function for zeta with the given circulation targets.
StreamSolution solve_stream(const EllipticOperator& op, const HarmonicBasis& basis, const ScalarField& zeta,
                            std::span<const double> targets);
/// Same, with targets from the budget. zeta's strengths must match it within 1%.
StreamSolution solve_stream(const EllipticOperator& op, const HarmonicBasis& basis, const ScalarField& zeta,
                            const VortexBudget& budget, bool zero_islands = false);

}  // namespace lakevortex

#endif  // LAKEVORTEX_ELLIPTIC_HPP_
