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

#ifndef LAKEVORTEX_KERNEL_HPP_
#define LAKEVORTEX_KERNEL_HPP_

#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lakevortex/elliptic.hpp"
#include "lakevortex/geometry.hpp"

namespace lakevortex {

/// Euler-Mascheroni constant plus 3/2 log 2: the 5-point lattice Green's
/// function at the origin is (log(1/h) + kLatticeConstant) / 2pi + o(1).
inline constexpr double kLatticeConstant = 1.6169364357414509;

/// Memory-bounded LRU cache of columns keyed by source cell. Thread-safe.
class ColumnCache {
 public:
  using Column = std::shared_ptr<const std::vector<double>>;
  explicit ColumnCache(std::size_t budget_bytes) : budget_(budget_bytes) {}
  Column get(int key);
  void put(int key, Column column);
  std::size_t size() const;

 private:
  std::size_t budget_;
  std::size_t bytes_ = 0;
  std::list<std::pair<int, Column>> order_;
  std::unordered_map<int, std::list<std::pair<int, Column>>::iterator> index_;
  mutable std::mutex mutex_;
};

struct SandwichBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Lazily evaluated g, H, R and F on one lake.
class KernelTables {
 public:
  struct Options {
    std::size_t cache_bytes = std::size_t{256} << 20;
    /// Replaces diam in H only (bounds keep the true diameter).
    std::optional<double> diam_override;
  };

  KernelTables(OperatorPtr depth_op, std::shared_ptr<const HarmonicBasis> basis);
  KernelTables(OperatorPtr depth_op, std::shared_ptr<const HarmonicBasis> basis, Options options);

  const Lake& lake() const { return depth_op_->lake(); }
  const LakePtr& lake_ptr() const { return depth_op_->lake_ptr(); }
  const EllipticOperator& depth_operator() const { return *depth_op_; }
  const EllipticOperator& unit_operator() const { return *unit_op_; }
  const HarmonicBasis& basis() const { return *basis_; }
  double sup_b() const { return lake().max_depth(); }
  double diam() const { return lake().diam(); }
  bool constant_depth() const { return constant_depth_; }

  /// Solves -Lap g(., y) = delta_y / h^2 with zero Dirichlet data.
  ColumnCache::Column green_column(int y) const;
  double green(int x, int y) const { return (*green_column(y))[x]; }

  /// (1/2pi) log(diam/|x - y|), with log(diam/h) + kLatticeConstant on the
  /// diagonal.
  double log_kernel(int x, int y) const;
  double regular_part(int x, int y) const;
  double regular_part(Point x, Point y) const;

  /// R(., y), defined so that b(x) g(x, y) + R(x, y) is the Green's
  /// function of the depth operator.
  ColumnCache::Column correction_R(int y) const;
  double correction_F(int x, int y) const;
  /// F(cells[a], cells[b]) for all a, b, without caching full columns.
  Eigen::MatrixXd correction_F_block(const std::vector<int>& cells) const;
  /// Island part of F: sum_{i>=1} (psi_i(x) - c_i) alpha_i(y).
  double island_term(int x, int y) const;

  /// Upper and lower bounds on H(x, y) from image balls, with distances
  /// relaxed by `slack`.
  SandwichBounds sandwich(int x, int y, double slack) const;

 private:
  OperatorPtr depth_op_;
  OperatorPtr unit_op_;
  std::shared_ptr<const HarmonicBasis> basis_;
  Options options_;
  bool constant_depth_ = false;
  std::vector<Eigen::VectorXd> island_alpha_;
  mutable ColumnCache green_cache_;
  mutable ColumnCache r_cache_;
};

/// Dirichlet Green's functions of -Laplace in closed form, for oracles.
double disk_green(Point center, double radius, Point x, Point y);
/// Fourier series with the free-space logarithm split off; `terms` modes.
double annulus_green(Point center, double inner, double outer, Point x, Point y, int terms = 400);

double green_column_value(const KernelTables& tables, int x, int y);
ScalarField green_column(const KernelTables& tables, int y);
ScalarField correction_R(const KernelTables& tables, int y);

/// The pair functional
///   W(x, y) = t(1-t) G(x, y) - t^2 F(x, x) - (1-t)^2 F(y, y) + t(1-t) (F(x, y) + F(y, x))
/// with G(x, y) = (b(x) + b(y))/2pi log(diam/|x - y|).
class LocalizationFunctional {
 public:
  LocalizationFunctional(const KernelTables& tables, double tau);
  double tau() const { return tau_; }
  const KernelTables& tables() const { return *tables_; }
  double operator()(int x, int y) const;
  double operator()(Point x, Point y) const;

 private:
  const KernelTables* tables_;
  double tau_;
};

double localization_W(const LocalizationFunctional& loc, Point x, Point y);

struct WMinimum {
  int x = -1;
  int y = -1;
  Point px;
  Point py;
  double value = 0.0;
  /// Spread of W over the searched pairs (max - min, finite values only).
  double range = 0.0;
  /// Candidate cells in the thresholded max-depth set.
  std::vector<int> candidates;
  /// Set when tau is in (0, 1) and only one candidate exists.
  bool degenerate = false;
};

/// Grid search of W over the max-depth cells b >= sup b - tolerance (sup b - inf b).
/// Large candidate sets are searched on a strided subset and then refined
/// exhaustively around the best pair.
WMinimum minimize_W_over_maxdepth(const LocalizationFunctional& loc, double tolerance = 1e-6,
                                  std::size_t max_candidates = 500);

}  // namespace lakevortex

#endif  // LAKEVORTEX_KERNEL_HPP_
