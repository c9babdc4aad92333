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

#include "lakevortex/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace lakevortex {

namespace {

constexpr double kInv2Pi = 0.5 / std::numbers::pi;

// Right-hand side whose depth-operator solve is R(., y), given g(., y).
std::vector<double> r_source(const EllipticOperator& op, std::span<const double> g) {
  const Lake& L = op.lake();
  const double inv_h2 = 1.0 / (L.h() * L.h());
  std::vector<double> r(L.size(), 0.0);
  for (int p = 0; p < static_cast<int>(L.size()); ++p) {
    const auto& nb = L.neighbors(p);
    double acc = 0.0;
    for (int s = 0; s < 4; ++s) {
      const double k = op.face_coefficient(p, s);
      if (nb[s] >= 0) {
        acc += k * 0.5 * (g[p] + g[nb[s]]) * (L.depth(nb[s]) - L.depth(p));
      } else {
        const BoundaryFace& f = L.boundary_faces()[-nb[s] - 1];
        acc += k * 0.5 * g[p] * (f.depth - L.depth(p)) / f.theta;
      }
    }
    r[p] = acc * inv_h2;
  }
  return r;
}

std::vector<double> unit_source(const Lake& L, int y) {
  std::vector<double> e(L.size(), 0.0);
  e[y] = 1.0 / (L.h() * L.h());
  return e;
}

}  // namespace

ColumnCache::Column ColumnCache::get(int key) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = index_.find(key);
  if (it == index_.end()) return nullptr;
  order_.splice(order_.begin(), order_, it->second);
  return it->second->second;
}

void ColumnCache::put(int key, Column column) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (index_.count(key)) return;
  bytes_ += column->size() * sizeof(double);
  order_.emplace_front(key, std::move(column));
  index_[key] = order_.begin();
  while (bytes_ > budget_ && order_.size() > 1) {
    bytes_ -= order_.back().second->size() * sizeof(double);
    index_.erase(order_.back().first);
    order_.pop_back();
  }
}

std::size_t ColumnCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return order_.size();
}

KernelTables::KernelTables(OperatorPtr depth_op, std::shared_ptr<const HarmonicBasis> basis)
    : KernelTables(std::move(depth_op), std::move(basis), Options{}) {}

KernelTables::KernelTables(OperatorPtr depth_op, std::shared_ptr<const HarmonicBasis> basis, Options options)
    : depth_op_(std::move(depth_op)),
      basis_(std::move(basis)),
      options_(options),
      green_cache_(options.cache_bytes),
      r_cache_(options.cache_bytes) {
  if (!depth_op_ || !basis_) throw LakeError("kernel tables need an operator and a harmonic basis");
  if (depth_op_->mode() != EllipticOperator::Coefficient::kDepth) {
    throw LakeError("kernel tables need the depth operator");
  }
  const Lake& L = lake();
  if (basis_->num_components() != L.num_components() || basis_->psi.front().lake_ptr() != depth_op_->lake_ptr()) {
    throw LakeError("harmonic basis belongs to a different lake");
  }
  if (options_.diam_override && !(*options_.diam_override > 0.0)) throw LakeError("diam override must be positive");
  unit_op_ = EllipticOperator::assemble(depth_op_->lake_ptr(), EllipticOperator::Coefficient::kUnit);

  constant_depth_ = L.max_depth() == L.min_depth();
  for (const BoundaryFace& f : L.boundary_faces()) {
    if (f.depth != L.max_depth()) constant_depth_ = false;
  }

  const int n = L.num_components();
  if (n > 1) {
    Eigen::MatrixXd rhs(n, static_cast<Eigen::Index>(L.size()));
    for (int j = 0; j < n; ++j) {
      for (std::size_t p = 0; p < L.size(); ++p) rhs(j, static_cast<Eigen::Index>(p)) = basis_->psi[j][p] - L.circulations()[j];
    }
    const Eigen::MatrixXd block = basis_->A_matrix.bottomRightCorner(n - 1, n - 1);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(block);
    if (!lu.isInvertible()) throw LakeError("circulation matrix is singular");
    const Eigen::MatrixXd alpha = lu.solve(rhs.bottomRows(n - 1));
    island_alpha_.resize(L.size());
    for (std::size_t p = 0; p < L.size(); ++p) island_alpha_[p] = alpha.col(static_cast<Eigen::Index>(p));
  }
}

ColumnCache::Column KernelTables::green_column(int y) const {
  if (auto c = green_cache_.get(y)) return c;
  auto col = std::make_shared<const std::vector<double>>(unit_op_->solve(unit_source(lake(), y)));
  green_cache_.put(y, col);
  return col;
}

double KernelTables::log_kernel(int x, int y) const {
  const Lake& L = lake();
  if (x == y) return kInv2Pi * (std::log(L.diam() / L.h()) + kLatticeConstant);
  return kInv2Pi * std::log(L.diam() / distance(L.center(x), L.center(y)));
}

double KernelTables::regular_part(int x, int y) const {
  const Lake& L = lake();
  const double diam = options_.diam_override.value_or(L.diam());
  const double r = x == y ? L.h() * std::exp(-kLatticeConstant) : distance(L.center(x), L.center(y));
  return kInv2Pi * std::log(diam / r) - green(x, y);
}

double KernelTables::regular_part(Point x, Point y) const {
  const Lake& L = lake();
  if (!L.domain().contains(x) || !L.domain().contains(y)) throw LakeError("points must lie in the domain");
  return regular_part(L.nearest_cell(x), L.nearest_cell(y));
}

ColumnCache::Column KernelTables::correction_R(int y) const {
  if (auto c = r_cache_.get(y)) return c;
  std::shared_ptr<const std::vector<double>> col;
  if (constant_depth_) {
    col = std::make_shared<const std::vector<double>>(lake().size(), 0.0);
  } else {
    const auto g = green_column(y);
    col = std::make_shared<const std::vector<double>>(depth_op_->solve(r_source(*depth_op_, *g)));
  }
  r_cache_.put(y, col);
  return col;
}

double KernelTables::island_term(int x, int y) const {
  if (island_alpha_.empty()) return 0.0;
  const Lake& L = lake();
  double s = 0.0;
  for (int i = 1; i < L.num_components(); ++i) {
    s += (basis_->psi[i][x] - L.circulations()[i]) * island_alpha_[y][i - 1];
  }
  return s;
}

double KernelTables::correction_F(int x, int y) const {
  return (*correction_R(y))[x] - lake().depth(x) * regular_part(x, y) + island_term(x, y);
}

Eigen::MatrixXd KernelTables::correction_F_block(const std::vector<int>& cells) const {
  const Lake& L = lake();
  const auto k = static_cast<Eigen::Index>(cells.size());
  Eigen::MatrixXd out(k, k);
  for (Eigen::Index b = 0; b < k; ++b) {
    const int y = cells[b];
    auto g = green_cache_.get(y);
    std::vector<double> local;
    if (!g) {
      local = unit_op_->solve(unit_source(L, y));
    }
    std::span<const double> gs = g ? std::span<const double>(*g) : std::span<const double>(local);
    std::vector<double> r;
    if (!constant_depth_) r = depth_op_->solve(r_source(*depth_op_, gs));
    for (Eigen::Index a = 0; a < k; ++a) {
      const int x = cells[a];
      const double h = log_kernel(x, y) - gs[x];
      out(a, b) = (r.empty() ? 0.0 : r[x]) - L.depth(x) * h + island_term(x, y);
    }
  }
  return out;
}

SandwichBounds KernelTables::sandwich(int x, int y, double slack) const {
  const Lake& L = lake();
  const Point px = L.center(x);
  const Point py = L.center(y);
  const double r = distance(px, py);
  const double dx = L.boundary_distance(x);
  const double dy = L.boundary_distance(y);
  const double ux = L.filled_boundary_distance(x);
  const double uy = L.filled_boundary_distance(y);
  SandwichBounds b;
  b.upper = kInv2Pi * std::log(L.diam() / std::max(std::max({r, dx, dy}) - slack, L.h()));
  b.lower = kInv2Pi * std::log(L.diam() / (r + 2.0 * std::max(ux, uy) + slack));
  return b;
}

double green_column_value(const KernelTables& tables, int x, int y) { return tables.green(x, y); }

ScalarField green_column(const KernelTables& tables, int y) {
  return ScalarField(tables.lake_ptr(), *tables.green_column(y));
}

ScalarField correction_R(const KernelTables& tables, int y) {
  return ScalarField(tables.lake_ptr(), *tables.correction_R(y));
}

LocalizationFunctional::LocalizationFunctional(const KernelTables& tables, double tau) : tables_(&tables), tau_(tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw LakeError("tau must lie in [0, 1]");
}

double LocalizationFunctional::operator()(int x, int y) const {
  const KernelTables& T = *tables_;
  const double t = tau_;
  if (t == 1.0) return -T.correction_F(x, x);
  if (t == 0.0) return -T.correction_F(y, y);
  if (x == y) return std::numeric_limits<double>::infinity();
  const Lake& L = T.lake();
  const double g = (L.depth(x) + L.depth(y)) * T.log_kernel(x, y);
  return t * (1 - t) * g - t * t * T.correction_F(x, x) - (1 - t) * (1 - t) * T.correction_F(y, y) +
         t * (1 - t) * (T.correction_F(x, y) + T.correction_F(y, x));
}

double LocalizationFunctional::operator()(Point x, Point y) const {
  const Lake& L = tables_->lake();
  if (!L.domain().contains(x) || !L.domain().contains(y)) throw LakeError("points must lie in the domain");
  return (*this)(L.nearest_cell(x), L.nearest_cell(y));
}

double localization_W(const LocalizationFunctional& loc, Point x, Point y) { return loc(x, y); }

namespace {

struct BlockResult {
  int a = -1;
  int b = -1;
  double value = std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
};

BlockResult search_block(const LocalizationFunctional& loc, const std::vector<int>& cells) {
  const KernelTables& T = loc.tables();
  const Lake& L = T.lake();
  const double t = loc.tau();
  const Eigen::MatrixXd F = T.correction_F_block(cells);
  BlockResult best;
  const auto k = static_cast<int>(cells.size());
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      double w;
      if (t == 1.0) {
        if (a != b) continue;
        w = -F(a, a);
      } else if (t == 0.0) {
        if (a != b) continue;
        w = -F(b, b);
      } else {
        if (a == b) continue;
        const double g = (L.depth(cells[a]) + L.depth(cells[b])) * T.log_kernel(cells[a], cells[b]);
        w = t * (1 - t) * g - t * t * F(a, a) - (1 - t) * (1 - t) * F(b, b) + t * (1 - t) * (F(a, b) + F(b, a));
      }
      best.lo = std::min(best.lo, w);
      best.hi = std::max(best.hi, w);
      if (w < best.value) {
        best.value = w;
        best.a = cells[a];
        best.b = cells[b];
      }
    }
  }
  return best;
}

}  // namespace

WMinimum minimize_W_over_maxdepth(const LocalizationFunctional& loc, double tolerance, std::size_t max_candidates) {
  const KernelTables& T = loc.tables();
  const Lake& L = T.lake();
  const double sup = L.max_depth();
  const double inf = L.min_depth();
  const double threshold = sup - tolerance * (sup - inf);
  WMinimum out;
  for (int c = 0; c < static_cast<int>(L.size()); ++c) {
    if (sup == inf || L.depth(c) >= threshold) out.candidates.push_back(c);
  }
  const double t = loc.tau();
  const bool pair = t > 0.0 && t < 1.0;
  if (pair && out.candidates.size() < 2) {
    out.degenerate = true;
    out.x = out.y = out.candidates.front();
    out.px = out.py = L.center(out.x);
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }

  std::vector<int> coarse = out.candidates;
  int stride = 1;
  if (coarse.size() > max_candidates) {
    stride = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(coarse.size()) / max_candidates)));
    while (true) {
      coarse.clear();
      for (int c : out.candidates) {
        const auto [i, j] = L.grid_index(c);
        if (i % stride == 0 && j % stride == 0) coarse.push_back(c);
      }
      if (coarse.size() <= max_candidates) break;
      ++stride;
    }
  }
  BlockResult best = search_block(loc, coarse);
  double lo = best.lo;
  double hi = best.hi;
  if (stride > 1) {
    // Refine exhaustively near the coarse optimum.
    const double radius = 1.5 * stride * L.h();
    std::vector<int> local;
    for (int c : out.candidates) {
      if (distance(L.center(c), L.center(best.a)) <= radius || distance(L.center(c), L.center(best.b)) <= radius) {
        local.push_back(c);
      }
    }
    const BlockResult fine = search_block(loc, local);
    lo = std::min(lo, fine.lo);
    hi = std::max(hi, fine.hi);
    if (fine.value < best.value) best = fine;
  }
  out.x = best.a;
  out.y = best.b;
  out.px = L.center(best.a);
  out.py = L.center(best.b);
  out.value = best.value;
  out.range = hi - lo;
  return out;
}

double disk_green(Point center, double radius, Point x, Point y) {
  const Point z = x - center;
  const Point w = y - center;
  // |R^2 - z conj(w)| / (R |z - w|)
  const double re = radius * radius - (z.x * w.x + z.y * w.y);
  const double im = -(z.y * w.x - z.x * w.y);
  return kInv2Pi * std::log(std::hypot(re, im) / (radius * distance(z, w)));
}

double annulus_green(Point center, double inner, double outer, Point x, Point y, int terms) {
  const Point z = x - center;
  const Point w = y - center;
  const double rz = norm(z);
  const double rw = norm(w);
  const double rs = std::min(rz, rw);
  const double rl = std::max(rz, rw);
  const double dtheta = std::atan2(z.y, z.x) - std::atan2(w.y, w.x);
  double g = -kInv2Pi * std::log(distance(z, w)) + kInv2Pi * std::log(rl) +
             kInv2Pi * std::log(rs / inner) * std::log(outer / rl) / std::log(outer / inner);
  for (int n = 1; n <= terms; ++n) {
    // Mode n minus its free-space part, each ratio below 1.
    const double a = std::pow(inner / outer, 2.0 * n);
    const double t1 = a * std::pow(rs / rl, n);
    const double t2 = std::pow(rs * rl / (outer * outer), n);
    const double t3 = std::pow(inner * inner / (rs * rl), n);
    const double t4 = a * std::pow(rl / rs, n);
    const double term = (t1 - t2 - t3 + t4) / (2.0 * std::numbers::pi * n * (1.0 - a));
    g += term * std::cos(n * dtheta);
    if (std::abs(term) < 1e-17) break;
  }
  return g;
}

}  // namespace lakevortex
