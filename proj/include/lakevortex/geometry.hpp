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

#ifndef LAKEVORTEX_GEOMETRY_HPP_
#define LAKEVORTEX_GEOMETRY_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lakevortex {

/// Raised for invalid lakes, mismatched fields and violated preconditions.
class LakeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

/// A planar region given by a signed distance function (negative inside).
struct Region {
  std::string kind;
  std::function<double(Point)> sdf;
  Point lo;
  Point hi;
};

Region make_disk(Point center, double radius);
Region make_rectangle(Point lo, Point hi);
Region make_polygon(std::vector<Point> vertices);

/// Outer region with islands removed. Islands are the compact sets C_1..C_m.
struct Domain {
  Region outer;
  std::vector<Region> islands;

  static Domain disk(Point center, double radius);
  static Domain annulus(Point center, double inner_radius, double outer_radius);
  static Domain rectangle(Point lo, Point hi);
  static Domain polygon(std::vector<Point> vertices);

  bool contains(Point p) const;
  /// d(p, boundary of the domain), islands included.
  double boundary_distance(Point p) const;
  /// d(p, boundary of the domain with islands filled in).
  double filled_boundary_distance(Point p) const;
};

/// Closed-form depth b, sampled once per cell when the lake is built.
struct DepthProfile {
  std::string kind;
  std::function<double(Point)> eval;
  /// Hölder exponent of b, used by repulsion diagnostics.
  double holder_exponent = 1.0;

  static DepthProfile constant(double value);
  /// base + amplitude * exp(-|x - center|^2 / width)
  static DepthProfile bump(Point center, double base, double amplitude, double width);
  static DepthProfile two_bump(Point a, Point b, double base, double amplitude, double width);
  /// exp(rate * x)
  static DepthProfile exponential(double rate);
  /// base + gradient . x
  static DepthProfile linear(double base, Point gradient);
  /// Bilinear interpolation of a row-major (ny rows of nx values) table over [lo, hi].
  static DepthProfile table(Point lo, Point hi, int nx, int ny, std::vector<double> values);
  /// scale * d(x, boundary)^alpha, vanishing on the boundary.
  static DepthProfile power_distance(const Domain& domain, double alpha, double scale);
};

struct LakeSpec {
  Domain domain;
  DepthProfile depth;
  int nx = 64;
  int ny = 64;
  /// c_0..c_m; empty means all circulation on the outer boundary.
  std::vector<double> circulations;
};

/// Face between an active cell and the boundary. theta is the fraction of
/// the center-to-center distance at which the boundary is crossed.
struct BoundaryFace {
  int cell = 0;
  int label = 0;
  double theta = 1.0;
  double depth = 1.0;
  Point point;
};

/// Masked uniform grid over the domain with the weighted measure mu = b dx.
class Lake {
 public:
  static std::shared_ptr<const Lake> build(const LakeSpec& spec);

  static constexpr int kNoCell = -1;
  /// Neighbor slots in order +x, -x, +y, -y. Non-negative entries are
  /// active cells, negative entries encode boundary face -(entry + 1).
  using Neighbors = std::array<int, 4>;

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }
  Point origin() const { return origin_; }
  std::size_t size() const { return centers_.size(); }
  int num_components() const { return static_cast<int>(circulations_.size()); }
  int num_islands() const { return num_components() - 1; }

  Point center(int cell) const { return centers_[cell]; }
  double depth(int cell) const { return depth_[cell]; }
  double mass(int cell) const { return depth_[cell] * h_ * h_; }
  std::span<const double> depths() const { return depth_; }
  std::span<const Point> centers() const { return centers_; }
  const Neighbors& neighbors(int cell) const { return neighbors_[cell]; }
  std::span<const BoundaryFace> boundary_faces() const { return faces_; }
  std::pair<int, int> grid_index(int cell) const;

  std::span<const double> circulations() const { return circulations_; }
  double diam() const { return diam_; }
  double min_depth() const { return min_depth_; }
  double max_depth() const { return max_depth_; }
  double total_mass() const { return total_mass_; }
  /// Common cell mass when b is constant on active cells.
  std::optional<double> uniform_cell_mass() const;

  const Domain& domain() const { return spec_.domain; }
  const DepthProfile& depth_profile() const { return spec_.depth; }
  const LakeSpec& spec() const { return spec_; }
  std::uint64_t id() const { return id_; }

  std::optional<int> cell_at(Point p) const;
  int nearest_cell(Point p) const;
  double boundary_distance(int cell) const;
  double filled_boundary_distance(int cell) const;
  /// True when the cell shares a face with the boundary.
  bool touches_boundary(int cell) const;

 private:
  Lake() = default;

  LakeSpec spec_;
  int nx_ = 0;
  int ny_ = 0;
  double h_ = 0.0;
  Point origin_;
  std::vector<int> grid_to_cell_;
  std::vector<int> cell_to_grid_;
  std::vector<Point> centers_;
  std::vector<double> depth_;
  std::vector<Neighbors> neighbors_;
  std::vector<BoundaryFace> faces_;
  std::vector<double> circulations_;
  double diam_ = 0.0;
  double min_depth_ = 0.0;
  double max_depth_ = 0.0;
  double total_mass_ = 0.0;
  std::uint64_t id_ = 0;
};

using LakePtr = std::shared_ptr<const Lake>;

/// Real values on the active cells of one lake.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(LakePtr lake, std::vector<double> values);
  static ScalarField zeros(LakePtr lake);
  static ScalarField from_function(LakePtr lake, const std::function<double(Point)>& f);

  const Lake& lake() const { return *lake_; }
  const LakePtr& lake_ptr() const { return lake_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  bool same_lake(const ScalarField& other) const { return lake_ == other.lake_; }

 private:
  LakePtr lake_;
  std::vector<double> values_;
};

void require_same_lake(const ScalarField& a, const ScalarField& b);

/// Integral of f against mu.
double integrate(const ScalarField& f);
/// L1(mu) norm of a - b.
double l1_distance(const ScalarField& a, const ScalarField& b);
/// Sum of b h^2 over the given cells.
double mu_measure(const Lake& lake, std::span<const int> cells);

/// Active cells sorted by distance to center, ties broken by cell index.
std::vector<int> cells_by_distance(const Lake& lake, Point center);

struct MuBall {
  std::vector<int> cells;
  double radius = 0.0;
  double mass = 0.0;
  double deficit = 0.0;
};

/// Largest distance-sorted prefix of cells around center with mass <= target.
MuBall mu_ball(const Lake& lake, Point center, double target_mass);

}  // namespace lakevortex

#endif  // LAKEVORTEX_GEOMETRY_HPP_
