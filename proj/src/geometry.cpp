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

#include "lakevortex/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <numeric>

namespace lakevortex {

namespace {

constexpr double kMinTheta = 1e-3;

double segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = len2 > 0.0 ? ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

bool point_in_polygon(Point p, const std::vector<Point>& v) {
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double x = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

// Root of f on [0, 1] given f(0) and f(1) of opposite "inside" status.
double crossing_fraction(const std::function<double(double)>& f, bool inside_at_zero_negative) {
  double lo = 0.0;
  double hi = 1.0;
  auto inside = [&](double t) {
    const double v = f(t);
    return inside_at_zero_negative ? v < 0.0 : v > 0.0;
  };
  if (inside(1.0)) return 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (inside(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::clamp(0.5 * (lo + hi), kMinTheta, 1.0);
}

// Monotone chain convex hull.
std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  if (pts.size() < 3) return pts;
  auto cross = [](Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

std::atomic<std::uint64_t> next_lake_id{1};

}  // namespace

Region make_disk(Point center, double radius) {
  if (!(radius > 0.0)) throw LakeError("disk radius must be positive");
  return {"disk", [center, radius](Point p) { return distance(p, center) - radius; },
          {center.x - radius, center.y - radius}, {center.x + radius, center.y + radius}};
}

Region make_rectangle(Point lo, Point hi) {
  if (!(hi.x > lo.x && hi.y > lo.y)) throw LakeError("rectangle must have positive extent");
  auto sdf = [lo, hi](Point p) {
    const Point c = 0.5 * (lo + hi);
    const Point half = 0.5 * (hi - lo);
    const double dx = std::abs(p.x - c.x) - half.x;
    const double dy = std::abs(p.y - c.y) - half.y;
    const double outside = std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
    return outside + std::min(std::max(dx, dy), 0.0);
  };
  return {"rectangle", sdf, lo, hi};
}

Region make_polygon(std::vector<Point> vertices) {
  if (vertices.size() < 3) throw LakeError("polygon needs at least three vertices");
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-lo.x, -lo.y};
  for (const Point& v : vertices) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  auto sdf = [v = std::move(vertices)](Point p) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) d = std::min(d, segment_distance(p, v[j], v[i]));
    return point_in_polygon(p, v) ? -d : d;
  };
  return {"polygon", sdf, lo, hi};
}

Domain Domain::disk(Point center, double radius) { return {make_disk(center, radius), {}}; }

Domain Domain::annulus(Point center, double inner_radius, double outer_radius) {
  if (!(inner_radius > 0.0 && inner_radius < outer_radius)) {
    throw LakeError("annulus requires 0 < inner_radius < outer_radius");
  }
  return {make_disk(center, outer_radius), {make_disk(center, inner_radius)}};
}

Domain Domain::rectangle(Point lo, Point hi) { return {make_rectangle(lo, hi), {}}; }

Domain Domain::polygon(std::vector<Point> vertices) { return {make_polygon(std::move(vertices)), {}}; }

bool Domain::contains(Point p) const {
  if (!(outer.sdf(p) < 0.0)) return false;
  return std::all_of(islands.begin(), islands.end(), [p](const Region& r) { return r.sdf(p) > 0.0; });
}

double Domain::boundary_distance(Point p) const {
  double d = std::abs(outer.sdf(p));
  for (const Region& r : islands) d = std::min(d, std::abs(r.sdf(p)));
  return d;
}

double Domain::filled_boundary_distance(Point p) const { return std::abs(outer.sdf(p)); }

DepthProfile DepthProfile::constant(double value) {
  return {"constant", [value](Point) { return value; }, 1.0};
}

DepthProfile DepthProfile::bump(Point center, double base, double amplitude, double width) {
  if (!(width > 0.0)) throw LakeError("bump width must be positive");
  return {"bump",
          [=](Point p) {
            const Point d = p - center;
            return base + amplitude * std::exp(-(d.x * d.x + d.y * d.y) / width);
          },
          1.0};
}

DepthProfile DepthProfile::two_bump(Point a, Point b, double base, double amplitude, double width) {
  if (!(width > 0.0)) throw LakeError("bump width must be positive");
  return {"two_bump",
          [=](Point p) {
            const Point da = p - a;
            const Point db = p - b;
            return base + amplitude * (std::exp(-(da.x * da.x + da.y * da.y) / width) +
                                       std::exp(-(db.x * db.x + db.y * db.y) / width));
          },
          1.0};
}

DepthProfile DepthProfile::exponential(double rate) {
  return {"exponential", [rate](Point p) { return std::exp(rate * p.x); }, 1.0};
}

DepthProfile DepthProfile::linear(double base, Point gradient) {
  return {"linear", [=](Point p) { return base + gradient.x * p.x + gradient.y * p.y; }, 1.0};
}

DepthProfile DepthProfile::table(Point lo, Point hi, int nx, int ny, std::vector<double> values) {
  if (nx < 2 || ny < 2 || values.size() != static_cast<std::size_t>(nx) * ny) {
    throw LakeError("depth table must be at least 2x2 and match its declared shape");
  }
  if (!(hi.x > lo.x && hi.y > lo.y)) throw LakeError("depth table extent must be positive");
  auto eval = [=, v = std::move(values)](Point p) {
    const double fx = std::clamp((p.x - lo.x) / (hi.x - lo.x), 0.0, 1.0) * (nx - 1);
    const double fy = std::clamp((p.y - lo.y) / (hi.y - lo.y), 0.0, 1.0) * (ny - 1);
    const int i = std::min(static_cast<int>(fx), nx - 2);
    const int j = std::min(static_cast<int>(fy), ny - 2);
    const double s = fx - i;
    const double t = fy - j;
    auto at = [&](int a, int b) { return v[static_cast<std::size_t>(b) * nx + a]; };
    return (1 - s) * (1 - t) * at(i, j) + s * (1 - t) * at(i + 1, j) + (1 - s) * t * at(i, j + 1) +
           s * t * at(i + 1, j + 1);
  };
  return {"table", eval, 1.0};
}

DepthProfile DepthProfile::power_distance(const Domain& domain, double alpha, double scale) {
  if (!(alpha > 0.0 && scale > 0.0)) throw LakeError("power_distance needs alpha > 0 and scale > 0");
  return {"power_distance",
          [domain, alpha, scale](Point p) {
            if (!domain.contains(p)) return 0.0;
            return scale * std::pow(domain.boundary_distance(p), alpha);
          },
          std::min(alpha, 1.0)};
}

std::shared_ptr<const Lake> Lake::build(const LakeSpec& spec) {
  if (spec.nx < 2 || spec.ny < 2) throw LakeError("grid resolution nx, ny must be at least 2");
  if (!spec.domain.outer.sdf) throw LakeError("domain has no outer region");
  if (!spec.depth.eval) throw LakeError("depth profile missing");

  std::shared_ptr<Lake> lake(new Lake());
  lake->spec_ = spec;
  const Region& outer = spec.domain.outer;
  const double width = outer.hi.x - outer.lo.x;
  const double height = outer.hi.y - outer.lo.y;
  lake->nx_ = spec.nx;
  lake->ny_ = spec.ny;
  lake->h_ = std::max(width / spec.nx, height / spec.ny);
  const Point mid = 0.5 * (outer.lo + outer.hi);
  lake->origin_ = {mid.x - 0.5 * spec.nx * lake->h_, mid.y - 0.5 * spec.ny * lake->h_};

  const int nx = spec.nx;
  const int ny = spec.ny;
  const double h = lake->h_;
  auto grid_center = [&](int i, int j) {
    return Point{lake->origin_.x + (i + 0.5) * h, lake->origin_.y + (j + 0.5) * h};
  };

  // Classify every grid cell: -1 exterior, 0 active, k >= 1 island k.
  std::vector<int> state(static_cast<std::size_t>(nx) * ny, -1);
  const auto& islands = spec.domain.islands;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Point c = grid_center(i, j);
      if (!(outer.sdf(c) < 0.0)) continue;
      int s = 0;
      for (std::size_t k = 0; k < islands.size(); ++k) {
        if (islands[k].sdf(c) <= 0.0) {
          if (s != 0) throw LakeError("islands overlap");
          s = static_cast<int>(k) + 1;
        }
      }
      state[static_cast<std::size_t>(j) * nx + i] = s;
    }
  }
  auto state_at = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return -1;
    return state[static_cast<std::size_t>(j) * nx + i];
  };
  constexpr int di[4] = {1, -1, 0, 0};
  constexpr int dj[4] = {0, 0, 1, -1};

  // Islands: resolved, connected, and separated from the exterior.
  for (std::size_t k = 0; k < islands.size(); ++k) {
    const int label = static_cast<int>(k) + 1;
    std::vector<int> cells;
    for (std::size_t g = 0; g < state.size(); ++g) {
      if (state[g] == label) cells.push_back(static_cast<int>(g));
    }
    if (cells.empty()) throw LakeError("island " + std::to_string(label) + " is not resolved by the grid");
    std::vector<char> seen(state.size(), 0);
    std::deque<int> queue{cells.front()};
    seen[cells.front()] = 1;
    std::size_t reached = 0;
    while (!queue.empty()) {
      const int g = queue.front();
      queue.pop_front();
      ++reached;
      const int i = g % nx;
      const int j = g / nx;
      for (int d = 0; d < 4; ++d) {
        const int s = state_at(i + di[d], j + dj[d]);
        if (s == -1) throw LakeError("island " + std::to_string(label) + " touches the outer boundary");
        if (s != label) continue;
        const int ng = (j + dj[d]) * nx + i + di[d];
        if (!seen[ng]) {
          seen[ng] = 1;
          queue.push_back(ng);
        }
      }
    }
    if (reached != cells.size()) throw LakeError("island " + std::to_string(label) + " is not connected");
  }

  lake->grid_to_cell_.assign(state.size(), kNoCell);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t g = static_cast<std::size_t>(j) * nx + i;
      if (state[g] != 0) continue;
      lake->grid_to_cell_[g] = static_cast<int>(lake->centers_.size());
      lake->cell_to_grid_.push_back(static_cast<int>(g));
      lake->centers_.push_back(grid_center(i, j));
    }
  }
  const std::size_t n = lake->centers_.size();
  if (n == 0) throw LakeError("domain contains no active cells at this resolution");

  // Connectivity of the active set.
  {
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    std::size_t reached = 0;
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      ++reached;
      const int g = lake->cell_to_grid_[c];
      const int i = g % nx;
      const int j = g / nx;
      for (int d = 0; d < 4; ++d) {
        if (state_at(i + di[d], j + dj[d]) != 0) continue;
        const int nc = lake->grid_to_cell_[(j + dj[d]) * nx + i + di[d]];
        if (!seen[nc]) {
          seen[nc] = 1;
          queue.push_back(nc);
        }
      }
    }
    if (reached != n) throw LakeError("domain is not connected at this resolution");
  }

  lake->depth_.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    const double b = spec.depth.eval(lake->centers_[c]);
    if (!(b > 0.0) || !std::isfinite(b)) throw LakeError("depth must be strictly positive on the domain");
    lake->depth_[c] = b;
  }
  lake->min_depth_ = *std::min_element(lake->depth_.begin(), lake->depth_.end());
  lake->max_depth_ = *std::max_element(lake->depth_.begin(), lake->depth_.end());
  lake->total_mass_ = std::accumulate(lake->depth_.begin(), lake->depth_.end(), 0.0) * h * h;

  lake->neighbors_.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    const int g = lake->cell_to_grid_[c];
    const int i = g % nx;
    const int j = g / nx;
    const Point p = lake->centers_[c];
    for (int d = 0; d < 4; ++d) {
      const int s = state_at(i + di[d], j + dj[d]);
      if (s == 0) {
        lake->neighbors_[c][d] = lake->grid_to_cell_[(j + dj[d]) * nx + i + di[d]];
        continue;
      }
      const Point q = grid_center(i + di[d], j + dj[d]);
      BoundaryFace face;
      face.cell = static_cast<int>(c);
      if (s > 0) {
        const Region& r = islands[s - 1];
        face.label = s;
        face.theta = crossing_fraction([&](double t) { return r.sdf(p + t * (q - p)); }, false);
      } else {
        face.label = 0;
        face.theta = crossing_fraction([&](double t) { return outer.sdf(p + t * (q - p)); }, true);
      }
      face.point = p + face.theta * (q - p);
      face.depth = std::max(spec.depth.eval(face.point), 0.0);
      lake->neighbors_[c][d] = -static_cast<int>(lake->faces_.size()) - 1;
      lake->faces_.push_back(face);
    }
  }

  const int components = static_cast<int>(islands.size()) + 1;
  if (spec.circulations.empty()) {
    lake->circulations_.assign(components, 0.0);
    lake->circulations_[0] = 1.0;
  } else {
    if (static_cast<int>(spec.circulations.size()) != components) {
      throw LakeError("circulations must list one value per boundary component");
    }
    const double sum = std::accumulate(spec.circulations.begin(), spec.circulations.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-12) throw LakeError("circulations must sum to 1");
    lake->circulations_ = spec.circulations;
  }

  const std::vector<Point> hull = convex_hull(lake->centers_);
  double diam = 0.0;
  for (std::size_t a = 0; a < hull.size(); ++a) {
    for (std::size_t b = a + 1; b < hull.size(); ++b) diam = std::max(diam, distance(hull[a], hull[b]));
  }
  lake->diam_ = diam > 0.0 ? diam : h;
  lake->id_ = next_lake_id.fetch_add(1);
  return lake;
}

std::pair<int, int> Lake::grid_index(int cell) const {
  const int g = cell_to_grid_[cell];
  return {g % nx_, g / nx_};
}

std::optional<double> Lake::uniform_cell_mass() const {
  if (max_depth_ - min_depth_ > 1e-14 * max_depth_) return std::nullopt;
  return max_depth_ * h_ * h_;
}

std::optional<int> Lake::cell_at(Point p) const {
  const int i = static_cast<int>(std::floor((p.x - origin_.x) / h_));
  const int j = static_cast<int>(std::floor((p.y - origin_.y) / h_));
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return std::nullopt;
  const int c = grid_to_cell_[static_cast<std::size_t>(j) * nx_ + i];
  if (c == kNoCell) return std::nullopt;
  return c;
}

int Lake::nearest_cell(Point p) const {
  if (auto c = cell_at(p)) return *c;
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers_.size(); ++c) {
    const double d = distance(p, centers_[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

double Lake::boundary_distance(int cell) const { return spec_.domain.boundary_distance(centers_[cell]); }

double Lake::filled_boundary_distance(int cell) const {
  return spec_.domain.filled_boundary_distance(centers_[cell]);
}

bool Lake::touches_boundary(int cell) const {
  const auto& nb = neighbors_[cell];
  return std::any_of(nb.begin(), nb.end(), [](int v) { return v < 0; });
}

ScalarField::ScalarField(LakePtr lake, std::vector<double> values) : lake_(std::move(lake)), values_(std::move(values)) {
  if (!lake_) throw LakeError("field requires a lake");
  if (values_.size() != lake_->size()) throw LakeError("field size does not match the lake's active cells");
}

ScalarField ScalarField::zeros(LakePtr lake) {
  const std::size_t n = lake->size();
  return ScalarField(std::move(lake), std::vector<double>(n, 0.0));
}

ScalarField ScalarField::from_function(LakePtr lake, const std::function<double(Point)>& f) {
  std::vector<double> v(lake->size());
  for (std::size_t c = 0; c < v.size(); ++c) v[c] = f(lake->center(static_cast<int>(c)));
  return ScalarField(std::move(lake), std::move(v));
}

void require_same_lake(const ScalarField& a, const ScalarField& b) {
  if (!a.same_lake(b)) throw LakeError("fields belong to different lakes");
}

double integrate(const ScalarField& f) {
  const Lake& lake = f.lake();
  double s = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) s += f[c] * lake.depth(static_cast<int>(c));
  return s * lake.h() * lake.h();
}

double l1_distance(const ScalarField& a, const ScalarField& b) {
  require_same_lake(a, b);
  const Lake& lake = a.lake();
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) s += std::abs(a[c] - b[c]) * lake.depth(static_cast<int>(c));
  return s * lake.h() * lake.h();
}

double mu_measure(const Lake& lake, std::span<const int> cells) {
  double s = 0.0;
  for (int c : cells) s += lake.depth(c);
  return s * lake.h() * lake.h();
}

std::vector<int> cells_by_distance(const Lake& lake, Point center) {
  std::vector<double> d2(lake.size());
  for (std::size_t c = 0; c < d2.size(); ++c) {
    const Point v = lake.center(static_cast<int>(c)) - center;
    d2[c] = v.x * v.x + v.y * v.y;
  }
  std::vector<int> order(lake.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d2[a] < d2[b] || (d2[a] == d2[b] && a < b); });
  return order;
}

MuBall mu_ball(const Lake& lake, Point center, double target_mass) {
  if (!lake.domain().contains(center)) throw LakeError("ball center lies outside the domain");
  if (target_mass < 0.0 || target_mass > lake.total_mass() * (1.0 + 1e-12)) {
    throw LakeError("target mass must lie in [0, mu(domain)]");
  }
  MuBall ball;
  const std::vector<int> order = cells_by_distance(lake, center);
  const double tol = 1e-12 * lake.total_mass();
  for (int c : order) {
    const double m = lake.mass(c);
    if (ball.mass + m > target_mass + tol) break;
    ball.mass += m;
    ball.cells.push_back(c);
    ball.radius = distance(lake.center(c), center);
  }
  ball.deficit = std::max(target_mass - ball.mass, 0.0);
  return ball;
}

}  // namespace lakevortex
