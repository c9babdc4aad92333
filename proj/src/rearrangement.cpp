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

#include "lakevortex/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lakevortex {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_nonnegative(const ScalarField& f) {
  for (double v : f.values()) {
    if (v < 0.0) throw LakeError("field must be nonnegative");
  }
}

// Walks a mass-coordinate profile with nondecreasing query intervals.
class ProfileWalker {
 public:
  explicit ProfileWalker(const PartProfile& p) : p_(p) {}

  // Mean of the profile over [a, a + m]. Overlaps below 1e-12 m are dropped
  // so that a cell covered by one segment gets that segment's value exactly.
  double average(double a, double m) {
    const double b = a + m;
    const double snap = 1e-12 * m;
    while (k_ < p_.ends.size() && p_.ends[k_] <= a + snap) ++k_;
    double sum = 0.0;
    double covered = 0.0;
    int pieces = 0;
    double single = 0.0;
    for (std::size_t j = k_; j < p_.ends.size(); ++j) {
      const double start = j == 0 ? 0.0 : p_.ends[j - 1];
      if (start >= b - snap) break;
      const double overlap = std::min(p_.ends[j], b) - std::max(start, a);
      if (overlap <= snap) continue;
      sum += overlap * p_.values[j];
      covered += overlap;
      single = p_.values[j];
      ++pieces;
    }
    if (pieces == 0) return 0.0;
    if (pieces == 1 && covered >= m - snap) return single;
    return sum / m;
  }

 private:
  const PartProfile& p_;
  std::size_t k_ = 0;
};

// Places the profile along `order`, skipping cells where `out` is already
// nonzero. Returns the cells that received a nonzero value.
std::vector<int> place(const Lake& lake, const std::vector<int>& order, const PartProfile& profile, double sign,
                       std::vector<double>& out) {
  std::vector<int> used;
  if (profile.ends.empty()) return used;
  ProfileWalker walker(profile);
  const double total = profile.total();
  const auto uniform = lake.uniform_cell_mass();
  double a = 0.0;
  std::size_t count = 0;
  for (int c : order) {
    if (out[c] != 0.0) continue;
    const double m = lake.mass(c);
    const double start = uniform ? static_cast<double>(count) * *uniform : a;
    if (start >= total - 1e-12 * m) break;
    const double v = walker.average(start, m);
    if (v != 0.0) {
      out[c] = sign * v;
      used.push_back(c);
    }
    a += m;
    ++count;
  }
  return used;
}

}  // namespace

double DistributionCurve::operator()(double t) const {
  if (levels.empty()) return 0.0;
  if (t < levels.front()) return masses.front();
  const auto it = std::upper_bound(levels.begin(), levels.end(), t);
  return masses[static_cast<std::size_t>(it - levels.begin()) - 1];
}

DistributionCurve distribution(const Lake& lake, const ScalarField& f) {
  if (&f.lake() != &lake) throw LakeError("field belongs to a different lake");
  return distribution(f);
}

DistributionCurve distribution(const ScalarField& f) {
  require_nonnegative(f);
  const Lake& lake = f.lake();
  std::vector<int> cells;
  for (std::size_t c = 0; c < f.size(); ++c) {
    if (f[c] > 0.0) cells.push_back(static_cast<int>(c));
  }
  std::sort(cells.begin(), cells.end(), [&](int a, int b) { return f[a] > f[b] || (f[a] == f[b] && a < b); });
  // Descending sweep: mass above each distinct value.
  std::vector<double> desc_levels;
  std::vector<double> desc_masses;
  double mass = 0.0;
  for (std::size_t k = 0; k < cells.size();) {
    const double v = f[cells[k]];
    desc_levels.push_back(v);
    desc_masses.push_back(mass);
    while (k < cells.size() && f[cells[k]] == v) mass += lake.mass(cells[k++]);
  }
  DistributionCurve curve;
  curve.levels.push_back(0.0);
  curve.masses.push_back(mass);
  for (std::size_t k = desc_levels.size(); k-- > 0;) {
    curve.levels.push_back(desc_levels[k]);
    curve.masses.push_back(desc_masses[k]);
  }
  if (curve.levels.size() == 1) curve.masses.front() = 0.0;
  return curve;
}

ScalarField symmetrize_around(const Lake& lake, Point x, const ScalarField& f) {
  if (&f.lake() != &lake) throw LakeError("field belongs to a different lake");
  require_nonnegative(f);
  if (!lake.domain().contains(x)) throw LakeError("symmetrization center lies outside the domain");
  const std::size_t n = lake.size();
  const double h2 = lake.h() * lake.h();

  std::vector<long long> key(n);
  for (std::size_t c = 0; c < n; ++c) {
    const Point d = lake.center(static_cast<int>(c)) - x;
    key[c] = std::llround((d.x * d.x + d.y * d.y) / h2 * 1e6);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (key[a] != key[b]) return key[a] < key[b];
    if (f[a] != f[b]) return f[a] > f[b];
    return a < b;
  });

  std::vector<int> by_value(n);
  std::iota(by_value.begin(), by_value.end(), 0);
  std::sort(by_value.begin(), by_value.end(), [&](int a, int b) { return f[a] > f[b] || (f[a] == f[b] && a < b); });
  PartProfile profile;
  double end = 0.0;
  for (int c : by_value) {
    if (!(f[c] > 0.0)) break;
    end += lake.mass(c);
    if (!profile.values.empty() && profile.values.back() == f[c]) {
      profile.ends.back() = end;
    } else {
      profile.ends.push_back(end);
      profile.values.push_back(f[c]);
    }
  }
  std::vector<double> out(n, 0.0);
  ProfileWalker walker(profile);
  double a = 0.0;
  for (int c : order) {
    const double m = lake.mass(c);
    if (a >= profile.total()) break;
    out[c] = walker.average(a, m);
    a += m;
  }
  return ScalarField(f.lake_ptr(), std::move(out));
}

PartProfile target_profile(const Lake& lake, const VortexBudget& budget, BathtubMode mode, int sign) {
  const double part_strength = sign > 0 ? budget.positive_strength() : budget.negative_strength();
  PartProfile profile;
  if (!(part_strength > 0.0)) return profile;
  const double eps2 = budget.epsilon * budget.epsilon;
  if (mode == BathtubMode::kPatch) {
    double mass = (sign > 0 ? budget.tau : 1.0 - budget.tau) * eps2;
    if (const auto m = lake.uniform_cell_mass()) {
      const double cells = std::max(1.0, std::floor(mass / *m + 1e-9));
      mass = cells * *m;
    }
    profile.ends.push_back(mass);
    profile.values.push_back(part_strength / mass);
    return profile;
  }
  if (!budget.distribution) throw LakeError("distribution mode requires a distribution in the budget");
  const DistributionSpec& d = *budget.distribution;
  const auto& s = d.breaks();
  const auto& v = d.values();
  const double delta = d.delta();
  double end = 0.0;
  for (std::size_t k = s.size(); k-- > 0;) {
    const double next = k + 1 < v.size() ? v[k + 1] : 0.0;
    const double shell = eps2 / delta * (v[k] - next);
    if (!(shell > 0.0)) continue;
    end += shell;
    profile.ends.push_back(end);
    profile.values.push_back(delta * part_strength * s[k] / eps2);
  }
  return profile;
}

BathtubResult bathtub_maximize(const Lake& lake, const ScalarField& weight, const VortexBudget& budget,
                               BathtubMode mode) {
  if (&weight.lake() != &lake) throw LakeError("weight belongs to a different lake");
  budget.validate();
  const PartProfile pos = target_profile(lake, budget, mode, +1);
  const PartProfile neg = target_profile(lake, budget, mode, -1);
  const double available = lake.total_mass() * (1.0 + 1e-12);
  if (pos.total() > available || neg.total() > available) throw LakeError("vortex area budget exceeds mu(domain)");
  if (pos.total() + neg.total() > available) throw LakeError("positive and negative supports would overlap");

  const std::size_t n = lake.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return weight[a] > weight[b] || (weight[a] == weight[b] && a < b); });
  std::vector<double> out(n, 0.0);
  BathtubResult result;
  result.positive_cells = place(lake, order, pos, +1.0, out);
  std::reverse(order.begin(), order.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return weight[a] < weight[b] || (weight[a] == weight[b] && a < b); });
  result.negative_cells = place(lake, order, neg, -1.0, out);

  result.gamma_plus = kNaN;
  result.gamma_minus = kNaN;
  for (int c : result.positive_cells) {
    result.positive_mass += lake.mass(c);
    result.gamma_plus = std::isnan(result.gamma_plus) ? weight[c] : std::min(result.gamma_plus, weight[c]);
  }
  for (int c : result.negative_cells) {
    result.negative_mass += lake.mass(c);
    result.gamma_minus = std::isnan(result.gamma_minus) ? weight[c] : std::max(result.gamma_minus, weight[c]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (out[c] != 0.0) continue;
    if (weight[c] == result.gamma_plus || weight[c] == result.gamma_minus) result.degenerate = true;
  }
  result.zeta = ScalarField(weight.lake_ptr(), std::move(out));
  return result;
}

double RescaledField::integral() const {
  double s = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) s += values[k] * weights[k];
  return s;
}

double RescaledField::lp_norm(double p) const {
  double s = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) s += std::pow(std::abs(values[k]), p) * weights[k];
  return std::pow(s, 1.0 / p);
}

RescaledField scale_field(const Lake& lake, const ScalarField& f, double epsilon, double strength, Point center) {
  if (&f.lake() != &lake) throw LakeError("field belongs to a different lake");
  if (!(strength > 0.0)) throw LakeError("cannot rescale a field of zero strength");
  if (!(epsilon > 0.0)) throw LakeError("epsilon must be positive");
  RescaledField r;
  r.epsilon = epsilon;
  r.strength = strength;
  r.center = center;
  const double eps2 = epsilon * epsilon;
  const double w = lake.h() * lake.h() / eps2;
  for (std::size_t c = 0; c < f.size(); ++c) {
    if (f[c] == 0.0) continue;
    const int cell = static_cast<int>(c);
    r.cells.push_back(cell);
    r.points.push_back((1.0 / epsilon) * (lake.center(cell) - center));
    r.values.push_back(eps2 * f[c] / strength);
    r.weights.push_back(lake.depth(cell) * w);
  }
  return r;
}

ScalarField unscale_field(LakePtr lake, const RescaledField& r) {
  std::vector<double> v(lake->size(), 0.0);
  const double factor = r.strength / (r.epsilon * r.epsilon);
  for (std::size_t k = 0; k < r.cells.size(); ++k) {
    if (r.cells[k] < 0 || static_cast<std::size_t>(r.cells[k]) >= v.size()) {
      throw LakeError("rescaled field does not belong to this lake");
    }
    v[r.cells[k]] = factor * r.values[k];
  }
  return ScalarField(std::move(lake), std::move(v));
}

ConvergenceReport converges_in_measure(const std::vector<ScalarField>& seq, const ScalarField& limit,
                                       const ConvergenceThresholds& thresholds) {
  require_nonnegative(limit);
  const Lake& lake = limit.lake();
  ConvergenceReport report;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double v : limit.values()) {
    if (v > 0.0) lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const int k = std::max(thresholds.levels, 1);
  if (hi > 0.0) {
    for (int i = 0; i < k; ++i) {
      const double s = (i + 0.5) / k;
      report.levels.push_back(hi > lo ? lo * std::pow(hi / lo, s) : hi * s);
    }
  }
  for (const ScalarField& f : seq) {
    require_same_lake(f, limit);
    require_nonnegative(f);
    std::vector<double> curve;
    std::vector<double> sym;
    for (double t : report.levels) {
      double mf = 0.0;
      double ml = 0.0;
      double md = 0.0;
      for (std::size_t c = 0; c < f.size(); ++c) {
        const double m = lake.mass(static_cast<int>(c));
        const bool a = f[c] > t;
        const bool b = limit[c] > t;
        if (a) mf += m;
        if (b) ml += m;
        if (a != b) md += m;
      }
      curve.push_back(std::abs(mf - ml));
      sym.push_back(md);
    }
    report.curve_error.push_back(curve.empty() ? 0.0 : *std::max_element(curve.begin(), curve.end()));
    report.symdiff.push_back(sym.empty() ? 0.0 : *std::max_element(sym.begin(), sym.end()));
    report.curve_trace.push_back(std::move(curve));
    report.symdiff_trace.push_back(std::move(sym));
  }
  report.converges = !seq.empty() && report.curve_error.back() <= thresholds.curve_tol &&
                     report.symdiff.back() <= thresholds.symdiff_tol;
  return report;
}

double radial_deviation(const Lake& lake, const ScalarField& f, Point center) {
  const ScalarField s = symmetrize_around(lake, center, f);
  double norm = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) norm += std::abs(f[c]) * lake.mass(static_cast<int>(c));
  if (!(norm > 0.0)) throw LakeError("radial deviation of a zero field");
  return l1_distance(f, s) / norm;
}

double log_interaction_energy(const Lake& lake, const ScalarField& f) {
  if (&f.lake() != &lake) throw LakeError("field belongs to a different lake");
  std::vector<int> support;
  for (std::size_t c = 0; c < f.size(); ++c) {
    if (f[c] != 0.0) support.push_back(static_cast<int>(c));
  }
  const double self = std::log(1.0 / lake.h()) - kSquarePairLogMean;
  double e = 0.0;
  for (std::size_t a = 0; a < support.size(); ++a) {
    const int x = support[a];
    const double fx = f[x] * lake.mass(x);
    e += fx * fx * self;
    double row = 0.0;
    for (std::size_t b = a + 1; b < support.size(); ++b) {
      const int y = support[b];
      row -= std::log(distance(lake.center(x), lake.center(y))) * f[y] * lake.mass(y);
    }
    e += 2.0 * fx * row;
  }
  return e;
}

}  // namespace lakevortex
