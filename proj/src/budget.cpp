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

#include "lakevortex/budget.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace lakevortex {

DistributionSpec DistributionSpec::step(std::vector<double> breaks, std::vector<double> values, double p) {
  if (breaks.empty() || breaks.size() != values.size()) {
    throw LakeError("distribution needs matching, nonempty breaks and values");
  }
  if (!(p > 1.0)) throw LakeError("distribution exponent p must exceed 1");
  double prev_break = 0.0;
  double prev_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    if (!(breaks[k] > prev_break)) throw LakeError("distribution breaks must be positive and increasing");
    if (!(values[k] > 0.0) || values[k] > prev_value) {
      throw LakeError("distribution values must be positive and nonincreasing");
    }
    prev_break = breaks[k];
    prev_value = values[k];
  }
  DistributionSpec spec;
  spec.breaks_ = std::move(breaks);
  spec.values_ = std::move(values);
  spec.p_ = p;
  if (std::abs(spec.integral() - 1.0) > 1e-12) throw LakeError("distribution must integrate to 1");
  return spec;
}

DistributionSpec DistributionSpec::closed_form(const std::function<double(double)>& d, double support, double p,
                                               int steps) {
  using boost::math::quadrature::gauss_kronrod;
  if (!(support > 0.0) || steps < 1) throw LakeError("closed-form distribution needs support > 0 and steps >= 1");
  const double total = gauss_kronrod<double, 61>::integrate(d, 0.0, support, 15, 1e-12);
  if (std::abs(total - 1.0) > 1e-6) throw LakeError("closed-form distribution must integrate to 1");
  const double moment =
      gauss_kronrod<double, 61>::integrate([&](double s) { return std::pow(s, p) * d(s); }, 0.0, support, 15, 1e-12);
  if (!std::isfinite(moment)) throw LakeError("closed-form distribution has an infinite p-th moment");

  const double width = support / steps;
  std::vector<double> breaks;
  std::vector<double> values;
  double running = std::numeric_limits<double>::infinity();
  for (int k = 0; k < steps; ++k) {
    const double avg = gauss_kronrod<double, 15>::integrate(d, k * width, (k + 1) * width) / width;
    running = std::min(running, avg);
    if (!(running > 0.0)) break;
    breaks.push_back((k + 1) * width);
    values.push_back(running);
  }
  if (breaks.empty()) throw LakeError("closed-form distribution vanishes");
  double mass = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < breaks.size(); ++k) {
    mass += values[k] * (breaks[k] - prev);
    prev = breaks[k];
  }
  for (double& b : breaks) b /= mass;
  DistributionSpec spec;
  spec.breaks_ = std::move(breaks);
  spec.values_ = std::move(values);
  spec.p_ = p;
  return spec;
}

double DistributionSpec::operator()(double s) const {
  if (s < 0.0) return values_.front();
  const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
  if (it == breaks_.end()) return 0.0;
  return values_[static_cast<std::size_t>(it - breaks_.begin())];
}

double DistributionSpec::integral() const {
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < breaks_.size(); ++k) {
    sum += values_[k] * (breaks_[k] - prev);
    prev = breaks_[k];
  }
  return sum;
}

double DistributionSpec::moment() const {
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < breaks_.size(); ++k) {
    sum += values_[k] * (std::pow(breaks_[k], p_ + 1.0) - std::pow(prev, p_ + 1.0)) / (p_ + 1.0);
    prev = breaks_[k];
  }
  return sum;
}

void VortexBudget::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw LakeError("epsilon must be positive");
  if (!(strength > 0.0) || !std::isfinite(strength)) throw LakeError("strength must be positive");
  if (!(tau >= 0.0 && tau <= 1.0)) throw LakeError("tau must lie in [0, 1]");
}

}  // namespace lakevortex
