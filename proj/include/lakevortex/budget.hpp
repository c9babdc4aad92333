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

#ifndef LAKEVORTEX_BUDGET_HPP_
#define LAKEVORTEX_BUDGET_HPP_

#include <functional>
#include <optional>
#include <vector>

#include "lakevortex/geometry.hpp"

namespace lakevortex {

/// Nonincreasing step function D on [0, inf) with unit integral.
/// D = values[k] on [breaks[k-1], breaks[k]), with breaks[-1] = 0 and D = 0
/// past breaks.back().
class DistributionSpec {
 public:
  static DistributionSpec step(std::vector<double> breaks, std::vector<double> values, double p = 2.0);
  /// Samples a closed-form D on [0, support] into `steps` cells after
  /// checking its integral (within 1e-6) and p-th moment by quadrature.
  static DistributionSpec closed_form(const std::function<double(double)>& d, double support, double p,
                                      int steps = 64);

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }
  double p() const { return p_; }
  double delta() const { return values_.front(); }
  double operator()(double s) const;
  double integral() const;
  /// Integral of s^p D(s).
  double moment() const;

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
  double p_ = 2.0;
};

/// The triple (epsilon, strength, tau) with an optional target distribution.
struct VortexBudget {
  double epsilon = 0.1;
  double strength = 1.0;
  double tau = 1.0;
  std::optional<DistributionSpec> distribution;

  void validate() const;
  double positive_strength() const { return tau * strength; }
  double negative_strength() const { return (1.0 - tau) * strength; }
  /// Net circulation (2 tau - 1) S.
  double net_circulation() const { return (2.0 * tau - 1.0) * strength; }
};

}  // namespace lakevortex

#endif  // LAKEVORTEX_BUDGET_HPP_
