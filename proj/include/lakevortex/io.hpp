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

#ifndef LAKEVORTEX_IO_HPP_
#define LAKEVORTEX_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lakevortex/asymptotics.hpp"
#include "lakevortex/maximizer.hpp"

namespace lakevortex::io {

inline constexpr int kSchemaVersion = 1;

/// Malformed or inconsistent configuration. key() is the dotted path of the
/// offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// S_eps = value * eps^exponent.
struct StrengthRule {
  double value = 1.0;
  double exponent = 0.0;
  double at(double epsilon) const;
};

struct OutputConfig {
  std::filesystem::path directory = "out";
  bool fields = true;
};

struct ValidationConfig {
  int pairs = 200;
  std::uint64_t seed = 1;
  double slack_cells = 3.0;
  double min_boundary_cells = 4.0;
  /// Relative tolerance against closed forms on disks and annuli.
  double closed_form_tolerance = 0.03;
  std::optional<double> diam_override;
};

struct RunConfig {
  /// The document as read; embedded in reports.
  nlohmann::json document;
  std::filesystem::path base_directory;

  LakeSpec lake;
  std::vector<double> epsilons;
  StrengthRule strength;
  double tau = 1.0;
  std::optional<DistributionSpec> distribution;
  SolveConfig solver;
  SweepOptions sweep;
  DiagnoseOptions diagnostics;
  /// diagnostics.kappa was given explicitly.
  bool kappa_configured = false;
  /// Hoelder exponent for the repulsion check; defaults to the depth's.
  double holder_alpha = 1.0;
  OutputConfig output;
  ValidationConfig validation;

  std::vector<VortexBudget> budgets() const;
  /// output.directory resolved against the config file's directory.
  std::filesystem::path output_directory() const;
};

RunConfig parse_config(const nlohmann::json& document, const std::filesystem::path& base_directory = {});
RunConfig load_config(const std::filesystem::path& path);

/// 17 significant digits; non-finite values become "null".
std::string format_number(double value);
/// Deterministic JSON text with numbers from format_number.
std::string dump_json(const nlohmann::json& value, int indent = 2);
void write_text(const std::filesystem::path& path, const std::string& text);

void write_field_csv(const std::filesystem::path& path, const ScalarField& field);
void write_curve_csv(const std::filesystem::path& path, const DistributionCurve& curve);

nlohmann::json bundle_json(const AsymptoticsBundle& bundle);
nlohmann::json fit_json(const ScalingFit& fit);
nlohmann::json report_json(const RunConfig& config, const SolveReport& report,
                           const std::optional<AsymptoticsBundle>& bundle);

/// One row per member. W_gap and containment cells are left empty when
/// absent or not requested.
void write_sweep_csv(const std::filesystem::path& path, const std::vector<AsymptoticsBundle>& bundles,
                     const std::vector<std::optional<double>>& w_gaps, bool containment);

struct LoadedReport {
  RunConfig config;
  VortexBudget budget;
  std::vector<double> energy_trace;
  bool converged = false;
  /// Sparse zeta as (cell, value) pairs.
  std::vector<std::pair<int, double>> zeta;
};

LoadedReport read_report(const std::filesystem::path& path);

}  // namespace lakevortex::io

#endif  // LAKEVORTEX_IO_HPP_
