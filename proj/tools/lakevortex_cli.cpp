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

// lakevortex: solve, sweep, diagnose and validate-kernel front end.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lakevortex/asymptotics.hpp"
#include "lakevortex/io.hpp"

namespace fs = std::filesystem;
namespace lio = lakevortex::io;
using namespace lakevortex;

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericalFailure = 2;

struct Workspace {
  LakePtr lake;
  OperatorPtr op;
  std::shared_ptr<const HarmonicBasis> basis;
  std::unique_ptr<KernelTables> tables;
};

Workspace build_workspace(const lio::RunConfig& config, std::optional<double> diam_override = std::nullopt) {
  Workspace w;
  try {
    w.lake = Lake::build(config.lake);
  } catch (const LakeError& e) {
    throw lio::ConfigError("lake", e.what());
  }
  w.op = EllipticOperator::assemble(w.lake);
  w.basis = std::make_shared<const HarmonicBasis>(harmonic_basis(*w.op));
  KernelTables::Options options;
  options.diam_override = diam_override;
  w.tables = std::make_unique<KernelTables>(w.op, w.basis, options);
  return w;
}

void check_budgets(const Lake& lake, const std::vector<VortexBudget>& budgets, BathtubMode mode) {
  for (const VortexBudget& b : budgets) {
    try {
      b.validate();
      target_profile(lake, b, mode, +1);
      target_profile(lake, b, mode, -1);
    } catch (const LakeError& e) {
      throw lio::ConfigError("budget", e.what());
    }
  }
}

std::string member_name(const std::string& stem, std::size_t index, const std::string& ext) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "_%02zu", index);
  return stem + buf + ext;
}

void write_member(const lio::RunConfig& config, const fs::path& dir, std::size_t index, const SolveReport& report,
                  const AsymptoticsBundle& bundle) {
  lio::write_text(dir / member_name("report", index, ".json"), lio::dump_json(lio::report_json(config, report, bundle)));
  if (!config.output.fields) return;
  lio::write_field_csv(dir / member_name("zeta", index, ".csv"), report.zeta);
  lio::write_field_csv(dir / member_name("psi", index, ".csv"), report.stream.psi);
  for (int sign : {+1, -1}) {
    ScalarField part = report.zeta;
    for (double& v : part.mutable_values()) v = std::max(sign * v, 0.0);
    lio::write_curve_csv(dir / member_name(sign > 0 ? "distribution_plus" : "distribution_minus", index, ".csv"),
                         distribution(part));
  }
}

void print_member(const SolveReport& r) {
  std::cout << "epsilon=" << lio::format_number(r.budget.epsilon) << " energy=" << lio::format_number(r.energy)
            << " iterations=" << r.iterations << " converged=" << (r.converged ? "yes" : "no")
            << (r.cycle ? " cycle=yes" : "") << '\n';
}

lio::RunConfig load(const std::string& path, const std::string& out_override) {
  lio::RunConfig config = lio::load_config(path);
  if (!out_override.empty()) {
    config.output.directory = fs::absolute(out_override);
  }
  return config;
}

int cmd_solve(const std::string& path, const std::string& out) {
  const lio::RunConfig config = load(path, out);
  const Workspace w = build_workspace(config);
  const std::vector<VortexBudget> budgets = config.budgets();
  check_budgets(*w.lake, budgets, config.solver.mode);
  const fs::path dir = config.output_directory();
  bool all_converged = true;
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    const SolveReport report = solve(*w.tables, budgets[i], config.solver);
    const AsymptoticsBundle bundle = diagnose(*w.tables, report, config.diagnostics);
    write_member(config, dir, i, report, bundle);
    print_member(report);
    all_converged = all_converged && report.converged;
  }
  if (!all_converged) {
    std::cerr << "error: solver did not converge (artifacts written to " << dir.string() << ")\n";
    return kNumericalFailure;
  }
  return kOk;
}

int cmd_sweep(const std::string& path, const std::string& out) {
  lio::RunConfig config = load(path, out);
  std::vector<double> eps = config.epsilons;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  if (std::adjacent_find(eps.begin(), eps.end()) != eps.end()) {
    throw lio::ConfigError("budget.epsilon", "sweep values must be distinct");
  }
  config.epsilons = eps;
  const Workspace w = build_workspace(config);
  const std::vector<VortexBudget> budgets = config.budgets();
  check_budgets(*w.lake, budgets, config.solver.mode);
  const fs::path dir = config.output_directory();

  const std::vector<SolveReport> reports = sweep(*w.tables, budgets, config.solver, config.sweep);
  std::vector<AsymptoticsBundle> bundles;
  std::vector<std::optional<double>> gaps;
  bool all_converged = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const AsymptoticsBundle bundle = diagnose(*w.tables, reports[i], config.diagnostics);
    write_member(config, dir, i, reports[i], bundle);
    print_member(reports[i]);
    all_converged = all_converged && reports[i].converged;
    gaps.push_back(bundle.W_at_centroids && bundle.W_min
                       ? std::optional<double>(*bundle.W_at_centroids - *bundle.W_min)
                       : std::nullopt);
    bundles.push_back(bundle);
  }
  lio::write_sweep_csv(dir / "sweep.csv", bundles, gaps, config.kappa_configured);

  if (bundles.size() < 3) {
    std::cerr << "warning: scaling fit needs at least 3 epsilon values; fit skipped\n";
  } else {
    try {
      const ScalingFit fit = fit_scaling(bundles);
      lio::write_text(dir / "fit.json", lio::dump_json(lio::fit_json(fit)));
      std::cout << "scaling exponent=" << lio::format_number(fit.exponent)
                << " std_error=" << lio::format_number(fit.std_error) << '\n';
    } catch (const LakeError& e) {
      std::cerr << "warning: scaling fit skipped: " << e.what() << '\n';
    }
  }
  if (bundles.size() >= 2) {
    try {
      const RepulsionReport rep = repulsion_check(bundles, config.holder_alpha, config.tau);
      nlohmann::json j;
      j["schema_version"] = lio::kSchemaVersion;
      j["gamma_plus"] = rep.gamma_plus;
      j["gamma_minus"] = rep.gamma_minus;
      j["gamma_pair"] = rep.gamma_pair;
      j["pair_applicable"] = rep.pair_applicable;
      j["pair_ratio"] = rep.pair_ratio;
      j["boundary_nondecreasing"] = rep.boundary_nondecreasing;
      j["pair_nondecreasing"] = rep.pair_nondecreasing;
      nlohmann::json rows = nlohmann::json::array();
      for (const RepulsionRow& r : rep.rows) {
        rows.push_back({{"epsilon", r.epsilon},
                        {"dist_plus", r.dist_plus},
                        {"dist_minus", r.dist_minus},
                        {"pair", r.pair},
                        {"proxy_plus", r.proxy_plus},
                        {"proxy_minus", r.proxy_minus},
                        {"proxy_pair", r.proxy_pair}});
      }
      j["rows"] = rows;
      lio::write_text(dir / "repulsion.json", lio::dump_json(j));
    } catch (const LakeError& e) {
      std::cerr << "warning: repulsion check skipped: " << e.what() << '\n';
    }
  }
  if (!all_converged) {
    std::cerr << "error: some sweep members did not converge\n";
    return kNumericalFailure;
  }
  return kOk;
}

int cmd_diagnose(const std::string& path, std::optional<double> kappa, bool localization, const std::string& out) {
  const lio::LoadedReport loaded = lio::read_report(path);
  lio::RunConfig config = loaded.config;
  if (kappa) {
    if (!(*kappa > 0.0 && *kappa < 2.0)) throw lio::ConfigError("kappa", "must lie in (0, 2)");
    config.diagnostics.kappa = *kappa;
  }
  if (localization) config.diagnostics.localization = true;
  const Workspace w = build_workspace(config);

  SolveReport report;
  report.budget = loaded.budget;
  report.zeta = ScalarField::zeros(w.lake);
  for (const auto& [cell, value] : loaded.zeta) {
    if (cell < 0 || static_cast<std::size_t>(cell) >= w.lake->size()) {
      throw lio::ConfigError("zeta.cells", "cell index out of range");
    }
    report.zeta[static_cast<std::size_t>(cell)] = value;
  }
  try {
    report.stream = solve_stream(*w.op, *w.basis, report.zeta, report.budget, config.solver.zero_island_circulation);
  } catch (const LakeError& e) {
    throw lio::ConfigError("zeta", e.what());
  }
  report.energy = energy_stream_form(*w.lake, report.zeta, report.stream).total;
  report.energy_trace = loaded.energy_trace;
  report.converged = loaded.converged;

  const AsymptoticsBundle bundle = diagnose(*w.tables, report, config.diagnostics);
  nlohmann::json j;
  j["schema_version"] = lio::kSchemaVersion;
  j["source"] = fs::path(path).filename().string();
  j["energy"] = report.energy;
  j["diagnostics"] = lio::bundle_json(bundle);
  if (config.diagnostics.localization && report.budget.tau > 0.0 && report.budget.tau < 1.0) {
    const LocalizationFunctional loc(*w.tables, report.budget.tau);
    const LocalizationReport l = localization_check(loc, bundle, 1e-6, config.diagnostics.w_candidates);
    j["localization"] = {{"argmin_x", {w.lake->center(l.argmin_x).x, w.lake->center(l.argmin_x).y}},
                         {"argmin_y", {w.lake->center(l.argmin_y).x, w.lake->center(l.argmin_y).y}},
                         {"W_centroids", l.W_centroids},
                         {"W_min", l.W_min},
                         {"gap", l.gap},
                         {"gap_fraction", l.gap_fraction},
                         {"dist_plus", l.dist_plus},
                         {"dist_minus", l.dist_minus},
                         {"out_of_theory", l.out_of_theory}};
  }
  if (config.solver.mode == BathtubMode::kPatch) {
    const RoundnessReport r = roundness_check(*w.lake, report, config.solver.mode);
    j["roundness"] = {{"radius_plus", r.radius_plus},       {"radius_minus", r.radius_minus},
                      {"ratio_plus", r.ratio_plus},         {"ratio_minus", r.ratio_minus},
                      {"best_ratio_plus", r.best_ratio_plus}, {"best_ratio_minus", r.best_ratio_minus}};
  }
  const fs::path target = out.empty() ? fs::path(path).replace_extension(".diagnostics.json") : fs::path(out);
  lio::write_text(target, lio::dump_json(j));
  std::cout << "wrote " << target.string() << '\n';
  return kOk;
}

int cmd_validate_kernel(const std::string& path, const std::string& out) {
  const lio::RunConfig config = load(path, out);
  const lio::ValidationConfig& v = config.validation;
  const Workspace w = build_workspace(config, v.diam_override);
  const Lake& lake = *w.lake;
  const double h = lake.h();

  // Closed forms exist for plain disks and annuli.
  const nlohmann::json& domain = config.document.at("lake").at("domain");
  const std::string type = domain.at("type").get<std::string>();
  const bool plain = !domain.contains("islands") || domain.at("islands").empty();
  std::optional<std::function<double(Point, Point)>> closed;
  if (plain && type == "disk") {
    const Point c{domain["center"][0].get<double>(), domain["center"][1].get<double>()};
    const double r = domain["radius"].get<double>();
    closed = [c, r](Point x, Point y) { return disk_green(c, r, x, y); };
  } else if (plain && type == "annulus") {
    const Point c{domain["center"][0].get<double>(), domain["center"][1].get<double>()};
    const double a = domain["inner_radius"].get<double>();
    const double b = domain["outer_radius"].get<double>();
    closed = [c, a, b](Point x, Point y) { return annulus_green(c, a, b, x, y); };
  }

  std::vector<int> eligible;
  for (int c = 0; c < static_cast<int>(lake.size()); ++c) {
    if (lake.boundary_distance(c) >= v.min_boundary_cells * h) eligible.push_back(c);
  }
  if (eligible.size() < 2) throw lio::ConfigError("validation.min_boundary_cells", "fewer than two eligible cells");

  std::mt19937_64 rng(v.seed);
  std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
  const double slack = v.slack_cells * h;
  const double log_diam = std::log(lake.diam());
  int violations = 0;
  double worst = 0.0;
  std::string csv = "# lakevortex schema_version 1\nx1,y1,x2,y2,g,H,lower,upper";
  if (closed) csv += ",g_closed,H_closed";
  csv += "\n";
  for (int k = 0; k < v.pairs; ++k) {
    int x = eligible[pick(rng)];
    int y = eligible[pick(rng)];
    while (y == x) y = eligible[pick(rng)];
    const Point px = lake.center(x);
    const Point py = lake.center(y);
    const double g = w.tables->green(x, y);
    const double H = w.tables->regular_part(x, y);
    const SandwichBounds bounds = w.tables->sandwich(x, y, slack);
    if (H < bounds.lower || H > bounds.upper) ++violations;
    csv += lio::format_number(px.x) + "," + lio::format_number(px.y) + "," + lio::format_number(py.x) + "," +
           lio::format_number(py.y) + "," + lio::format_number(g) + "," + lio::format_number(H) + "," +
           lio::format_number(bounds.lower) + "," + lio::format_number(bounds.upper);
    if (closed) {
      const double gc = (*closed)(px, py);
      const double hc = (log_diam - std::log(distance(px, py))) / (2.0 * std::numbers::pi) - gc;
      worst = std::max(worst, std::abs(H - hc) / std::abs(hc));
      csv += "," + lio::format_number(gc) + "," + lio::format_number(hc);
    }
    csv += "\n";
  }
  const fs::path dir = config.output_directory();
  lio::write_text(dir / "kernel_validation.csv", csv);
  const bool closed_ok = !closed || worst <= v.closed_form_tolerance;
  const bool ok = violations == 0 && closed_ok;
  std::cout << "pairs=" << v.pairs << " bound_violations=" << violations;
  if (closed) std::cout << " closed_form_max_rel_error=" << lio::format_number(worst);
  std::cout << ' ' << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kNumericalFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady vortex pairs in lakes of variable depth"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<double> kappa;
  bool localization = false;

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve for each epsilon in the config");
  solve_cmd->add_option("config", config_path, "JSON config file")->required();
  solve_cmd->add_option("--out", out_dir, "Output directory (overrides output.directory)");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Warm-started epsilon sweep with scaling fit");
  sweep_cmd->add_option("config", config_path, "JSON config file")->required();
  sweep_cmd->add_option("--out", out_dir, "Output directory (overrides output.directory)");

  CLI::App* diagnose_cmd = app.add_subcommand("diagnose", "Recompute diagnostics from a report");
  diagnose_cmd->add_option("report", config_path, "Report JSON written by solve or sweep")->required();
  diagnose_cmd->add_option("--kappa", kappa, "Concentration parameter");
  diagnose_cmd->add_flag("--localization", localization, "Evaluate the pair functional");
  diagnose_cmd->add_option("--out", out_dir, "Output file");

  CLI::App* validate_cmd = app.add_subcommand("validate-kernel", "Check the discrete kernel against bounds");
  validate_cmd->add_option("config", config_path, "JSON config file")->required();
  validate_cmd->add_option("--out", out_dir, "Output directory (overrides output.directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*solve_cmd) return cmd_solve(config_path, out_dir);
    if (*sweep_cmd) return cmd_sweep(config_path, out_dir);
    if (*diagnose_cmd) return cmd_diagnose(config_path, kappa, localization, out_dir);
    if (*validate_cmd) return cmd_validate_kernel(config_path, out_dir);
  } catch (const lio::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const LakeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
