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

#include "lakevortex/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace lakevortex::io {

using nlohmann::json;

namespace {

// Typed access to one JSON object, reporting errors by dotted key path.
class Section {
 public:
  Section(const json& value, std::string path) : value_(value), path_(std::move(path)) {
    if (!value_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string key(const std::string& name) const { return path_.empty() ? name : path_ + "." + name; }
  bool has(const std::string& name) const { return value_.contains(name) && !value_.at(name).is_null(); }
  const json& raw(const std::string& name) const {
    if (!has(name)) throw ConfigError(key(name), "missing");
    return value_.at(name);
  }

  Section child(const std::string& name) const { return Section(raw(name), key(name)); }

  double number(const std::string& name) const {
    const json& v = raw(name);
    if (!v.is_number()) throw ConfigError(key(name), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(key(name), "must be finite");
    return d;
  }
  double number(const std::string& name, double fallback) const { return has(name) ? number(name) : fallback; }
  double positive(const std::string& name, double fallback) const {
    const double d = number(name, fallback);
    if (!(d > 0.0)) throw ConfigError(key(name), "must be positive");
    return d;
  }

  long long integer(const std::string& name) const {
    const json& v = raw(name);
    if (!v.is_number_integer()) throw ConfigError(key(name), "expected an integer");
    return v.get<long long>();
  }
  long long integer(const std::string& name, long long fallback) const {
    return has(name) ? integer(name) : fallback;
  }

  bool boolean(const std::string& name, bool fallback) const {
    if (!has(name)) return fallback;
    const json& v = value_.at(name);
    if (!v.is_boolean()) throw ConfigError(key(name), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& name) const {
    const json& v = raw(name);
    if (!v.is_string()) throw ConfigError(key(name), "expected a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& name, const std::string& fallback) const {
    return has(name) ? string(name) : fallback;
  }

  std::vector<double> numbers(const std::string& name) const {
    const json& v = raw(name);
    if (!v.is_array()) throw ConfigError(key(name), "expected an array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) throw ConfigError(key(name), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  Point point(const std::string& name) const {
    const std::vector<double> v = numbers(name);
    if (v.size() != 2) throw ConfigError(key(name), "expected [x, y]");
    return {v[0], v[1]};
  }

  std::vector<Point> points(const std::string& name) const {
    const json& v = raw(name);
    if (!v.is_array()) throw ConfigError(key(name), "expected an array of [x, y] pairs");
    std::vector<Point> out;
    for (const json& e : v) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ConfigError(key(name), "expected an array of [x, y] pairs");
      }
      out.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    return out;
  }

  void allow(std::initializer_list<const char*> names) const {
    const std::set<std::string> ok(names.begin(), names.end());
    for (const auto& [name, v] : value_.items()) {
      if (!ok.count(name)) throw ConfigError(key(name), "unknown key");
    }
  }

  const std::string& path() const { return path_; }

 private:
  const json& value_;
  std::string path_;
};

Region parse_region(const Section& s) {
  const std::string type = s.string("type");
  if (type == "disk") {
    s.allow({"type", "center", "radius"});
    return make_disk(s.point("center"), s.positive("radius", 0.0));
  }
  if (type == "rectangle") {
    s.allow({"type", "lo", "hi"});
    return make_rectangle(s.point("lo"), s.point("hi"));
  }
  if (type == "polygon") {
    s.allow({"type", "vertices"});
    return make_polygon(s.points("vertices"));
  }
  throw ConfigError(s.key("type"), "unknown region type '" + type + "'");
}

Domain parse_domain(const Section& s) {
  const std::string type = s.string("type");
  Domain d;
  if (type == "disk") {
    s.allow({"type", "center", "radius", "islands"});
    d = Domain::disk(s.point("center"), s.positive("radius", 0.0));
  } else if (type == "annulus") {
    s.allow({"type", "center", "inner_radius", "outer_radius", "islands"});
    const double inner = s.positive("inner_radius", 0.0);
    const double outer = s.positive("outer_radius", 0.0);
    if (!(inner < outer)) throw ConfigError(s.key("inner_radius"), "must be smaller than outer_radius");
    d = Domain::annulus(s.point("center"), inner, outer);
  } else if (type == "rectangle") {
    s.allow({"type", "lo", "hi", "islands"});
    d = Domain::rectangle(s.point("lo"), s.point("hi"));
  } else if (type == "polygon") {
    s.allow({"type", "vertices", "islands"});
    d = Domain::polygon(s.points("vertices"));
  } else {
    throw ConfigError(s.key("type"), "unknown domain type '" + type + "'");
  }
  if (s.has("islands")) {
    const json& islands = s.raw("islands");
    if (!islands.is_array()) throw ConfigError(s.key("islands"), "expected an array of regions");
    for (std::size_t i = 0; i < islands.size(); ++i) {
      d.islands.push_back(parse_region(Section(islands[i], s.key("islands") + "[" + std::to_string(i) + "]")));
    }
  }
  return d;
}

DepthProfile parse_depth(const Section& s, const Domain& domain) {
  const std::string type = s.string("type");
  if (type == "constant") {
    s.allow({"type", "value"});
    return DepthProfile::constant(s.positive("value", 1.0));
  }
  if (type == "bump") {
    s.allow({"type", "center", "base", "amplitude", "width"});
    return DepthProfile::bump(s.point("center"), s.positive("base", 1.0), s.number("amplitude"),
                              s.positive("width", 0.0));
  }
  if (type == "two_bump") {
    s.allow({"type", "centers", "base", "amplitude", "width"});
    const std::vector<Point> c = s.points("centers");
    if (c.size() != 2) throw ConfigError(s.key("centers"), "expected two centers");
    return DepthProfile::two_bump(c[0], c[1], s.positive("base", 1.0), s.number("amplitude"),
                                  s.positive("width", 0.0));
  }
  if (type == "exponential") {
    s.allow({"type", "rate"});
    return DepthProfile::exponential(s.number("rate"));
  }
  if (type == "linear") {
    s.allow({"type", "base", "gradient"});
    return DepthProfile::linear(s.number("base"), s.point("gradient"));
  }
  if (type == "table") {
    s.allow({"type", "lo", "hi", "nx", "ny", "values"});
    const long long nx = s.integer("nx");
    const long long ny = s.integer("ny");
    if (nx < 2 || ny < 2) throw ConfigError(s.key("nx"), "table needs at least 2 x 2 samples");
    std::vector<double> values = s.numbers("values");
    if (values.size() != static_cast<std::size_t>(nx * ny)) throw ConfigError(s.key("values"), "expected nx * ny values");
    return DepthProfile::table(s.point("lo"), s.point("hi"), static_cast<int>(nx), static_cast<int>(ny),
                               std::move(values));
  }
  if (type == "power_distance") {
    s.allow({"type", "alpha", "scale"});
    return DepthProfile::power_distance(domain, s.positive("alpha", 0.0), s.positive("scale", 1.0));
  }
  throw ConfigError(s.key("type"), "unknown depth type '" + type + "'");
}

template <typename F>
auto wrap_library(const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const LakeError& e) {
    throw ConfigError(key, e.what());
  }
}

void append_value(std::string& out, const json& v, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  const char* colon = indent > 0 ? ": " : ":";
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (const auto& [k, e] : v.items()) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + json(k).dump() + colon;
        append_value(out, e, indent, depth + 1);
      }
      out += nl + close + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) {
          out += ",";
          out += nl;
        }
        out += pad;
        append_value(out, v[i], indent, depth + 1);
      }
      out += nl + close + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_number(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

json optional_point(const std::optional<Point>& p) {
  if (!p) return nullptr;
  return json::array({p->x, p->y});
}

json optional_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

constexpr const char* kCsvHeader = "# lakevortex schema_version 1\n";

// Empty cell for non-finite values.
std::string csv_number(double value) { return std::isfinite(value) ? format_number(value) : std::string(); }

}  // namespace

double StrengthRule::at(double epsilon) const { return value * std::pow(epsilon, exponent); }

std::vector<VortexBudget> RunConfig::budgets() const {
  std::vector<VortexBudget> out;
  for (double eps : epsilons) {
    VortexBudget b;
    b.epsilon = eps;
    b.strength = strength.at(eps);
    b.tau = tau;
    b.distribution = distribution;
    out.push_back(b);
  }
  return out;
}

std::filesystem::path RunConfig::output_directory() const {
  if (output.directory.is_absolute() || base_directory.empty()) return output.directory;
  return base_directory / output.directory;
}

RunConfig parse_config(const json& document, const std::filesystem::path& base_directory) {
  const Section root(document, "");
  root.allow({"schema_version", "lake", "budget", "solver", "diagnostics", "output", "validation"});
  if (root.has("schema_version") && root.integer("schema_version") != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  RunConfig c;
  c.document = document;
  c.base_directory = base_directory;

  const Section lake = root.child("lake");
  lake.allow({"domain", "depth", "nx", "ny", "circulations"});
  c.lake.domain = wrap_library(lake.key("domain"), [&] { return parse_domain(lake.child("domain")); });
  c.lake.depth = lake.has("depth")
                     ? wrap_library(lake.key("depth"), [&] { return parse_depth(lake.child("depth"), c.lake.domain); })
                     : DepthProfile::constant(1.0);
  const long long nx = lake.integer("nx", 64);
  const long long ny = lake.integer("ny", nx);
  if (nx < 2 || nx > 4096) throw ConfigError(lake.key("nx"), "must be in [2, 4096]");
  if (ny < 2 || ny > 4096) throw ConfigError(lake.key("ny"), "must be in [2, 4096]");
  c.lake.nx = static_cast<int>(nx);
  c.lake.ny = static_cast<int>(ny);
  if (lake.has("circulations")) c.lake.circulations = lake.numbers("circulations");

  const Section budget = root.child("budget");
  budget.allow({"epsilon", "strength", "tau", "distribution"});
  const json& eps = budget.raw("epsilon");
  if (eps.is_number()) {
    c.epsilons = {budget.number("epsilon")};
  } else {
    c.epsilons = budget.numbers("epsilon");
  }
  if (c.epsilons.empty()) throw ConfigError(budget.key("epsilon"), "must not be empty");
  for (double e : c.epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) throw ConfigError(budget.key("epsilon"), "entries must be positive");
  }
  if (budget.has("strength")) {
    if (budget.raw("strength").is_object()) {
      const Section s = budget.child("strength");
      s.allow({"value", "exponent"});
      c.strength.value = s.positive("value", 1.0);
      c.strength.exponent = s.number("exponent", 0.0);
    } else {
      c.strength.value = budget.positive("strength", 1.0);
    }
  }
  c.tau = budget.number("tau", 1.0);
  if (!(c.tau >= 0.0 && c.tau <= 1.0)) throw ConfigError(budget.key("tau"), "must lie in [0, 1]");
  if (budget.has("distribution")) {
    const Section d = budget.child("distribution");
    d.allow({"breaks", "values", "p"});
    c.distribution = wrap_library(d.path(), [&] {
      return DistributionSpec::step(d.numbers("breaks"), d.numbers("values"), d.number("p", 2.0));
    });
  }

  if (root.has("solver")) {
    const Section s = root.child("solver");
    s.allow({"mode", "max_iters", "energy_tol", "support_tol", "init", "seed", "polish_moves", "exhaustive_start_cells",
             "zero_island_circulation", "w_search_candidates", "warm_start", "cold_restart"});
    const std::string mode = s.string("mode", c.distribution ? "distribution" : "patch");
    if (mode == "patch") {
      c.solver.mode = BathtubMode::kPatch;
    } else if (mode == "distribution") {
      if (!c.distribution) throw ConfigError(s.key("mode"), "distribution mode needs budget.distribution");
      c.solver.mode = BathtubMode::kDistribution;
    } else {
      throw ConfigError(s.key("mode"), "expected 'patch' or 'distribution'");
    }
    const long long iters = s.integer("max_iters", c.solver.max_iters);
    if (iters < 1) throw ConfigError(s.key("max_iters"), "must be at least 1");
    c.solver.max_iters = static_cast<int>(iters);
    c.solver.energy_tol = s.positive("energy_tol", c.solver.energy_tol);
    const long long support_tol = s.integer("support_tol", c.solver.support_tol);
    if (support_tol < 0) throw ConfigError(s.key("support_tol"), "must be nonnegative");
    c.solver.support_tol = static_cast<int>(support_tol);
    const std::string init = s.string("init", "max_depth");
    if (init == "max_depth") {
      c.solver.init = InitKind::kMaxDepth;
    } else if (init == "random") {
      c.solver.init = InitKind::kRandom;
    } else {
      throw ConfigError(s.key("init"), "expected 'max_depth' or 'random'");
    }
    const long long seed = s.integer("seed", 0);
    if (seed < 0) throw ConfigError(s.key("seed"), "must be nonnegative");
    c.solver.seed = static_cast<std::uint64_t>(seed);
    const long long polish = s.integer("polish_moves", c.solver.polish_moves);
    if (polish < 0) throw ConfigError(s.key("polish_moves"), "must be nonnegative");
    c.solver.polish_moves = static_cast<int>(polish);
    const long long starts = s.integer("exhaustive_start_cells", c.solver.exhaustive_start_cells);
    if (starts < 0) throw ConfigError(s.key("exhaustive_start_cells"), "must be nonnegative");
    c.solver.exhaustive_start_cells = static_cast<int>(starts);
    c.solver.zero_island_circulation = s.boolean("zero_island_circulation", false);
    const long long cand = s.integer("w_search_candidates", static_cast<long long>(c.solver.w_search_candidates));
    if (cand < 1) throw ConfigError(s.key("w_search_candidates"), "must be positive");
    c.solver.w_search_candidates = static_cast<std::size_t>(cand);
    c.sweep.warm_start = s.boolean("warm_start", true);
    c.sweep.cold_restart = s.boolean("cold_restart", true);
  } else if (c.distribution) {
    c.solver.mode = BathtubMode::kDistribution;
  }

  c.holder_alpha = c.lake.depth.holder_exponent;
  if (root.has("diagnostics")) {
    const Section s = root.child("diagnostics");
    s.allow({"kappa", "localization", "w_candidates", "holder_alpha"});
    c.kappa_configured = s.has("kappa");
    c.diagnostics.kappa = s.number("kappa", 0.5);
    if (!(c.diagnostics.kappa > 0.0 && c.diagnostics.kappa < 2.0)) throw ConfigError(s.key("kappa"), "must lie in (0, 2)");
    c.diagnostics.localization = s.boolean("localization", false);
    const long long cand = s.integer("w_candidates", static_cast<long long>(c.diagnostics.w_candidates));
    if (cand < 1) throw ConfigError(s.key("w_candidates"), "must be positive");
    c.diagnostics.w_candidates = static_cast<std::size_t>(cand);
    c.holder_alpha = s.positive("holder_alpha", c.holder_alpha);
  }

  if (root.has("output")) {
    const Section s = root.child("output");
    s.allow({"directory", "fields"});
    c.output.directory = s.string("directory", "out");
    c.output.fields = s.boolean("fields", true);
  }

  if (root.has("validation")) {
    const Section s = root.child("validation");
    s.allow({"pairs", "seed", "slack_cells", "min_boundary_cells", "closed_form_tolerance", "diam_override"});
    const long long pairs = s.integer("pairs", c.validation.pairs);
    if (pairs < 1) throw ConfigError(s.key("pairs"), "must be positive");
    c.validation.pairs = static_cast<int>(pairs);
    const long long seed = s.integer("seed", 1);
    if (seed < 0) throw ConfigError(s.key("seed"), "must be nonnegative");
    c.validation.seed = static_cast<std::uint64_t>(seed);
    c.validation.slack_cells = s.number("slack_cells", c.validation.slack_cells);
    if (c.validation.slack_cells < 0.0) throw ConfigError(s.key("slack_cells"), "must be nonnegative");
    c.validation.min_boundary_cells = s.number("min_boundary_cells", c.validation.min_boundary_cells);
    c.validation.closed_form_tolerance = s.positive("closed_form_tolerance", c.validation.closed_form_tolerance);
    if (s.has("diam_override")) c.validation.diam_override = s.positive("diam_override", 0.0);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read " + path.string());
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(document, path.parent_path());
}

std::string format_number(double value) {
  if (!std::isfinite(value)) return "null";
  if (value == 0.0) return "0.0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string dump_json(const json& value, int indent) {
  std::string out;
  append_value(out, value, indent, 0);
  out += "\n";
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_output(path);
  out << text;
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& field) {
  const Lake& lake = field.lake();
  std::ofstream out = open_output(path);
  out << kCsvHeader << "cell,x,y,depth,value\n";
  for (std::size_t c = 0; c < field.size(); ++c) {
    const Point p = lake.center(static_cast<int>(c));
    out << c << ',' << csv_number(p.x) << ',' << csv_number(p.y) << ','
        << csv_number(lake.depth(static_cast<int>(c))) << ',' << csv_number(field[c]) << '\n';
  }
}

void write_curve_csv(const std::filesystem::path& path, const DistributionCurve& curve) {
  std::ofstream out = open_output(path);
  out << kCsvHeader << "level,mass\n";
  for (std::size_t k = 0; k < curve.levels.size(); ++k) {
    out << csv_number(curve.levels[k]) << ',' << csv_number(curve.masses[k]) << '\n';
  }
}

json bundle_json(const AsymptoticsBundle& b) {
  json j;
  j["epsilon"] = b.epsilon;
  j["tau"] = b.tau;
  j["strength"] = b.strength;
  j["converged"] = b.converged;
  j["support_diam_plus"] = b.support_diam_plus;
  j["support_diam_minus"] = b.support_diam_minus;
  j["centroid_plus"] = optional_point(b.centroid_plus);
  j["centroid_minus"] = optional_point(b.centroid_minus);
  j["depth_at_centroid_plus"] = b.depth_at_centroid_plus;
  j["depth_at_centroid_minus"] = b.depth_at_centroid_minus;
  j["argmax_distance_plus"] = b.argmax_distance_plus;
  j["dist_to_boundary_plus"] = b.dist_to_boundary_plus;
  j["dist_to_boundary_minus"] = b.dist_to_boundary_minus;
  j["pair_distance"] = b.pair_distance;
  j["centroid_distance"] = b.centroid_distance;
  j["roundness_plus"] = b.roundness_plus;
  j["roundness_minus"] = b.roundness_minus;
  j["best_roundness_plus"] = b.best_roundness_plus;
  j["best_roundness_minus"] = b.best_roundness_minus;
  j["radial_dev_plus"] = b.radial_dev_plus;
  j["radial_dev_minus"] = b.radial_dev_minus;
  j["W_at_centroids"] = optional_number(b.W_at_centroids);
  j["W_min"] = optional_number(b.W_min);
  j["kappa"] = b.kappa;
  j["concentration_containment"] = b.concentration_containment;
  j["min_kappa"] = b.min_kappa;
  return j;
}

json fit_json(const ScalingFit& fit) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["exponent"] = fit.exponent;
  j["std_error"] = fit.std_error;
  j["lower"] = fit.lower;
  j["upper"] = fit.upper;
  j["points"] = fit.points;
  j["in_range"] = fit.in_range;
  return j;
}

json report_json(const RunConfig& config, const SolveReport& report, const std::optional<AsymptoticsBundle>& bundle) {
  const Lake& lake = report.zeta.lake();
  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = config.document;
  j["budget"] = {{"epsilon", report.budget.epsilon}, {"strength", report.budget.strength}, {"tau", report.budget.tau}};
  j["lake"] = {{"cells", lake.size()},
               {"h", lake.h()},
               {"diam", lake.diam()},
               {"total_mass", lake.total_mass()},
               {"min_depth", lake.min_depth()},
               {"max_depth", lake.max_depth()}};
  j["converged"] = report.converged;
  j["cycle"] = report.cycle;
  j["degenerate"] = report.degenerate;
  j["iterations"] = report.iterations;
  j["total_iterations"] = report.total_iterations;
  j["polish_moves"] = report.polish_moves;
  j["warm_started"] = report.warm_started;
  j["warm_iterations"] = report.warm_iterations;
  j["cold_iterations"] = report.cold_iterations;
  j["energy"] = report.energy;
  const EnergyParts parts = energy_stream_form(lake, report.zeta, report.stream);
  j["energy_parts"] = {{"total", parts.total}, {"kpart", parts.kpart}, {"island", parts.island}};
  j["gamma_plus"] = report.gamma_plus;
  j["gamma_minus"] = report.gamma_minus;
  j["energy_trace"] = report.energy_trace;
  j["changed_trace"] = report.changed_trace;
  j["stream"] = {{"alphas", report.stream.alphas},
                 {"betas", report.stream.betas},
                 {"circulations", report.stream.circulations_achieved},
                 {"circulation_targets", report.stream.circulation_targets},
                 {"relative_residual", report.stream.relative_residual}};
  json cells = json::array();
  json values = json::array();
  for (std::size_t c = 0; c < report.zeta.size(); ++c) {
    if (report.zeta[c] == 0.0) continue;
    cells.push_back(c);
    values.push_back(report.zeta[c]);
  }
  j["zeta"] = {{"cells", cells}, {"values", values}};
  j["diagnostics"] = bundle ? bundle_json(*bundle) : json(nullptr);
  return j;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<AsymptoticsBundle>& bundles,
                     const std::vector<std::optional<double>>& w_gaps, bool containment) {
  std::ofstream out = open_output(path);
  out << kCsvHeader
      << "epsilon,strength,converged,diam_plus,diam_minus,pair_distance,centroid_distance,roundness_plus,"
         "roundness_minus,radial_dev_plus,radial_dev_minus,depth_at_centroid_plus,argmax_distance_plus,"
         "dist_to_boundary_plus,dist_to_boundary_minus,W_gap,kappa,containment,min_kappa\n";
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    const AsymptoticsBundle& b = bundles[i];
    out << csv_number(b.epsilon) << ',' << csv_number(b.strength) << ',' << (b.converged ? 1 : 0) << ','
        << csv_number(b.support_diam_plus) << ',' << csv_number(b.support_diam_minus) << ','
        << csv_number(b.pair_distance) << ',' << csv_number(b.centroid_distance) << ','
        << csv_number(b.roundness_plus) << ',' << csv_number(b.roundness_minus) << ','
        << csv_number(b.radial_dev_plus) << ',' << csv_number(b.radial_dev_minus) << ','
        << csv_number(b.depth_at_centroid_plus) << ',' << csv_number(b.argmax_distance_plus) << ','
        << csv_number(b.dist_to_boundary_plus) << ',' << csv_number(b.dist_to_boundary_minus) << ',';
    if (i < w_gaps.size() && w_gaps[i]) out << csv_number(*w_gaps[i]);
    out << ',';
    if (containment) {
      out << csv_number(b.kappa) << ',' << (b.concentration_containment ? 1 : 0) << ','
          << csv_number(b.min_kappa);
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

LoadedReport read_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
  }
  const Section root(doc, "");
  if (root.integer("schema_version") != kSchemaVersion) throw ConfigError("schema_version", "unsupported version");
  LoadedReport r;
  r.config = parse_config(root.raw("config"), path.parent_path());
  const Section budget = root.child("budget");
  r.budget.epsilon = budget.positive("epsilon", 0.0);
  r.budget.strength = budget.positive("strength", 0.0);
  r.budget.tau = budget.number("tau");
  r.budget.distribution = r.config.distribution;
  r.energy_trace = root.numbers("energy_trace");
  const json& converged = root.raw("converged");
  if (!converged.is_boolean()) throw ConfigError("converged", "expected true or false");
  r.converged = converged.get<bool>();
  const Section zeta = root.child("zeta");
  const json& cells = zeta.raw("cells");
  const std::vector<double> values = zeta.numbers("values");
  if (!cells.is_array() || cells.size() != values.size()) throw ConfigError("zeta.cells", "must match zeta.values");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!cells[i].is_number_integer()) throw ConfigError("zeta.cells", "expected integers");
    r.zeta.emplace_back(cells[i].get<int>(), values[i]);
  }
  return r;
}

}  // namespace lakevortex::io
