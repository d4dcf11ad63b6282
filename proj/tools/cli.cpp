#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "casimir/analysis.hpp"
#include "casimir/closed_form.hpp"

namespace casimir::cli {

namespace {

using Json = nlohmann::ordered_json;

// Ordered key/value pairs recorded in every output header.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

std::string num(double v) { return fmt::format("{}", v); }

struct ModelOptions {
  std::string kind = "drude";
  double wp = 1.0;
  double eps = 2.0;

  DielectricModel build() const {
    if (kind == "drude") return DielectricModel::drude(wp);
    if (kind == "eps") return DielectricModel::constant(eps);
    if (kind == "pc") return DielectricModel::perfect_conductor();
    if (kind == "vacuum") return DielectricModel::vacuum();
    throw DomainError(fmt::format("unknown model '{}'", kind));
  }

  void record(ConfigEntries& config, std::vector<std::string>& argv) const {
    config.emplace_back("model", kind);
    argv.insert(argv.end(), {"--model", kind});
    if (kind == "drude") {
      config.emplace_back("wp", num(wp));
      argv.insert(argv.end(), {"--wp", num(wp)});
    } else if (kind == "eps") {
      config.emplace_back("eps", num(eps));
      argv.insert(argv.end(), {"--eps", num(eps)});
    }
  }
};

struct QuadratureOptions {
  QuadratureConfig cfg;

  void record(ConfigEntries& config, std::vector<std::string>& argv) const {
    const std::vector<std::pair<std::string, std::string>> items = {
        {"rel-tol", num(cfg.rel_tol)},
        {"abs-tol", num(cfg.abs_tol)},
        {"tail-budget", num(cfg.tail_exponent_budget)},
        {"max-subdivisions", std::to_string(cfg.max_subdivisions)},
        {"inner-order", std::to_string(cfg.inner_rule_order)},
        {"inner-levels", std::to_string(cfg.inner_grading_levels)},
        {"decay-floor", num(cfg.decay_floor)},
    };
    for (const auto& [key, value] : items) {
      config.emplace_back(key, value);
      argv.insert(argv.end(), {"--" + key, value});
    }
  }
};

void add_model_options(CLI::App* cmd, ModelOptions& m) {
  cmd->add_option("--model", m.kind, "Material: drude, eps, pc, vacuum")
      ->check(CLI::IsMember({"drude", "eps", "pc", "vacuum"}))
      ->capture_default_str();
  cmd->add_option("--wp", m.wp, "Drude plasma frequency (natural units)")->capture_default_str();
  cmd->add_option("--eps", m.eps, "Constant permittivity for --model eps")->capture_default_str();
}

void add_quadrature_options(CLI::App* cmd, QuadratureOptions& q) {
  cmd->add_option("--rel-tol", q.cfg.rel_tol, "Relative tolerance")->capture_default_str();
  cmd->add_option("--abs-tol", q.cfg.abs_tol, "Absolute tolerance floor")->capture_default_str();
  cmd->add_option("--tail-budget", q.cfg.tail_exponent_budget, "Truncation u_max * decay scale")
      ->capture_default_str();
  cmd->add_option("--max-subdivisions", q.cfg.max_subdivisions, "Adaptive panel budget")
      ->capture_default_str();
  cmd->add_option("--inner-order", q.cfg.inner_rule_order, "Gauss-Legendre points per t panel")
      ->capture_default_str();
  cmd->add_option("--inner-levels", q.cfg.inner_grading_levels, "Geometric t panels toward 0")
      ->capture_default_str();
  cmd->add_option("--decay-floor", q.cfg.decay_floor, "Smallest decay scale, reference units")
      ->capture_default_str();
}

struct OutputOptions {
  std::string format = "csv";
  std::string path;
};

void add_output_options(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", o.path, "Output file (default: stdout)");
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string rerun_line(const std::vector<std::string>& argv) {
  std::string line = "casimir";
  for (const auto& a : argv) line += " " + a;
  return line;
}

void write_csv(std::ostream& os, const ConfigEntries& config, const std::vector<std::string>& argv,
               const Table& table, const std::vector<std::string>& trailing_rows) {
  os << "# rerun: " << rerun_line(argv) << '\n';
  for (const auto& [key, value] : config) os << "# " << key << '=' << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? "," : "") << table.columns[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt::format("{:.17g}", row[i]);
    os << '\n';
  }
  for (const auto& line : trailing_rows) os << line << '\n';
}

Json config_json(const ConfigEntries& config, const std::vector<std::string>& argv) {
  Json j = Json::object();
  j["rerun"] = rerun_line(argv);
  for (const auto& [key, value] : config) j[key] = value;
  return j;
}

Json rows_json(const Table& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = row[i];
    rows.push_back(std::move(r));
  }
  return rows;
}

// Routes output to --output or the provided stream.
void emit(const OutputOptions& o, std::ostream& fallback,
          const std::function<void(std::ostream&)>& writer) {
  if (o.path.empty()) {
    writer(fallback);
    return;
  }
  std::ofstream file(o.path, std::ios::binary);
  if (!file) throw DomainError(fmt::format("cannot open output file '{}'", o.path));
  writer(file);
}

// ---------------------------------------------------------------- profile

struct ProfileCommand {
  std::string geometry = "single";
  double a = 1.0;
  double zmin = 0.5;
  double zmax = 5.0;
  int points = 64;
  double margin = 0.02;
  ModelOptions model;
  QuadratureOptions quad;
  OutputOptions output;

  int run(std::ostream& out) const {
    const DielectricModel m = model.build();
    quad.cfg.validate();

    ConfigEntries config{{"command", "profile"}, {"geometry", geometry}};
    std::vector<std::string> argv{"profile", "--geometry", geometry};
    Profile prof = [&] {
      if (geometry == "cavity") {
        config.emplace_back("a", num(a));
        config.emplace_back("margin", num(margin));
        argv.insert(argv.end(), {"--a", num(a), "--margin", num(margin)});
        return profile(Geometry::cavity(a), m, points, margin, quad.cfg);
      }
      config.emplace_back("zmin", num(zmin));
      config.emplace_back("zmax", num(zmax));
      argv.insert(argv.end(), {"--zmin", num(zmin), "--zmax", num(zmax)});
      return profile(Geometry::single_interface(), m, points, ZWindow{zmin, zmax}, quad.cfg);
    }();
    config.emplace_back("points", std::to_string(points));
    argv.insert(argv.end(), {"--points", std::to_string(points)});
    model.record(config, argv);
    quad.record(config, argv);
    argv.insert(argv.end(), {"--format", output.format});

    Table table{{"z", "e2", "b2", "u", "err"}, {}};
    for (const auto& p : prof.points) table.rows.push_back({p.z, p.e2, p.b2, p.u, p.err});

    emit(output, out, [&](std::ostream& os) {
      if (output.format == "json") {
        Json j = {{"config", config_json(config, argv)},
                  {"rows", rows_json(table)},
                  {"checks", Json::array()}};
        os << j.dump(2) << '\n';
      } else {
        write_csv(os, config, argv, table, {});
      }
    });
    return kSuccess;
  }
};

// ------------------------------------------------------------------- scan

struct ScanCommand {
  double lambda_min = 10.0;
  double lambda_max = 1000.0;
  int points = 40;
  std::string spacing = "log";
  QuadratureOptions quad;
  OutputOptions output;

  int run(std::ostream& out) const {
    const Spacing sp = spacing == "linear" ? Spacing::Linear : Spacing::Logarithmic;
    const auto scan = midpoint_scan(lambda_min, lambda_max, points, quad.cfg, sp);
    const double limit = pc_cavity_energy(1.0);

    ConfigEntries config{{"command", "scan"},
                         {"lambda-min", num(lambda_min)},
                         {"lambda-max", num(lambda_max)},
                         {"points", std::to_string(points)},
                         {"spacing", spacing}};
    std::vector<std::string> argv{"scan",     "--lambda-min", num(lambda_min),
                                  "--lambda-max", num(lambda_max), "--points",
                                  std::to_string(points), "--spacing", spacing};
    quad.record(config, argv);
    argv.insert(argv.end(), {"--format", output.format});
    config.emplace_back("pc_limit", fmt::format("{:.17g}", limit));

    Table table{{"lambda", "u_mid_scaled", "err"}, {}};
    for (const auto& p : scan) table.rows.push_back({p.lambda, p.u_mid_scaled, p.err});

    emit(output, out, [&](std::ostream& os) {
      if (output.format == "json") {
        Json j = {{"config", config_json(config, argv)},
                  {"rows", rows_json(table)},
                  {"reference", {{"lambda", "inf"}, {"u_mid_scaled", limit}}},
                  {"checks", Json::array()}};
        os << j.dump(2) << '\n';
      } else {
        // Perfect-conductor limit as the lambda -> inf reference row.
        write_csv(os, config, argv, table, {fmt::format("inf,{:.17g},0", limit)});
      }
    });
    return kSuccess;
  }
};

// --------------------------------------------------------------- critical

struct CriticalCommand {
  double lo = 50.0;
  double hi = 200.0;
  double tol = 0.5;
  std::optional<double> wp_ev;
  QuadratureOptions quad;
  OutputOptions output;

  int run(std::ostream& out) const {
    const double lambda_c = critical_lambda(quad.cfg, {lo, hi}, tol);
    std::optional<double> a_c;
    if (wp_ev) a_c = critical_separation_physical(lambda_c, *wp_ev);

    emit(output, out, [&](std::ostream& os) {
      if (output.format == "json") {
        Json config = {{"command", "critical"}, {"lambda_lo", lo}, {"lambda_hi", hi}, {"tol", tol}};
        Json row = {{"lambda_c", lambda_c}};
        if (a_c) {
          config["wp_ev"] = *wp_ev;
          row["a_c_um"] = *a_c;
        }
        Json j = {{"config", config}, {"rows", Json::array({row})}, {"checks", Json::array()}};
        os << j.dump(2) << '\n';
        return;
      }
      os << fmt::format("lambda_c = {:.4f}  (wp a at which U(a/2) changes sign, bracket [{}, {}], "
                        "tol {})\n",
                        lambda_c, lo, hi, tol);
      if (a_c) os << fmt::format("a_c = {:.4f} um  (wp = {} eV)\n", *a_c, *wp_ev);
    });
    return kSuccess;
  }
};

// ----------------------------------------------------------------- limits

struct Check {
  std::string name;
  double value;
  double reference;
  double tolerance;

  double deviation() const { return std::abs(value / reference - 1.0); }
  bool passed() const { return std::isfinite(value) && deviation() <= tolerance; }
};

struct LimitsCommand {
  std::optional<double> tolerance;
  bool json = false;
  double wp = 1.0;
  QuadratureOptions quad;
  OutputOptions output;

  std::vector<Check> run_checks() const {
    std::vector<Check> checks;
    const QuadratureConfig& cfg = quad.cfg;
    const double tol_u = tolerance.value_or(0.01);
    const double tol_b = tolerance.value_or(0.05);

    const auto drude = DielectricModel::drude(wp);
    const auto single = Geometry::single_interface();
    const auto asym = near_wall_asymptotes(drude);
    for (double x : {1e-3, 1e-4}) {
      const double z = x / wp;
      const auto u = integrate_field(FieldKind::EnergyDensity, single, drude, z, cfg);
      const auto e2 = integrate_field(FieldKind::ESquared, single, drude, z, cfg);
      const auto b2 = integrate_field(FieldKind::BSquared, single, drude, z, cfg);
      checks.push_back({fmt::format("near_wall_u[wp*z={}]", x), u.value, asym.energy.evaluate(z), tol_u});
      checks.push_back({fmt::format("near_wall_e2[wp*z={}]", x), e2.value, asym.e2.evaluate(z), tol_u});
      checks.push_back({fmt::format("near_wall_b2[wp*z={}]", x), b2.value, asym.b2.evaluate(z), tol_b});
    }

    const auto pc = DielectricModel::perfect_conductor();
    const auto gap = Geometry::cavity(1.0);
    for (double z : {0.1, 0.5}) {
      const auto u = integrate_field(FieldKind::EnergyDensity, gap, pc, z, cfg);
      const auto e2 = integrate_field(FieldKind::ESquared, gap, pc, z, cfg);
      const auto b2 = integrate_field(FieldKind::BSquared, gap, pc, z, cfg);
      checks.push_back({fmt::format("pc_cavity_u[z/a={}]", z), u.value, pc_cavity_energy(1.0), 1e-6});
      checks.push_back({fmt::format("pc_cavity_e2[z/a={}]", z), e2.value, pc_cavity_e2(z, 1.0), 1e-5});
      checks.push_back({fmt::format("pc_cavity_b2[z/a={}]", z), b2.value, pc_cavity_b2(z, 1.0), 1e-5});
    }
    for (double z : {0.5, 1.0, 2.0}) {
      const auto e2 = integrate_field(FieldKind::ESquared, single, pc, z, cfg);
      const auto b2 = integrate_field(FieldKind::BSquared, single, pc, z, cfg);
      checks.push_back({fmt::format("pc_single_e2[z={}]", z), e2.value, pc_single_e2(z), 1e-5});
      checks.push_back({fmt::format("pc_single_b2[z={}]", z), b2.value, pc_single_b2(z), 1e-5});
    }
    for (double x : {0.25, 1.0 / 3.0, 0.5}) {
      checks.push_back({fmt::format("polygamma3_reflection[x={:.4f}]", x),
                        polygamma3(x) + polygamma3(1.0 - x), polygamma3_reflection(x), 1e-10});
    }
    for (double x : {0.05, 0.2, 0.7}) {
      checks.push_back({fmt::format("pc_profile_routes[z/a={}]", x),
                        pc_cavity_e2_polygamma(x, 1.0), pc_cavity_e2(x, 1.0), 1e-10});
    }
    checks.push_back({"casimir_polder[z=1,alpha0=1]", casimir_polder(1.0, 1.0),
                      -3.0 / (32.0 * std::numbers::pi * std::numbers::pi), 1e-14});
    return checks;
  }

  int run(std::ostream& out) const {
    if (tolerance && !(*tolerance > 0.0)) {
      throw DomainError(fmt::format("--tolerance must be positive, got {}", *tolerance));
    }
    const auto checks = run_checks();
    bool all = true;
    for (const auto& c : checks) all = all && c.passed();

    const bool as_json = json || output.format == "json";
    emit(output, out, [&](std::ostream& os) {
      if (as_json) {
        Json arr = Json::array();
        for (const auto& c : checks) {
          arr.push_back({{"name", c.name},
                         {"passed", c.passed()},
                         {"value", c.value},
                         {"reference", c.reference},
                         {"deviation", c.deviation()},
                         {"tolerance", c.tolerance}});
        }
        Json config = {{"command", "limits"}, {"wp", wp}};
        if (tolerance) config["tolerance"] = *tolerance;
        Json j = {{"config", config}, {"rows", Json::array()}, {"checks", arr}, {"passed", all}};
        os << j.dump(2) << '\n';
        return;
      }
      for (const auto& c : checks) {
        os << fmt::format("{} {:<36} value={:.10e} reference={:.10e} deviation={:.2e} tol={:.0e}\n",
                          c.passed() ? "PASS" : "FAIL", c.name, c.value, c.reference,
                          c.deviation(), c.tolerance);
      }
      os << (all ? "all checks passed\n" : "some checks FAILED\n");
    });
    return all ? kSuccess : kCheckFailure;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vacuum field fluctuations and energy density near dispersive half-spaces",
               "casimir"};
  app.require_subcommand(1);

  ProfileCommand profile_cmd;
  auto* profile = app.add_subcommand("profile", "Spatial profile of <E^2>, <B^2>, U");
  profile->add_option("--geometry", profile_cmd.geometry, "single or cavity")
      ->check(CLI::IsMember({"single", "cavity"}))
      ->capture_default_str();
  profile->add_option("--a", profile_cmd.a, "Gap width (cavity)")->capture_default_str();
  profile->add_option("--zmin", profile_cmd.zmin, "First z (single interface)")->capture_default_str();
  profile->add_option("--zmax", profile_cmd.zmax, "Last z (single interface)")->capture_default_str();
  profile->add_option("--points", profile_cmd.points, "Number of z points")->capture_default_str();
  profile->add_option("--margin", profile_cmd.margin, "Wall margin as a fraction of a (cavity)")
      ->capture_default_str();
  add_model_options(profile, profile_cmd.model);
  add_quadrature_options(profile, profile_cmd.quad);
  add_output_options(profile, profile_cmd.output);

  ScanCommand scan_cmd;
  auto* scan = app.add_subcommand("scan", "Midgap U a^4 as a function of wp a (Drude)");
  scan->add_option("--lambda-min", scan_cmd.lambda_min, "Smallest wp a")->capture_default_str();
  scan->add_option("--lambda-max", scan_cmd.lambda_max, "Largest wp a")->capture_default_str();
  scan->add_option("--points", scan_cmd.points, "Number of grid points")->capture_default_str();
  scan->add_option("--spacing", scan_cmd.spacing, "log or linear")
      ->check(CLI::IsMember({"log", "linear"}))
      ->capture_default_str();
  add_quadrature_options(scan, scan_cmd.quad);
  add_output_options(scan, scan_cmd.output);

  CriticalCommand critical_cmd;
  auto* critical = app.add_subcommand("critical", "wp a at which the midgap U changes sign");
  critical->add_option("--lambda-lo", critical_cmd.lo, "Bracket low end")->capture_default_str();
  critical->add_option("--lambda-hi", critical_cmd.hi, "Bracket high end")->capture_default_str();
  critical->add_option("--tol", critical_cmd.tol, "Bisection tolerance in wp a")->capture_default_str();
  critical->add_option("--wp-ev", critical_cmd.wp_ev, "Plasma frequency in eV; reports a_c in um");
  add_quadrature_options(critical, critical_cmd.quad);
  critical->add_option("--format", critical_cmd.output.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  critical->add_option("-o,--output", critical_cmd.output.path, "Output file (default: stdout)");
  critical_cmd.output.format = "text";

  LimitsCommand limits_cmd;
  auto* limits = app.add_subcommand("limits", "Asymptote and closed-form oracle battery");
  limits->add_option("--tolerance", limits_cmd.tolerance,
                     "Override the relative band of the near-wall asymptote checks");
  limits->add_option("--wp", limits_cmd.wp, "Drude plasma frequency for near-wall checks")
      ->capture_default_str();
  limits->add_flag("--json", limits_cmd.json, "Machine-readable report");
  add_quadrature_options(limits, limits_cmd.quad);
  limits->add_option("-o,--output", limits_cmd.output.path, "Output file (default: stdout)");
  limits_cmd.output.format = "text";

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << app.help();
    return kUsageError;
  }

  try {
    if (profile->parsed()) return profile_cmd.run(out);
    if (scan->parsed()) return scan_cmd.run(out);
    if (critical->parsed()) return critical_cmd.run(out);
    if (limits->parsed()) return limits_cmd.run(out);
  } catch (const NoSignChange& e) {
    err << "NoSignChange: " << e.what() << '\n';
    return kUsageError;
  } catch (const NonConvergence& e) {
    err << "NonConvergence: " << e.what() << '\n';
    return kCheckFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace casimir::cli
