// apsum: command-line front end for the strong-approximation experiments.
//
// Exit codes: 0 ok, 2 validation failure, 3 tolerance failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "apsum/errors.hpp"
#include "apsum/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kTolerance = 3;

using apsum::json;

apsum::ExperimentConfig load_config(const std::string& path, bool allow_invalid) {
  auto cfg = apsum::ExperimentConfig::from_file(path);
  if (allow_invalid) cfg.allow_invalid = true;
  return cfg;
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

int cmd_validate(const std::string& path, bool allow_invalid) {
  const auto cfg = load_config(path, allow_invalid);
  const auto resolved = apsum::resolve(cfg);
  json out = {{"status", "ok"}, {"config", cfg.to_json()}};
  if (!resolved.spectrum_report.valid()) {
    out["spectrum_issues"] = resolved.spectrum_report.summary();
  }
  if (resolved.fit_report) {
    out["fitted_majorant"] = apsum::majorant_to_json(resolved.majorant);
  }
  std::cout << out.dump(2) << '\n';
  return kOk;
}

int cmd_classes(const std::string& path, const std::string& cls, double c, double threshold,
                std::optional<std::size_t> rows) {
  const auto matrix = apsum::matrix_from_json(apsum::read_json_file(path, "matrix"));
  std::size_t n_max = rows ? *rows : 63;
  if (matrix.row_count()) {
    if (*matrix.row_count() == 0) throw apsum::ValidationError("matrix", "no rows");
    n_max = std::min(n_max, *matrix.row_count() - 1);
    if (!rows) n_max = *matrix.row_count() - 1;
  }

  std::vector<apsum::SequenceClass> classes;
  if (cls == "all") {
    classes = {apsum::SequenceClass::ms, apsum::SequenceClass::rbvs, apsum::SequenceClass::gm,
               apsum::SequenceClass::gm2};
  } else {
    classes = {apsum::sequence_class_from_string(cls)};
  }

  json out = json::array();
  for (auto k : classes) {
    const auto r = apsum::class_membership(matrix, k, threshold, 0, n_max, c);
    out.push_back({{"class", apsum::to_string(k)},
                   {"rows", {0, n_max}},
                   {"c", c},
                   {"threshold", finite_or_string(threshold)},
                   {"sup_constant", finite_or_string(r.sup_constant)},
                   {"member", r.member},
                   {"side_condition_ok", r.side_condition_ok}});
  }
  std::cout << out.dump(2) << '\n';
  return kOk;
}

int cmd_strong_mean(const std::string& path, bool allow_invalid) {
  const auto cfg = load_config(path, allow_invalid);
  const auto r = apsum::resolve(cfg);
  std::cout << "n,x,strong_mean\n";
  std::cout.precision(17);
  for (std::size_t n = cfg.n_min; n <= cfg.n_max && cfg.n_min <= cfg.n_max; ++n) {
    for (double x : cfg.xs) {
      const double v = cfg.theorem == apsum::Theorem::prop4
                           ? apsum::dyadic_strong_mean(r.f, x, n, r.params)
                           : apsum::strong_mean(r.f, x, *r.matrix, n, r.params);
      std::cout << n << ',' << x << ',' << v << '\n';
    }
  }
  return kOk;
}

int exit_for(const apsum::ExperimentReport& report) {
  return report.series.summary.tolerance_failures > 0 ? kTolerance : kOk;
}

int cmd_verify(const std::string& path, const std::string& theorem, bool allow_invalid) {
  auto cfg = load_config(path, allow_invalid);
  cfg.theorem = apsum::theorem_from_string(theorem);
  const auto report = apsum::run(cfg);
  const json j = apsum::report_to_json(report);
  std::cout << json{{"majorant", j["majorant"]}, {"summary", j["summary"]}}.dump(2) << '\n';
  return exit_for(report);
}

int cmd_report(const std::string& path, std::string out_dir, bool allow_invalid) {
  const auto cfg = load_config(path, allow_invalid);
  if (out_dir.empty()) out_dir = cfg.output;
  if (out_dir.empty()) throw apsum::ValidationError("output", "no output directory given");
  const auto report = apsum::run(cfg);

  std::filesystem::create_directories(out_dir);
  const auto dir = std::filesystem::path(out_dir);
  {
    std::ofstream csv(dir / "report.csv");
    apsum::write_csv(report, csv);
  }
  {
    std::ofstream js(dir / "report.json");
    js << apsum::report_to_json(report).dump(2) << '\n';
  }
  std::cout << (dir / "report.csv").string() << '\n' << (dir / "report.json").string() << '\n';
  return exit_for(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong approximation experiments for quasi-periodic functions"};
  app.require_subcommand(1);
  bool allow_invalid = false;
  app.add_flag("--allow-invalid", allow_invalid, "accept spectra that fail validation");

  std::string config;
  auto* validate = app.add_subcommand("validate", "check a config and print its normalized echo");
  validate->add_option("config", config, "experiment config (JSON)")->required();

  std::string matrix_file;
  std::string cls = "all";
  double c = 2.0;
  double threshold = std::numeric_limits<double>::infinity();
  std::optional<std::size_t> rows;
  auto* classes = app.add_subcommand("classes", "per-row class constants of a matrix file");
  classes->add_option("matrix", matrix_file, "matrix file (JSON)")->required();
  classes->add_option("--class", cls, "ms|rbvs|gm|gm2 (default: all)");
  classes->add_option("--c", c, "c > 1 for gm2");
  classes->add_option("--threshold", threshold, "membership threshold K");
  classes->add_option("--rows", rows, "check rows 0..N (default: all explicit rows, or 63)");

  auto* strong = app.add_subcommand("strong-mean", "print H^q_n f(x) over the config's n_range");
  strong->add_option("config", config)->required();

  std::string theorem;
  auto* verify = app.add_subcommand("verify", "ratio sweep for one theorem; prints the summary");
  verify->add_option("config", config)->required();
  verify->add_option("--theorem", theorem, "prop4|thm2|thm5|thm6")->required();

  std::string out_dir;
  auto* report = app.add_subcommand("report", "write report.csv and report.json");
  report->add_option("config", config)->required();
  report->add_option("--out", out_dir, "output directory (default: config 'output')");

  for (auto* sub : {validate, strong, verify, report}) {
    sub->add_flag("--allow-invalid", allow_invalid, "accept spectra that fail validation");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*validate) return cmd_validate(config, allow_invalid);
    if (*classes) return cmd_classes(matrix_file, cls, c, threshold, rows);
    if (*strong) return cmd_strong_mean(config, allow_invalid);
    if (*verify) return cmd_verify(config, theorem, allow_invalid);
    if (*report) return cmd_report(config, out_dir, allow_invalid);
  } catch (const apsum::ValidationError& e) {
    std::cerr << "validation error [" << e.field() << "]: " << e.what() << '\n';
    return kValidation;
  } catch (const apsum::ToleranceError& e) {
    std::cerr << "tolerance error: " << e.what() << " (estimate " << e.estimate() << ", budget "
              << e.budget() << ")\n";
    return kTolerance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}
