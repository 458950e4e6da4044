#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "apsum/errors.hpp"
#include "apsum/experiment.hpp"

using namespace apsum;

namespace {

std::string field_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<no error>";
}

ExperimentConfig small_config() {
  return ExperimentConfig::from_json(json::parse(R"({
    "spectrum": {"builtin": "smooth"},
    "matrix": {"type": "cesaro"},
    "majorant": {"type": "power", "C": 1, "gamma": 1},
    "theorem": "thm6", "q": 2, "n_range": [1, 16], "x": [0.0, 0.7]
  })"));
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("builtin spectra") {
  CHECK(builtin_spectrum("constant")(3.3) == 1.0);
  CHECK(builtin_spectrum("smooth")(0.0) == doctest::Approx(1.1));
  CHECK(builtin_spectrum("lacunary").max_lambda() == 1024.0);
  const auto irr = builtin_spectrum("irrational");
  CHECK(validate_spectrum(irr.spectrum()).valid());
  CHECK_FALSE(common_period(irr.spectrum()));
  for (const auto& name : builtin_spectrum_names()) {
    CHECK(validate_spectrum(builtin_spectrum(name).spectrum()).valid());
  }
  CHECK(field_of([] { builtin_spectrum("nope"); }) == "spectrum");
}

TEST_CASE("builtin matrices") {
  const auto ces = builtin_matrix("cesaro");
  CHECK(ces.row(2) == Row{1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto osc = builtin_matrix("osc-gm2", {{"c", 2.0}});
  CHECK_FALSE(is_ms(osc.row(5)));
  const auto riesz = builtin_matrix("riesz", {{"weights", {1, 1, 2}}});
  CHECK(riesz.row(2)[2] == doctest::Approx(0.5));
  CHECK(field_of([] { builtin_matrix("bogus"); }) == "matrix");
  CHECK(field_of([] { builtin_matrix("osc-gm2", {{"threshold", 1.0}}); }) == "matrix");
}

TEST_CASE("file formats") {
  const auto s = spectrum_from_json(json::parse(
      R"({"alpha": 1, "entries": [{"lambda": 0, "cos": 2}, {"lambda": 3, "cos": 1, "sin": -1}]})"));
  CHECK(s.terms.size() == 2);
  CHECK(s.terms[1].sin_coeff == -1.0);
  CHECK(spectrum_from_json(spectrum_to_json(s)).terms[1].lambda == 3.0);
  CHECK(field_of([] { spectrum_from_json(json::parse(R"({"entries": []})")); }) == "spectrum.alpha");

  const auto m = matrix_from_json(json::parse(R"({"type": "explicit", "rows": [[1], [0.5, 0.5]]})"));
  CHECK(m.row_count() == 2u);
  CHECK(field_of([] { matrix_from_json(json::parse(R"({"type": "explicit", "rows": [[0.5]]})")); }) ==
        "matrix");
  CHECK(matrix_from_json(json::parse(R"({"type": "riesz", "params": {"power": 2}})")).row(1)[1] ==
        doctest::Approx(0.8));

  const auto w = majorant_from_json(json::parse(R"({"type": "table", "knots": [[1, 1], [3, 2]]})"));
  CHECK(w(2.0) == doctest::Approx(1.5));
  CHECK(majorant_from_json(majorant_to_json(w))(2.0) == doctest::Approx(1.5));
  CHECK(field_of([] { majorant_from_json(json::parse(R"({"type": "power", "C": 1, "gamma": 2})")); }) ==
        "majorant.gamma");
  CHECK(field_of([] { majorant_from_json(json::parse(R"({"type": "cubic"})")); }) == "majorant.type");

  const auto q = quadrature_from_json(json::parse(R"({"tail": "bound", "rel_tol": 1e-8})"));
  CHECK(q.tail == TailMode::bound);
  CHECK(quadrature_from_json(quadrature_to_json(q)).rel_tol == 1e-8);
  CHECK(field_of([] { grid_from_json(json::parse(R"({"u_samples": 0})")); }) == "grid.u_samples");
}

TEST_CASE("config validation names the field") {
  CHECK(field_of([] { resolve(ExperimentConfig::from_json(json::parse(R"({"alpha": 20})"))); }) == "alpha");
  CHECK(field_of([] { resolve(ExperimentConfig::from_json(json::parse(R"({"q": -1})"))); }) == "q");
  CHECK(field_of([] { resolve(ExperimentConfig::from_json(json::parse(R"({"c": 1})"))); }) == "c");
  CHECK(field_of([] { resolve(ExperimentConfig::from_json(json::parse(R"({"p": 1})"))); }) == "p");
  CHECK(field_of([] { ExperimentConfig::from_json(json::parse(R"({"qq": 1})")); }) == "qq");
  CHECK(field_of([] { ExperimentConfig::from_json(json::parse(R"({"n_range": [3]})")); }) == "n_range");
  CHECK(field_of([] { ExperimentConfig::from_json(json::parse(R"({"theorem": "x"})")); }) == "theorem");

  const auto bad_gap = json::parse(
      R"({"spectrum": {"alpha": 1, "entries": [{"lambda": 1, "cos": 1}, {"lambda": 1.5, "cos": 1}]}})");
  CHECK(field_of([&] { resolve(ExperimentConfig::from_json(bad_gap)); }) == "alpha");
  auto allowed = ExperimentConfig::from_json(bad_gap);
  allowed.allow_invalid = true;
  CHECK_FALSE(resolve(allowed).spectrum_report.valid());

  const auto zero_amp = json::parse(R"({"spectrum": {"alpha": 1, "entries": [{"lambda": 1}]}})");
  CHECK(field_of([&] { resolve(ExperimentConfig::from_json(zero_amp)); }) == "spectrum");
}

TEST_CASE("config echo round-trips") {
  auto cfg = small_config();
  cfg.fit = MajorantFit{6, 0.0, 0.0};
  const json echo = cfg.to_json();
  const auto again = ExperimentConfig::from_json(echo);
  CHECK(again.to_json() == echo);

  const auto a = run(cfg);
  const auto b = run(again);
  std::ostringstream ca;
  std::ostringstream cb;
  write_csv(a, ca);
  write_csv(b, cb);
  CHECK(ca.str() == cb.str());
  CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("file references are inlined relative to the config") {
  const auto dir = std::filesystem::temp_directory_path() / "apsum_experiment_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "spec.json") << R"({"alpha": 1, "entries": [{"lambda": 2, "cos": 1}]})";
  std::ofstream(dir / "mat.json") << R"({"type": "explicit", "rows": [[1], [0.5, 0.5], [0.2, 0.3, 0.5]]})";
  std::ofstream(dir / "cfg.json") << R"({"spectrum": {"file": "spec.json"}, "matrix": {"file": "mat.json"},
                                         "n_range": [0, 2]})";
  const auto cfg = ExperimentConfig::from_file((dir / "cfg.json").string());
  CHECK(cfg.spectrum.at("entries").size() == 1);
  CHECK(cfg.matrix.at("rows").size() == 3);
  CHECK(run(cfg).series.records.size() == 3);
  CHECK(field_of([&] { ExperimentConfig::from_json(json::parse(R"({"spectrum": {"file": "missing.json"}})"),
                                                   dir.string()); }) == "spectrum");
  std::filesystem::remove_all(dir);
}

TEST_CASE("run and report formats") {
  const auto report = run(small_config());
  REQUIRE(report.series.records.size() == 16);
  std::ostringstream csv;
  write_csv(report, csv);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,lhs,rhs,ratio,flags");
  std::string first;
  std::getline(lines, first);
  CHECK(first.rfind("1,", 0) == 0);

  const json j = report_to_json(report);
  CHECK(j.at("records").size() == 16);
  CHECK(j.at("config") == small_config().to_json());
  CHECK(j.at("summary").at("max_ratio").get<double>() == report.series.summary.max_ratio);
  REQUIRE(report.series.summary.side_condition_ok);
  CHECK(j.at("summary").at("side_condition_ok") == *report.series.summary.side_condition_ok);

  auto empty = small_config();
  empty.n_min = 1;
  empty.n_max = 0;
  const auto e = run(empty);
  CHECK(e.series.records.empty());
  CHECK(report_to_json(e).at("summary").at("argmax_n").is_null());
  CHECK(report_to_json(e).at("summary").at("side_condition_ok").is_null());
  CHECK(ExperimentConfig::from_json(empty.to_json()).n_min > ExperimentConfig::from_json(empty.to_json()).n_max);
}

TEST_CASE("fitted majorant is rescaled to constant 1") {
  auto cfg = small_config();
  cfg.fit = MajorantFit{8, 0.0, 0.0};
  const auto r = resolve(cfg);
  REQUIRE(r.fit_report);
  const auto plan = SamplePlan::uniform(8, 2.0 * std::numbers::pi);
  for (double x : cfg.xs) {
    CHECK(omega_class_check(r.f, x, r.majorant, cfg.p, plan).constant() <= 1.0 + 1e-12);
  }
}

TEST_CASE("growth_check") {
  RatioSeries s;
  for (std::size_t n = 1; n <= 20; ++n) s.records.push_back({n, 1.0, 1.0, n <= 8 ? 1.0 : 1.5, {}});
  CHECK(growth_check(s).bounded);
  s.records.back().ratio = 2.5;
  CHECK_FALSE(growth_check(s).bounded);
  CHECK_FALSE(growth_check(RatioSeries{}).bounded);
}

}  // TEST_SUITE
