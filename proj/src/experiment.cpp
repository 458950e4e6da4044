#include "apsum/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>

#include "apsum/errors.hpp"

namespace apsum {

namespace {

constexpr double kPi = std::numbers::pi;

double number(const json& j, const std::string& key, const std::string& field) {
  if (!j.contains(key)) throw ValidationError(field, "missing '" + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw ValidationError(field, "'" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback,
                 const std::string& field) {
  return j.contains(key) ? number(j, key, field) : fallback;
}

std::size_t count_or(const json& j, const std::string& key, std::size_t fallback,
                     const std::string& field) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ValidationError(field, "must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::string string_or(const json& j, const std::string& key, const std::string& fallback,
                      const std::string& field) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw ValidationError(field, "must be a string");
  return j.at(key).get<std::string>();
}

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) throw ValidationError(field, "must be a JSON object");
}

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const std::string& prefix) {
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ValidationError(prefix + key, "unknown field");
  }
}

std::vector<double> number_array(const json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field, "must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ValidationError(field, "must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string resolve_path(const std::string& path, const std::string& base_dir) {
  std::filesystem::path p(path);
  if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
  return p.lexically_normal().string();
}

// Replaces {"file": path} by the file's contents.
json inline_file(const json& spec, const std::string& base_dir, const std::string& field) {
  if (spec.is_object() && spec.contains("file")) {
    if (!spec.at("file").is_string()) throw ValidationError(field, "'file' must be a string");
    return read_json_file(resolve_path(spec.at("file").get<std::string>(), base_dir), field);
  }
  return spec;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json number_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

// ---- built-ins ---------------------------------------------------------------

QuasiPeriodicFunction builtin_spectrum(const std::string& name) {
  Spectrum s;
  s.alpha = 1.0;
  if (name == "smooth") {
    s.terms = {{1.0, 1.0, 0.0}, {10.0, 0.1, 0.0}};
  } else if (name == "lacunary") {
    for (int j = 0; j <= 10; ++j) s.terms.push_back({std::ldexp(1.0, j), std::ldexp(1.0, -j), 0.0});
  } else if (name == "irrational") {
    // sqrt(2) pi ~ 4.443 is incommensurable with 1 and clears the gap.
    s.terms = {{1.0, 1.0, 0.0}, {std::numbers::sqrt2 * kPi, 0.5, 0.0}};
  } else if (name == "constant") {
    s.terms = {{0.0, 1.0, 0.0}};
  } else {
    throw ValidationError("spectrum", "unknown builtin spectrum '" + name + "'");
  }
  return QuasiPeriodicFunction(std::move(s));
}

std::vector<std::string> builtin_spectrum_names() {
  return {"smooth", "lacunary", "irrational", "constant"};
}

SummabilityMatrix builtin_matrix(const std::string& name, const json& params) {
  require_object(params, "matrix.params");
  if (name == "cesaro") {
    reject_unknown(params, {}, "matrix.params.");
    return cesaro_matrix();
  }
  if (name == "riesz") {
    reject_unknown(params, {"weights", "power"}, "matrix.params.");
    if (params.contains("weights")) {
      return riesz_matrix(number_array(params.at("weights"), "matrix.params.weights"));
    }
    return riesz_power_matrix(number_or(params, "power", 1.0, "matrix.params.power"));
  }
  if (name == "osc-gm2") {
    reject_unknown(params, {"c", "threshold", "verify_rows"}, "matrix.params.");
    OscGm2Options opt;
    opt.c = number_or(params, "c", opt.c, "matrix.params.c");
    opt.threshold = number_or(params, "threshold", opt.threshold, "matrix.params.threshold");
    opt.verify_rows = count_or(params, "verify_rows", opt.verify_rows, "matrix.params.verify_rows");
    return osc_gm2_matrix(opt);
  }
  throw ValidationError("matrix", "unknown builtin matrix '" + name + "'");
}

// ---- file formats --------------------------------------------------------------

Spectrum spectrum_from_json(const json& j) {
  require_object(j, "spectrum");
  reject_unknown(j, {"alpha", "entries"}, "spectrum.");
  Spectrum s;
  s.alpha = number(j, "alpha", "spectrum.alpha");
  if (!j.contains("entries") || !j.at("entries").is_array()) {
    throw ValidationError("spectrum.entries", "must be an array");
  }
  for (const auto& e : j.at("entries")) {
    require_object(e, "spectrum.entries");
    reject_unknown(e, {"lambda", "cos", "sin"}, "spectrum.entries.");
    SpectralTerm t;
    t.lambda = number(e, "lambda", "spectrum.entries.lambda");
    t.cos_coeff = number_or(e, "cos", 0.0, "spectrum.entries.cos");
    t.sin_coeff = number_or(e, "sin", 0.0, "spectrum.entries.sin");
    s.terms.push_back(t);
  }
  return s;
}

json spectrum_to_json(const Spectrum& s) {
  json entries = json::array();
  for (const auto& t : s.terms) {
    entries.push_back({{"lambda", t.lambda}, {"cos", t.cos_coeff}, {"sin", t.sin_coeff}});
  }
  return {{"alpha", s.alpha}, {"entries", entries}};
}

SummabilityMatrix matrix_from_json(const json& j) {
  require_object(j, "matrix");
  const std::string type = string_or(j, "type", "", "matrix.type");
  if (type.empty()) throw ValidationError("matrix.type", "missing");
  if (type == "explicit") {
    reject_unknown(j, {"type", "rows"}, "matrix.");
    if (!j.contains("rows") || !j.at("rows").is_array()) {
      throw ValidationError("matrix.rows", "must be an array of rows");
    }
    std::vector<Row> rows;
    for (const auto& r : j.at("rows")) rows.push_back(number_array(r, "matrix.rows"));
    auto m = SummabilityMatrix::from_rows(std::move(rows));
    for (std::size_t n = 0; n < *m.row_count(); ++n) m.row(n);  // validate every row now
    return m;
  }
  reject_unknown(j, {"type", "params"}, "matrix.");
  return builtin_matrix(type, j.value("params", json::object()));
}

ModulusMajorant majorant_from_json(const json& j) {
  require_object(j, "majorant");
  const std::string type = string_or(j, "type", "", "majorant.type");
  if (type == "power") {
    reject_unknown(j, {"type", "C", "gamma", "fit"}, "majorant.");
    return ModulusMajorant::power(number(j, "C", "majorant.C"),
                                  number(j, "gamma", "majorant.gamma"));
  }
  if (type == "table") {
    reject_unknown(j, {"type", "knots", "fit"}, "majorant.");
    if (!j.contains("knots") || !j.at("knots").is_array()) {
      throw ValidationError("majorant.knots", "must be an array of [delta, w] pairs");
    }
    std::vector<ModulusMajorant::Knot> knots;
    for (const auto& k : j.at("knots")) {
      const auto pair = number_array(k, "majorant.knots");
      if (pair.size() != 2) throw ValidationError("majorant.knots", "knots are [delta, w] pairs");
      knots.emplace_back(pair[0], pair[1]);
    }
    return ModulusMajorant::table(std::move(knots));
  }
  throw ValidationError("majorant.type", "must be 'power' or 'table'");
}

json majorant_to_json(const ModulusMajorant& w) {
  if (w.kind() == ModulusMajorant::Kind::power) {
    return {{"type", "power"}, {"C", w.coefficient()}, {"gamma", w.exponent()}};
  }
  json knots = json::array();
  for (const auto& [d, v] : w.knots()) {
    if (d > 0.0) knots.push_back({d, v});
  }
  return {{"type", "table"}, {"knots", knots}};
}

QuadratureConfig quadrature_from_json(const json& j) {
  require_object(j, "quadrature");
  reject_unknown(j, {"truncation_T", "panels_per_oscillation", "rel_tol", "abs_tol", "tail"},
                 "quadrature.");
  QuadratureConfig cfg;
  cfg.truncation_T = number_or(j, "truncation_T", cfg.truncation_T, "quadrature.truncation_T");
  cfg.panels_per_oscillation = static_cast<int>(count_or(
      j, "panels_per_oscillation", static_cast<std::size_t>(cfg.panels_per_oscillation),
      "quadrature.panels_per_oscillation"));
  cfg.rel_tol = number_or(j, "rel_tol", cfg.rel_tol, "quadrature.rel_tol");
  cfg.abs_tol = number_or(j, "abs_tol", cfg.abs_tol, "quadrature.abs_tol");
  const auto tail = string_or(j, "tail", "exact", "quadrature.tail");
  if (tail == "exact") {
    cfg.tail = TailMode::exact;
  } else if (tail == "bound") {
    cfg.tail = TailMode::bound;
  } else {
    throw ValidationError("quadrature.tail", "must be 'exact' or 'bound'");
  }
  cfg.validate();
  return cfg;
}

json quadrature_to_json(const QuadratureConfig& cfg) {
  return {{"truncation_T", cfg.truncation_T},
          {"panels_per_oscillation", cfg.panels_per_oscillation},
          {"rel_tol", cfg.rel_tol},
          {"abs_tol", cfg.abs_tol},
          {"tail", cfg.tail == TailMode::exact ? "exact" : "bound"}};
}

WindowGrid grid_from_json(const json& j) {
  require_object(j, "grid");
  reject_unknown(j, {"u_samples", "u_span", "panels_per_window", "t_samples"}, "grid.");
  WindowGrid g;
  g.u_samples = count_or(j, "u_samples", g.u_samples, "grid.u_samples");
  g.u_span = number_or(j, "u_span", g.u_span, "grid.u_span");
  g.panels_per_window = count_or(j, "panels_per_window", g.panels_per_window,
                                 "grid.panels_per_window");
  g.t_samples = count_or(j, "t_samples", g.t_samples, "grid.t_samples");
  g.validate();
  return g;
}

json grid_to_json(const WindowGrid& g) {
  return {{"u_samples", g.u_samples},
          {"u_span", g.u_span},
          {"panels_per_window", g.panels_per_window},
          {"t_samples", g.t_samples}};
}

json read_json_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ValidationError(field, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(field, "invalid JSON in '" + path + "': " + e.what());
  }
}

// ---- experiment config -----------------------------------------------------------

ExperimentConfig ExperimentConfig::from_json(const json& j, const std::string& base_dir) {
  require_object(j, "config");
  reject_unknown(j,
                 {"spectrum", "matrix", "majorant", "p", "q", "c", "alpha", "n_range", "x",
                  "x_samples", "theorem", "thm5_exponent", "route", "quadrature", "grid",
                  "class_threshold", "output", "allow_invalid"},
                 "");
  ExperimentConfig cfg;

  if (j.contains("spectrum")) {
    json s = inline_file(j.at("spectrum"), base_dir, "spectrum");
    if (s.is_string()) s = {{"builtin", s}};
    require_object(s, "spectrum");
    if (s.contains("builtin")) {
      reject_unknown(s, {"builtin"}, "spectrum.");
      builtin_spectrum(string_or(s, "builtin", "", "spectrum.builtin"));  // name check
    } else {
      spectrum_from_json(s);  // shape check
    }
    cfg.spectrum = s;
  }

  if (j.contains("matrix")) {
    json m = inline_file(j.at("matrix"), base_dir, "matrix");
    if (m.is_string()) m = {{"type", m}};
    require_object(m, "matrix");
    if (m.contains("builtin")) {  // alias of "type"
      m["type"] = m.at("builtin");
      m.erase("builtin");
    }
    cfg.matrix = m;
  }

  if (j.contains("majorant")) {
    json w = j.at("majorant");
    require_object(w, "majorant");
    if (w.contains("fit")) {
      const json& f = w.at("fit");
      require_object(f, "majorant.fit");
      reject_unknown(f, {"samples", "max", "p"}, "majorant.fit.");
      MajorantFit fit;
      fit.samples = count_or(f, "samples", fit.samples, "majorant.fit.samples");
      fit.max = number_or(f, "max", fit.max, "majorant.fit.max");
      fit.p = number_or(f, "p", fit.p, "majorant.fit.p");
      if (fit.samples == 0) throw ValidationError("majorant.fit.samples", "must be > 0");
      cfg.fit = fit;
      w.erase("fit");
    }
    majorant_from_json(w);
    cfg.majorant = w;
  }

  cfg.p = number_or(j, "p", cfg.p, "p");
  cfg.q = number_or(j, "q", cfg.q, "q");
  cfg.c = number_or(j, "c", cfg.c, "c");
  if (j.contains("alpha") && !j.at("alpha").is_null()) cfg.alpha = number(j, "alpha", "alpha");

  if (j.contains("n_range")) {
    const auto r = number_array(j.at("n_range"), "n_range");
    if (r.empty()) {
      cfg.n_min = 1;
      cfg.n_max = 0;
    } else if (r.size() == 2 && r[0] >= 0 && r[1] >= 0 && r[0] == std::floor(r[0]) &&
               r[1] == std::floor(r[1])) {
      cfg.n_min = static_cast<std::size_t>(r[0]);
      cfg.n_max = static_cast<std::size_t>(r[1]);
    } else {
      throw ValidationError("n_range", "must be [] or [n_min, n_max] with integers >= 0");
    }
  }

  if (j.contains("x") && j.contains("x_samples")) {
    throw ValidationError("x_samples", "give either 'x' or 'x_samples'");
  }
  if (j.contains("x")) {
    cfg.xs = j.at("x").is_number() ? std::vector<double>{j.at("x").get<double>()}
                                   : number_array(j.at("x"), "x");
    if (cfg.xs.empty()) throw ValidationError("x", "at least one sample is required");
  } else if (j.contains("x_samples")) {
    const std::size_t n = count_or(j, "x_samples", 0, "x_samples");
    if (n == 0) throw ValidationError("x_samples", "must be > 0");
    cfg.xs.clear();
    for (std::size_t i = 0; i < n; ++i) {
      cfg.xs.push_back(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
    }
  }

  cfg.theorem = theorem_from_string(string_or(j, "theorem", to_string(cfg.theorem), "theorem"));
  const auto exponent = string_or(j, "thm5_exponent", "floor", "thm5_exponent");
  if (exponent == "floor") {
    cfg.thm5_exponent = Thm5Exponent::floor;
  } else if (exponent == "literal") {
    cfg.thm5_exponent = Thm5Exponent::literal;
  } else {
    throw ValidationError("thm5_exponent", "must be 'floor' or 'literal'");
  }
  const auto route = string_or(j, "route", "direct", "route");
  if (route == "direct") {
    cfg.route = PartialSumRoute::direct;
  } else if (route == "kernel") {
    cfg.route = PartialSumRoute::kernel;
  } else {
    throw ValidationError("route", "must be 'direct' or 'kernel'");
  }
  if (j.contains("quadrature")) cfg.quadrature = quadrature_from_json(j.at("quadrature"));
  if (j.contains("grid")) cfg.grid = grid_from_json(j.at("grid"));
  cfg.class_threshold = number_or(j, "class_threshold", cfg.class_threshold, "class_threshold");
  cfg.output = string_or(j, "output", "", "output");
  if (j.contains("allow_invalid")) {
    if (!j.at("allow_invalid").is_boolean()) {
      throw ValidationError("allow_invalid", "must be true or false");
    }
    cfg.allow_invalid = j.at("allow_invalid").get<bool>();
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  const json j = read_json_file(path, "config");
  const auto base = std::filesystem::path(path).parent_path().string();
  return from_json(j, base.empty() ? "." : base);
}

json ExperimentConfig::to_json() const {
  json w = majorant;
  if (fit) w["fit"] = {{"samples", fit->samples}, {"max", fit->max}, {"p", fit->p}};
  json j = {{"spectrum", spectrum},
            {"matrix", matrix},
            {"majorant", w},
            {"p", p},
            {"q", q},
            {"c", c},
            {"alpha", alpha ? json(*alpha) : json(nullptr)},
            {"n_range", n_min > n_max ? json::array() : json::array({n_min, n_max})},
            {"x", xs},
            {"theorem", apsum::to_string(theorem)},
            {"thm5_exponent", thm5_exponent == Thm5Exponent::floor ? "floor" : "literal"},
            {"route", route == PartialSumRoute::direct ? "direct" : "kernel"},
            {"quadrature", quadrature_to_json(quadrature)},
            {"grid", grid_to_json(grid)},
            {"class_threshold", class_threshold},
            {"output", output},
            {"allow_invalid", allow_invalid}};
  return j;
}

// ---- running ---------------------------------------------------------------------

ResolvedExperiment resolve(const ExperimentConfig& cfg) {
  ResolvedExperiment r;

  Spectrum spectrum = cfg.spectrum.contains("builtin")
                          ? builtin_spectrum(cfg.spectrum.at("builtin").get<std::string>()).spectrum()
                          : spectrum_from_json(cfg.spectrum);
  if (cfg.alpha) spectrum.alpha = *cfg.alpha;
  r.spectrum_report = validate_spectrum(spectrum);
  if (!r.spectrum_report.valid() && !cfg.allow_invalid) {
    const bool alpha_issue = r.spectrum_report.has(SpectrumIssueKind::gap) ||
                             r.spectrum_report.has(SpectrumIssueKind::bad_alpha);
    throw ValidationError(alpha_issue ? "alpha" : "spectrum", r.spectrum_report.summary());
  }
  r.f = QuasiPeriodicFunction(std::move(spectrum));

  r.params.q = cfg.q;
  r.params.alpha = r.f.alpha();
  r.params.c = cfg.c;
  r.params.thm5_exponent = cfg.thm5_exponent;
  r.params.route = cfg.route;
  r.params.quadrature = cfg.quadrature;
  r.params.validate();
  if (!(cfg.p > 1.0)) throw ValidationError("p", "must be > 1");
  cfg.grid.validate();

  if (cfg.theorem != Theorem::prop4) r.matrix = matrix_from_json(cfg.matrix);

  const ModulusMajorant base = majorant_from_json(cfg.majorant);
  if (cfg.fit) {
    const double max = cfg.fit->max > 0.0 ? cfg.fit->max : 2.0 * kPi;
    const double p = cfg.fit->p > 0.0 ? cfg.fit->p : cfg.p;
    const auto plan = SamplePlan::uniform(cfg.fit->samples, max);
    OmegaClassReport worst;
    for (double x : cfg.xs) {
      const auto report = omega_class_check(r.f, x, base, p, plan);
      if (report.constant() >= worst.constant()) worst = report;
    }
    if (!std::isfinite(worst.constant())) {
      throw ValidationError("majorant", "no finite constant fits the sampled inequalities");
    }
    r.majorant = base.scaled(worst.constant());
    r.fit_report = worst;
  } else {
    r.majorant = base;
  }
  return r;
}

ExperimentReport run(const ExperimentConfig& config) {
  const ResolvedExperiment r = resolve(config);
  RatioInputs in;
  in.theorem = config.theorem;
  in.xs = config.xs;
  in.matrix = r.matrix ? &*r.matrix : nullptr;
  in.majorant = &r.majorant;
  in.n_min = config.n_min;
  in.n_max = config.n_max;
  in.p = config.p;
  in.grid = config.grid;
  in.class_threshold = config.class_threshold;

  ExperimentReport report;
  report.config = config.to_json();
  report.majorant = majorant_to_json(r.majorant);
  report.series = ratio_series(r.f, in, r.params);
  return report;
}

void write_csv(const ExperimentReport& report, std::ostream& out) {
  out << "n,lhs,rhs,ratio,flags\n";
  for (const auto& rec : report.series.records) {
    std::string flags;
    for (std::size_t i = 0; i < rec.flags.size(); ++i) {
      if (i) flags += ';';
      flags += rec.flags[i];
    }
    out << rec.n << ',' << format_double(rec.lhs) << ',' << format_double(rec.rhs) << ','
        << format_double(rec.ratio) << ',' << csv_field(flags) << '\n';
  }
}

json report_to_json(const ExperimentReport& report) {
  json records = json::array();
  for (const auto& rec : report.series.records) {
    records.push_back({{"n", rec.n},
                       {"lhs", number_json(rec.lhs)},
                       {"rhs", number_json(rec.rhs)},
                       {"ratio", number_json(rec.ratio)},
                       {"flags", rec.flags}});
  }
  const auto& s = report.series.summary;
  json summary = {{"theorem", to_string(report.series.theorem)},
                  {"max_ratio", number_json(s.max_ratio)},
                  {"argmax_n", s.argmax_n ? json(*s.argmax_n) : json(nullptr)},
                  {"zero_over_zero", s.zero_over_zero},
                  {"failures", s.failures},
                  {"tolerance_failures", s.tolerance_failures},
                  {"side_condition_ok",
                   s.side_condition_ok ? json(*s.side_condition_ok) : json(nullptr)}};
  if (s.class_check) {
    summary["class_check"] = {{"class", to_string(s.class_check->cls)},
                              {"c", s.class_check->c},
                              {"threshold", s.class_check->threshold},
                              {"sup_constant", number_json(s.class_check->sup_constant)},
                              {"member", s.class_check->member}};
  } else {
    summary["class_check"] = nullptr;
  }
  const auto growth = growth_check(report.series);
  summary["growth"] = {{"early_max", number_json(growth.early_max)},
                       {"late_max", number_json(growth.late_max)},
                       {"bounded", growth.bounded}};
  return {{"config", report.config},
          {"majorant", report.majorant},
          {"records", records},
          {"summary", summary}};
}

GrowthCheck growth_check(const RatioSeries& series, std::size_t early_end, double factor,
                         double cap) {
  GrowthCheck g;
  bool ok = !series.records.empty();
  for (const auto& rec : series.records) {
    if (std::isnan(rec.ratio)) {
      ok = false;
      continue;
    }
    if (rec.n <= early_end) g.early_max = std::max(g.early_max, rec.ratio);
    if (rec.n >= early_end) g.late_max = std::max(g.late_max, rec.ratio);
    if (!(rec.ratio <= cap)) ok = false;
  }
  g.bounded = ok && g.late_max <= factor * g.early_max;
  return g;
}

}  // namespace apsum
