#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "apsum/approx_measures.hpp"
#include "apsum/kernels.hpp"
#include "apsum/majorant.hpp"
#include "apsum/seq_classes.hpp"
#include "apsum/spectrum.hpp"
#include "apsum/strong_means.hpp"

namespace apsum {

using json = nlohmann::json;

// ---- built-in families ----------------------------------------------------

/// "smooth", "lacunary", "irrational", "constant".
QuasiPeriodicFunction builtin_spectrum(const std::string& name);
std::vector<std::string> builtin_spectrum_names();

/// "cesaro"; "riesz" with params {"weights": [...]} or {"power": s} (default
/// power 1, p_k = k + 1); "osc-gm2" with params {"c", "threshold", "verify_rows"}.
SummabilityMatrix builtin_matrix(const std::string& name, const json& params = json::object());

// ---- file formats -----------------------------------------------------------

/// {"alpha": a, "entries": [{"lambda": l, "cos": c, "sin": s}, ...]}
Spectrum spectrum_from_json(const json& j);
json spectrum_to_json(const Spectrum& s);

/// {"type": "explicit", "rows": [[...], ...]} or {"type": name, "params": {...}}.
SummabilityMatrix matrix_from_json(const json& j);

/// {"type": "power", "C": c, "gamma": g} or {"type": "table", "knots": [[d, w], ...]}.
ModulusMajorant majorant_from_json(const json& j);
json majorant_to_json(const ModulusMajorant& w);

QuadratureConfig quadrature_from_json(const json& j);
json quadrature_to_json(const QuadratureConfig& cfg);
WindowGrid grid_from_json(const json& j);
json grid_to_json(const WindowGrid& grid);

/// Parses a JSON file; errors name `field`.
json read_json_file(const std::string& path, const std::string& field);

// ---- experiment -------------------------------------------------------------

struct MajorantFit {
  std::size_t samples = 12;  // gammas = deltas = max * i / samples
  double max = 0.0;          // <= 0: 2 pi
  double p = 0.0;            // <= 0: the experiment's p
};

struct ExperimentConfig {
  json spectrum = {{"builtin", "smooth"}};  // builtin name, or inline spectrum JSON
  json matrix = {{"type", "cesaro"}};       // inline matrix JSON
  json majorant = {{"type", "power"}, {"C", 1.0}, {"gamma", 1.0}};
  std::optional<MajorantFit> fit;
  double p = 2.0;
  double q = 1.0;
  double c = 2.0;
  std::optional<double> alpha;  // defaults to the spectrum's alpha
  std::size_t n_min = 1;
  std::size_t n_max = 128;
  std::vector<double> xs{0.0};
  Theorem theorem = Theorem::thm6;
  Thm5Exponent thm5_exponent = Thm5Exponent::floor;
  PartialSumRoute route = PartialSumRoute::direct;
  QuadratureConfig quadrature;
  WindowGrid grid;
  double class_threshold = 8.0;
  std::string output;
  bool allow_invalid = false;

  /// Relative "file" references are resolved against base_dir and inlined,
  /// so to_json() is self-contained. Unknown keys are rejected.
  static ExperimentConfig from_json(const json& j, const std::string& base_dir = ".");
  static ExperimentConfig from_file(const std::string& path);
  json to_json() const;
};

/// Everything a run needs, built and cross-validated from a config.
struct ResolvedExperiment {
  QuasiPeriodicFunction f;
  SpectrumReport spectrum_report;
  std::optional<SummabilityMatrix> matrix;
  ModulusMajorant majorant = ModulusMajorant::power(1.0, 1.0);
  std::optional<OmegaClassReport> fit_report;
  StrongMeanParams params;
};

/// Throws ValidationError naming the failing field ("alpha" when the
/// spectrum violates the gap for the requested alpha).
ResolvedExperiment resolve(const ExperimentConfig& config);

struct ExperimentReport {
  json config;  // echo
  json majorant;  // the majorant actually used (after fitting)
  RatioSeries series;
};

ExperimentReport run(const ExperimentConfig& config);

/// n,lhs,rhs,ratio,flags with %.17g numbers and ';'-joined flags.
void write_csv(const ExperimentReport& report, std::ostream& out);
json report_to_json(const ExperimentReport& report);

/// Largest ratio over n <= early_end versus over n >= early_end: the sweep
/// "does not blow up" when late <= factor * early and every ratio <= cap.
struct GrowthCheck {
  double early_max = 0.0;
  double late_max = 0.0;
  bool bounded = false;
};
GrowthCheck growth_check(const RatioSeries& series, std::size_t early_end = 8,
                         double factor = 2.0, double cap = 50.0);

}  // namespace apsum
