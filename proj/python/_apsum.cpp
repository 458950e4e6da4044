// Python bindings for the apsum core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "apsum/approx_measures.hpp"
#include "apsum/errors.hpp"
#include "apsum/experiment.hpp"
#include "apsum/kernels.hpp"
#include "apsum/seq_classes.hpp"
#include "apsum/spectrum.hpp"
#include "apsum/strong_means.hpp"

namespace py = pybind11;
using namespace apsum;

namespace {

QuasiPeriodicFunction make_function(const std::vector<std::tuple<double, double, double>>& terms,
                                    double alpha) {
  Spectrum s;
  s.alpha = alpha;
  for (const auto& [l, c, sn] : terms) s.terms.push_back({l, c, sn});
  return QuasiPeriodicFunction(std::move(s));
}

StrongMeanParams make_params(double q, double alpha, double c) {
  StrongMeanParams p;
  p.q = q;
  p.alpha = alpha;
  p.c = c;
  return p;
}

}  // namespace

PYBIND11_MODULE(_apsum, m) {
  m.doc() = "Strong approximation of quasi-periodic functions";

  // ValidationError derives from std::invalid_argument -> ValueError;
  // ToleranceError from std::runtime_error -> RuntimeError.

  py::class_<QuasiPeriodicFunction>(m, "Function")
      .def(py::init(&make_function), py::arg("terms"), py::arg("alpha") = 1.0,
           "terms: list of (lambda, cos_coeff, sin_coeff)")
      .def("__call__", &QuasiPeriodicFunction::operator(), py::arg("x"))
      .def("phi", &QuasiPeriodicFunction::phi, py::arg("x"), py::arg("t"))
      .def("translated", &QuasiPeriodicFunction::translated)
      .def("scaled", &QuasiPeriodicFunction::scaled)
      .def_property_readonly("alpha", &QuasiPeriodicFunction::alpha)
      .def_property_readonly("max_lambda", &QuasiPeriodicFunction::max_lambda)
      .def_property_readonly("terms", [](const QuasiPeriodicFunction& f) {
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& t : f.terms()) out.emplace_back(t.lambda, t.cos_coeff, t.sin_coeff);
        return out;
      });

  m.def("builtin_spectrum", &builtin_spectrum, py::arg("name"));
  m.def("validate_spectrum", [](const QuasiPeriodicFunction& f) {
    return validate_spectrum(f.spectrum()).summary();
  });

  m.def("psi", &psi, py::arg("lam"), py::arg("eta"), py::arg("t"));
  m.def("psi_k", &psi_k, py::arg("alpha"), py::arg("k"), py::arg("t"));
  m.def("partial_sum_direct", &partial_sum_direct, py::arg("f"), py::arg("gamma"), py::arg("x"));
  m.def("gap_free", &gap_free, py::arg("f"), py::arg("k"));
  m.def(
      "partial_sum_kernel",
      [](const QuasiPeriodicFunction& f, int k, double x, double T) {
        QuadratureConfig cfg;
        cfg.truncation_T = T;
        return partial_sum_kernel(f, k, x, cfg);
      },
      py::arg("f"), py::arg("k"), py::arg("x"), py::arg("truncation_T") = 0.0);
  m.def(
      "kernel_normalization",
      [](double alpha, int k) { return kernel_normalization(alpha, k, {}).value; },
      py::arg("alpha"), py::arg("k"));

  m.def(
      "stepanov_norm", [](const QuasiPeriodicFunction& f, double p) { return stepanov_norm(f, p); },
      py::arg("f"), py::arg("p"));
  m.def(
      "modulus_omega",
      [](const QuasiPeriodicFunction& f, double delta, double p) {
        return modulus_omega(f, delta, p);
      },
      py::arg("f"), py::arg("delta"), py::arg("p"));
  m.def("pointwise_modulus", &pointwise_modulus, py::arg("f"), py::arg("x"), py::arg("delta"),
        py::arg("p"));
  m.def("phi_average", &phi_average, py::arg("f"), py::arg("x"), py::arg("delta"),
        py::arg("nu"));
  m.def("best_approx_tail", &best_approx_tail, py::arg("f"), py::arg("sigma"));

  m.def("cesaro_row", &cesaro_row, py::arg("n"));
  m.def("osc_gm2_row", &osc_gm2_row, py::arg("n"));
  m.def("is_ms", [](const std::vector<double>& r) { return is_ms(r); }, py::arg("row"));
  m.def("rbvs_constant", [](const std::vector<double>& r) { return rbvs_constant(r); },
        py::arg("row"));
  m.def("gm_constant", [](const std::vector<double>& r) { return gm_constant(r); },
        py::arg("row"));
  m.def("gm2_constant", [](const std::vector<double>& r, double c) { return gm2_constant(r, c); },
        py::arg("row"), py::arg("c") = 2.0);

  m.def(
      "strong_mean",
      [](const QuasiPeriodicFunction& f, double x, const std::vector<double>& row, double q,
         double alpha) { return strong_mean(f, x, row, make_params(q, alpha, 2.0)); },
      py::arg("f"), py::arg("x"), py::arg("row"), py::arg("q") = 1.0, py::arg("alpha") = 1.0);
  m.def(
      "dyadic_strong_mean",
      [](const QuasiPeriodicFunction& f, double x, std::size_t n, double q, double alpha) {
        return dyadic_strong_mean(f, x, n, make_params(q, alpha, 2.0));
      },
      py::arg("f"), py::arg("x"), py::arg("n"), py::arg("q") = 1.0, py::arg("alpha") = 1.0);

  m.def(
      "run_config",
      [](const std::string& config_json, const std::string& base_dir) {
        const auto cfg = ExperimentConfig::from_json(json::parse(config_json), base_dir);
        py::gil_scoped_release release;
        return report_to_json(run(cfg)).dump();
      },
      py::arg("config_json"), py::arg("base_dir") = ".",
      "Runs an experiment config (JSON text); returns the JSON report text.");
}
