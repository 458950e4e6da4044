#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "apsum/majorant.hpp"
#include "apsum/spectrum.hpp"

namespace apsum {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Discretisation of the suprema over u (Stepanov windows) and t (shifts).
/// All suprema are taken over samples and therefore approximate from below.
struct WindowGrid {
  std::size_t u_samples = 512;
  double u_span = 0.0;  // <= 0: one common period, or 64 * 2pi / lambda_min
  std::size_t panels_per_window = 32;
  std::size_t t_samples = 32;  // per side of [-delta, delta]

  void validate() const;
};

/// Length of the u-range scanned for f under `grid`.
double resolved_u_span(const QuasiPeriodicFunction& f, const WindowGrid& grid);

/// sup_u ((1/pi) int_u^{u+pi} |f|^p)^{1/p} for 1 < p < inf; sup |f| for p = inf.
double stepanov_norm(const QuasiPeriodicFunction& f, double p, const WindowGrid& grid = {});

/// sup_{|t| <= delta} || f(. + t) - f(.) ||_{S^p}: grid scan over t followed by
/// a golden-section refinement around the best sample.
double modulus_omega(const QuasiPeriodicFunction& f, double delta, double p,
                     const WindowGrid& grid = {});

/// ((1/delta) int_0^delta |phi_x(t)|^p dt)^{1/p}; p = inf gives the sampled sup.
double pointwise_modulus(const QuasiPeriodicFunction& f, double x, double delta, double p);

/// Phi_x f(delta, nu) = (1/delta) int_nu^{nu+delta} phi_x(u) du.
double phi_average(const QuasiPeriodicFunction& f, double x, double delta, double nu);

/// max over +/- of ((1/delta) int_0^delta |phi_x(t) - phi_x(t +/- gamma)|^p dt)^{1/p}.
double shifted_phi_modulus(const QuasiPeriodicFunction& f, double x, double gamma,
                           double delta, double p);

/// Upper bound for E_sigma(f)_{S^p}: sum of |A_nu| + |A_-nu| over lambda_nu > sigma.
/// The truncation at sigma is itself of exponential type sigma.
double best_approx_tail(const QuasiPeriodicFunction& f, double sigma);

struct SamplePlan {
  std::vector<double> gammas;
  std::vector<double> deltas;
  double threshold = 1.0;

  /// {max * i / count : i = 1..count} for both gammas and deltas.
  static SamplePlan uniform(std::size_t count, double max, double threshold = 1.0);
};

struct OmegaClassReport {
  double shift_constant = 0.0;    // C1: shifted_phi_modulus / w(gamma)
  double modulus_constant = 0.0;  // C2: pointwise_modulus / w(delta)
  double threshold = 1.0;
  bool member = false;

  double constant() const { return shift_constant > modulus_constant ? shift_constant : modulus_constant; }
};

/// Smallest constants making both defining inequalities of Omega_{alpha,p}(w_x)
/// hold on the sampled (gamma, delta) pairs. 0/0 counts as 0, positive/0 as +inf.
OmegaClassReport omega_class_check(const QuasiPeriodicFunction& f, double x,
                                   const ModulusMajorant& w, double p, const SamplePlan& plan);

struct FittedMajorant {
  ModulusMajorant majorant;
  OmegaClassReport base_report;
};

/// Rescales `base` by the constant omega_class_check finds, so that the
/// rescaled majorant has both constants <= 1 on `plan`.
FittedMajorant fit_majorant(const QuasiPeriodicFunction& f, double x,
                            const ModulusMajorant& base, double p, const SamplePlan& plan);

/// |Phi_x f(delta1, delta2)| <= w(delta1) + w(delta2) + 1e-9.
bool check_eq7(const QuasiPeriodicFunction& f, double x, const ModulusMajorant& w,
               double delta1, double delta2);

}  // namespace apsum
