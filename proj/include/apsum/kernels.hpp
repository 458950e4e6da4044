#pragma once

#include <optional>

#include "apsum/spectrum.hpp"

namespace apsum {

// How the integral beyond truncation_T is handled.
//   exact: closed form from the cosine expansion of f(x+t)+f(x-t), via Si.
//   bound: dropped; 8 sup|f| / (alpha pi T) is added to the error estimate.
enum class TailMode { exact, bound };

struct QuadratureConfig {
  double truncation_T = 0.0;  // <= 0 selects default_truncation(alpha)
  int panels_per_oscillation = 4;
  double rel_tol = 1e-6;
  double abs_tol = 1e-6;
  TailMode tail = TailMode::exact;

  void validate() const;
  double resolved_T(double alpha) const;

  /// 16 periods of 2*pi/alpha.
  static double default_truncation(double alpha);
};

/// Psi_{lambda,eta}(t) = 2 sin((eta-lambda)t/2) sin((eta+lambda)t/2) / (pi (eta-lambda) t^2),
/// extended continuously to t = 0 by (eta+lambda)/(2 pi). Requires 0 < lambda < eta.
double psi(double lambda, double eta, double t);

/// Psi_k(t) = 4 sin(alpha t/4) sin(alpha (2k+1) t/4) / (alpha pi t^2), k >= 1.
/// Identical to psi(alpha k/2, alpha (k+1)/2, t).
double psi_k(double alpha, int k, double t);

/// S_gamma f(x): all exponents with lambda <= gamma (boundary inclusive).
double partial_sum_direct(const QuasiPeriodicFunction& f, double gamma, double x);

/// True iff the open interval (alpha k/2, alpha (k+1)/2) holds no exponent.
bool gap_free(const QuasiPeriodicFunction& f, int k);

struct KernelSum {
  double value = 0.0;
  double quadrature_error = 0.0;  // summed |K15 - G7| over [0, T]
  double tail = 0.0;              // closed-form tail (0 in bound mode)
  double tail_bound = 0.0;        // 8 sup|f| / (alpha pi T)
  double error_estimate = 0.0;    // what is compared against the tolerance
  bool shifted = false;           // the kappa = 1 path was taken
  std::optional<double> removed_lambda;
};

/// S_{alpha k/2} f(x) through the kernel representation
///   int_0^inf {f(x+t) + f(x-t)} Psi_k(t) dt.
/// If an exponent lies inside (alpha k/2, alpha (k+1)/2) the sum is formed as
/// S*_{k+1} f(x) minus that exponent's term. k = 0 returns the constant term.
/// Throws ToleranceError when error_estimate > max(abs_tol, rel_tol |value|).
KernelSum partial_sum_kernel_detailed(const QuasiPeriodicFunction& f, int k, double x,
                                      const QuadratureConfig& cfg);

double partial_sum_kernel(const QuasiPeriodicFunction& f, int k, double x,
                          const QuadratureConfig& cfg);

/// int_0^inf Psi_k(t) dt, numerically on [0, T] plus the tail; equals 1/2.
KernelSum kernel_normalization(double alpha, int k, const QuadratureConfig& cfg);

/// int_T^inf cos(w t) / t^2 dt for w >= 0, T > 0.
double cosine_tail_integral(double w, double T);

}  // namespace apsum
