#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace apsum {

// One exponent of a real-valued quasi-periodic function. The symmetric pair
// A_nu e^{i lambda x} + A_{-nu} e^{-i lambda x} is stored as
// cos_coeff * cos(lambda x) + sin_coeff * sin(lambda x).
struct SpectralTerm {
  double lambda = 0.0;
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;

  /// A_nu for the nonnegative exponent; A_{-nu} is its conjugate.
  std::complex<double> amplitude() const;
  /// |A_nu| + |A_{-nu}| (just |c| for lambda = 0).
  double magnitude() const;
  double value_at(double x) const;
};

struct Spectrum {
  std::vector<SpectralTerm> terms;
  double alpha = 1.0;

  double max_lambda() const;
};

enum class SpectrumIssueKind {
  non_finite,
  bad_alpha,
  negative_frequency,
  misplaced_zero_frequency,
  ordering,
  gap,
  zero_amplitude,
};

std::string to_string(SpectrumIssueKind kind);

struct SpectrumIssue {
  SpectrumIssueKind kind;
  std::size_t index;
  std::string message;
};

struct SpectrumReport {
  std::vector<SpectrumIssue> issues;

  bool valid() const { return issues.empty(); }
  bool has(SpectrumIssueKind kind) const;
  std::string summary() const;
};

/// Report-only check of ordering, the alpha gap between positive exponents,
/// placement of the zero exponent and vanishing amplitude pairs.
SpectrumReport validate_spectrum(const Spectrum& spectrum);

/// Finite trigonometric sum with separated exponents. Evaluation is exact up
/// to floating rounding; nothing is truncated.
class QuasiPeriodicFunction {
 public:
  QuasiPeriodicFunction() = default;
  explicit QuasiPeriodicFunction(Spectrum spectrum);

  const Spectrum& spectrum() const noexcept { return spectrum_; }
  const std::vector<SpectralTerm>& terms() const noexcept { return spectrum_.terms; }
  double alpha() const noexcept { return spectrum_.alpha; }
  double max_lambda() const noexcept { return max_lambda_; }

  double operator()(double x) const;

  /// phi_x(t) = f(x+t) + f(x-t) - 2 f(x), evaluated termwise as
  /// -4 e_nu(x) sin^2(lambda t / 2) so small t does not cancel.
  double phi(double x, double t) const;

  /// Sum of |A_nu| + |A_{-nu}|; an upper bound for sup |f|.
  double amplitude_sum() const;

  /// x -> f(x + shift)
  QuasiPeriodicFunction translated(double shift) const;
  /// x -> f(x + t) - f(x)
  QuasiPeriodicFunction difference(double t) const;
  QuasiPeriodicFunction scaled(double factor) const;

 private:
  Spectrum spectrum_;
  double max_lambda_ = 0.0;
};

double eval_f(const QuasiPeriodicFunction& f, double x);
double eval_phi(const QuasiPeriodicFunction& f, double x, double t);

/// Finite-window mean (1/L) int_0^L f(t) e^{-i lambda t} dt by composite
/// Gauss-Legendre. Converges to A_nu at rate O(1/L) for separated spectra.
std::complex<double> fourier_coefficient(const QuasiPeriodicFunction& f, double lambda,
                                         double L);

/// Smallest common period 2*pi/g when every exponent is an integer multiple
/// of some g (detected by rational reconstruction); empty otherwise.
std::optional<double> common_period(const Spectrum& spectrum);

}  // namespace apsum
