#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apsum/approx_measures.hpp"
#include "apsum/kernels.hpp"
#include "apsum/majorant.hpp"
#include "apsum/seq_classes.hpp"
#include "apsum/spectrum.hpp"

namespace apsum {

/// How the tail index of the Theorem 5 bracket is divided:
/// floor -> alpha k / 2^{1 + floor(c)}, literal -> alpha k / 2^{1 + c}.
enum class Thm5Exponent { floor, literal };

/// How S_{gamma_k} f(x) is obtained: enumerating the spectrum, or through
/// the kernel integral (needs alpha equal to the spectrum's alpha).
enum class PartialSumRoute { direct, kernel };

struct StrongMeanParams {
  double q = 1.0;
  double alpha = 1.0;
  double c = 2.0;
  Thm5Exponent thm5_exponent = Thm5Exponent::floor;
  PartialSumRoute route = PartialSumRoute::direct;
  QuadratureConfig quadrature;

  void validate() const;
  double gamma(std::size_t k) const { return 0.5 * alpha * static_cast<double>(k); }
  static double delta(std::size_t n);  // pi / (n + 1)
  double thm5_divisor() const;
};

/// {sum_k a_k v_k^q}^{1/q} over entries with a_k > 0, evaluated with the
/// largest v factored out so large q neither overflows nor underflows.
double power_mean(std::span<const double> weights, std::span<const double> values, double q);

/// |S_{gamma_k} f(x) - f(x)|.
double partial_sum_deviation(const QuasiPeriodicFunction& f, double x, std::size_t k,
                             const StrongMeanParams& params);

/// H^q_{n,A,gamma} f(x) = {sum_k a_{n,k} |S_{gamma_k} f(x) - f(x)|^q}^{1/q}.
double strong_mean(const QuasiPeriodicFunction& f, double x, std::span<const double> row,
                   const StrongMeanParams& params);
double strong_mean(const QuasiPeriodicFunction& f, double x, const SummabilityMatrix& a,
                   std::size_t n, const StrongMeanParams& params);

/// {(1/(n+1)) sum_{k=n}^{2n} |S_{alpha k/2} f(x) - f(x)|^q}^{1/q}.
double dyadic_strong_mean(const QuasiPeriodicFunction& f, double x, std::size_t n,
                          const StrongMeanParams& params);

/// w(pi/(n+1)) + E_{alpha n/2}(f).
double prop4_rhs(const ModulusMajorant& w, const QuasiPeriodicFunction& f, std::size_t n,
                 const StrongMeanParams& params);

/// {sum_k a_k [w(pi/(k+1)) + E_{alpha k / thm5_divisor}(f)]^q}^{1/q}.
double thm5_rhs(std::span<const double> row, const ModulusMajorant& w,
                const QuasiPeriodicFunction& f, const StrongMeanParams& params);

/// As thm5_rhs with E_{alpha k/2}.
double thm6_rhs(std::span<const double> row, const ModulusMajorant& w,
                const QuasiPeriodicFunction& f, const StrongMeanParams& params);

/// {sum_k a_k omega(pi/(k+1))_{S^p}^q}^{1/q}.
double thm2_rhs(std::span<const double> row, const QuasiPeriodicFunction& f, double q,
                double p, const WindowGrid& grid = {});

enum class Theorem { prop4, thm2, thm5, thm6 };

std::string to_string(Theorem theorem);
Theorem theorem_from_string(const std::string& name);

struct RatioRecord {
  std::size_t n = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  std::vector<std::string> flags;
};

struct RatioSummary {
  double max_ratio = 0.0;
  std::optional<std::size_t> argmax_n;
  std::size_t zero_over_zero = 0;
  std::size_t failures = 0;            // records whose evaluation threw
  std::size_t tolerance_failures = 0;  // ... with a ToleranceError
  /// lim a_{n,0} = 0 read off the swept rows; empty when no matrix is used.
  std::optional<bool> side_condition_ok;
  /// Class the theorem asks of the rows (gm2 for thm5, ms for thm6).
  std::optional<ClassReport> class_check;
};

struct RatioSeries {
  Theorem theorem = Theorem::prop4;
  std::vector<RatioRecord> records;
  RatioSummary summary;
};

struct RatioInputs {
  Theorem theorem = Theorem::prop4;
  /// LHS is the max over these points of the pointwise left side.
  std::vector<double> xs{0.0};
  const SummabilityMatrix* matrix = nullptr;   // required except for prop4
  const ModulusMajorant* majorant = nullptr;   // required except for thm2
  std::size_t n_min = 1;
  std::size_t n_max = 0;  // n_min > n_max: empty sweep
  double p = 2.0;         // thm2 only
  WindowGrid grid;        // thm2 only
  double class_threshold = 8.0;  // membership threshold for the class check
};

/// Per-n (LHS, RHS, LHS/RHS) over [n_min, n_max]. 0/0 is reported as 0 with
/// flag "0/0"; positive/0 as +inf with flag "rhs=0". A throwing evaluation
/// becomes a NaN record flagged "error:..." and the sweep continues.
/// Parallel over n (APSUM_THREADS); results do not depend on the worker count.
/// lhs / rhs with the sweep's conventions for a zero right side.
RatioRecord ratio_record(std::size_t n, double lhs, double rhs);

RatioSeries ratio_series(const QuasiPeriodicFunction& f, const RatioInputs& inputs,
                         const StrongMeanParams& params);

}  // namespace apsum
