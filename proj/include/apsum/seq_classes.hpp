#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace apsum {

/// Finitely supported row (a_{n,k})_{k>=0}; entries past the end are zero.
using Row = std::vector<double>;

inline constexpr double kRowSumTolerance = 1e-12;

/// Row-stochastic nonnegative matrix given row by row. Rows are produced on
/// demand and validated (a_{n,k} >= 0, sum_k a_{n,k} = 1) when requested.
class SummabilityMatrix {
 public:
  using Generator = std::function<Row(std::size_t)>;

  SummabilityMatrix(std::string name, Generator generator,
                    std::optional<std::size_t> row_count = std::nullopt);

  static SummabilityMatrix from_rows(std::vector<Row> rows);

  /// Throws ValidationError("matrix", ...) on a negative weight, a row sum
  /// off by more than kRowSumTolerance, or n past an explicit row count.
  Row row(std::size_t n) const;
  std::size_t support_bound(std::size_t n) const { return row(n).size(); }

  const std::string& name() const noexcept { return name_; }
  std::optional<std::size_t> row_count() const noexcept { return row_count_; }

 private:
  std::string name_;
  Generator generator_;
  std::optional<std::size_t> row_count_;
};

/// a_{n,k} = 1/(n+1) for k <= n.
Row cesaro_row(std::size_t n);
/// a_{n,k} = p_k / P_n for k <= n, P_n = p_0 + ... + p_n.
Row riesz_row(std::span<const double> weights, std::size_t n);
/// a_{n,k} proportional to 2 + (-1)^{floor(log2(k+1))} for k <= n: alternates
/// between dyadic blocks, so it leaves MS for n >= 3 but keeps bounded
/// GM(2beta) constants.
Row osc_gm2_row(std::size_t n);

SummabilityMatrix cesaro_matrix();
SummabilityMatrix riesz_matrix(std::vector<double> weights);
/// Riesz weights p_k = (k+1)^power.
SummabilityMatrix riesz_power_matrix(double power);

struct OscGm2Options {
  double c = 2.0;
  double threshold = 8.0;  // sup_n K_n tends to 5 / ln 2 ~ 7.21 (rows ending on a fresh block)
  std::size_t verify_rows = 256;
};

/// Builds the osc-gm2 family and verifies on rows [0, verify_rows] that it
/// is in GM(2beta) with constant <= threshold, leaves MS for n >= 3, and
/// that a_{n,0} decreases to 0. Throws ValidationError("matrix", ...) if not.
SummabilityMatrix osc_gm2_matrix(const OscGm2Options& options = {});

/// a_k >= a_{k+1} >= 0 everywhere, including the step into the zero tail.
bool is_ms(std::span<const double> row);

/// Smallest K with sum_{k>=m} |a_k - a_{k+1}| <= K |a_m| for all m >= 0.
/// +infinity if some a_m = 0 while the rest variation from m is positive.
double rbvs_constant(std::span<const double> row);

/// Smallest K with sum_{k=m}^{2m-1} |a_k - a_{k+1}| <= K |a_m| for all m >= 1.
double gm_constant(std::span<const double> row);

/// Smallest K with
///   sum_{k=m}^{2m-1} |a_k - a_{k+1}| <= K sum_{k=max(floor(m/c),1)}^{floor(cm)} |a_k| / k
/// for all m >= 1. Requires c > 1.
double gm2_constant(std::span<const double> row, double c);

enum class SequenceClass { ms, rbvs, gm, gm2 };

std::string to_string(SequenceClass cls);
SequenceClass sequence_class_from_string(const std::string& name);

struct ClassReport {
  SequenceClass cls = SequenceClass::ms;
  double c = 2.0;
  double threshold = 0.0;
  std::vector<std::size_t> rows;
  std::vector<double> constants;  // K_n per row
  std::vector<double> first_weights;  // a_{n,0} per row
  double sup_constant = 0.0;
  bool member = false;
  /// Heuristic reading of lim a_{n,0} = 0 on a finite range: a_{n,0} at the
  /// last row is <= side_tolerance and not above its value at the midpoint.
  bool side_condition_ok = false;
};

/// Per-row constants over n in [n_min, n_max]. For MS, K_n is 1 for a
/// nonincreasing row and +infinity otherwise.
ClassReport class_membership(const SummabilityMatrix& matrix, SequenceClass cls,
                             double threshold, std::size_t n_min, std::size_t n_max,
                             double c = 2.0, double side_tolerance = 0.05);

}  // namespace apsum
