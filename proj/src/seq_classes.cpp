#include "apsum/seq_classes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "apsum/errors.hpp"

namespace apsum {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double at(std::span<const double> row, std::size_t k) {
  return k < row.size() ? row[k] : 0.0;
}

// num / den with 0/0 -> 0 and positive/0 -> +inf.
double ratio(double num, double den) {
  if (num == 0.0) return 0.0;
  if (den == 0.0) return kInf;
  return num / den;
}

double block_variation(std::span<const double> row, std::size_t m) {
  double sum = 0.0;
  for (std::size_t k = m; k < 2 * m; ++k) sum += std::abs(at(row, k) - at(row, k + 1));
  return sum;
}

Row normalized(Row row) {
  const double total = std::accumulate(row.begin(), row.end(), 0.0);
  for (auto& v : row) v /= total;
  return row;
}

}  // namespace

SummabilityMatrix::SummabilityMatrix(std::string name, Generator generator,
                                     std::optional<std::size_t> row_count)
    : name_(std::move(name)), generator_(std::move(generator)), row_count_(row_count) {}

SummabilityMatrix SummabilityMatrix::from_rows(std::vector<Row> rows) {
  const std::size_t count = rows.size();
  return SummabilityMatrix(
      "explicit", [rows = std::move(rows)](std::size_t n) { return rows.at(n); }, count);
}

Row SummabilityMatrix::row(std::size_t n) const {
  if (row_count_ && n >= *row_count_) {
    std::ostringstream msg;
    msg << "row " << n << " requested but only " << *row_count_ << " rows are defined";
    throw ValidationError("matrix", msg.str());
  }
  Row r = generator_(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (!std::isfinite(r[k]) || r[k] < 0.0) {
      std::ostringstream msg;
      msg << "row " << n << " has invalid weight a[" << k << "] = " << r[k];
      throw ValidationError("matrix", msg.str());
    }
    sum += r[k];
  }
  if (std::abs(sum - 1.0) > kRowSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "row " << n << " sums to " << sum << ", expected 1";
    throw ValidationError("matrix", msg.str());
  }
  return r;
}

Row cesaro_row(std::size_t n) { return Row(n + 1, 1.0 / static_cast<double>(n + 1)); }

Row riesz_row(std::span<const double> weights, std::size_t n) {
  if (n >= weights.size()) {
    throw ValidationError("matrix", "riesz row index exceeds the number of weights");
  }
  Row row(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(n + 1));
  const double total = std::accumulate(row.begin(), row.end(), 0.0);
  if (!(total > 0.0)) throw ValidationError("matrix", "riesz weights must have P_n > 0");
  for (auto& v : row) v /= total;
  return row;
}

Row osc_gm2_row(std::size_t n) {
  Row row(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const auto level = std::bit_width(k + 1) - 1;  // floor(log2(k+1))
    row[k] = level % 2 == 0 ? 3.0 : 1.0;
  }
  return normalized(std::move(row));
}

SummabilityMatrix cesaro_matrix() { return SummabilityMatrix("cesaro", cesaro_row); }

SummabilityMatrix riesz_matrix(std::vector<double> weights) {
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError("matrix", "riesz weights must be finite and nonnegative");
    }
  }
  const std::size_t count = weights.size();
  return SummabilityMatrix(
      "riesz", [w = std::move(weights)](std::size_t n) { return riesz_row(w, n); }, count);
}

SummabilityMatrix riesz_power_matrix(double power) {
  if (!std::isfinite(power)) throw ValidationError("matrix", "riesz power must be finite");
  return SummabilityMatrix("riesz", [power](std::size_t n) {
    Row row(n + 1);
    for (std::size_t k = 0; k <= n; ++k) row[k] = std::pow(static_cast<double>(k + 1), power);
    return normalized(std::move(row));
  });
}

SummabilityMatrix osc_gm2_matrix(const OscGm2Options& options) {
  if (!(options.c > 1.0)) throw ValidationError("c", "must be > 1");
  SummabilityMatrix matrix("osc-gm2", osc_gm2_row);

  const auto report = class_membership(matrix, SequenceClass::gm2, options.threshold, 0,
                                       options.verify_rows, options.c);
  if (!report.member) {
    std::ostringstream msg;
    msg << "osc-gm2 GM(2beta) constant " << report.sup_constant << " exceeds threshold "
        << options.threshold;
    throw ValidationError("matrix", msg.str());
  }
  if (!report.side_condition_ok) {
    throw ValidationError("matrix", "osc-gm2 fails lim a_{n,0} = 0 on the verified range");
  }
  for (std::size_t n = 3; n <= options.verify_rows; ++n) {
    if (is_ms(matrix.row(n))) {
      throw ValidationError("matrix", "osc-gm2 row unexpectedly monotone");
    }
  }
  return matrix;
}

bool is_ms(std::span<const double> row) {
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] < at(row, k + 1) || row[k] < 0.0) return false;
  }
  return true;
}

double rbvs_constant(std::span<const double> row) {
  double worst = 0.0;
  double rest = 0.0;  // sum_{k>=m} |a_k - a_{k+1}|, accumulated from the tail
  for (std::size_t m = row.size(); m-- > 0;) {
    rest += std::abs(row[m] - at(row, m + 1));
    worst = std::max(worst, ratio(rest, std::abs(row[m])));
  }
  return worst;
}

double gm_constant(std::span<const double> row) {
  double worst = 0.0;
  for (std::size_t m = 1; m < row.size(); ++m) {
    worst = std::max(worst, ratio(block_variation(row, m), std::abs(row[m])));
  }
  return worst;
}

double gm2_constant(std::span<const double> row, double c) {
  if (!(c > 1.0) || !std::isfinite(c)) throw ValidationError("c", "must be a finite c > 1");
  double worst = 0.0;
  for (std::size_t m = 1; m < row.size(); ++m) {
    const double num = block_variation(row, m);
    if (num == 0.0) continue;
    const auto lo = std::max<std::size_t>(
        static_cast<std::size_t>(std::floor(static_cast<double>(m) / c)), 1);
    const auto hi = static_cast<std::size_t>(std::floor(c * static_cast<double>(m)));
    double den = 0.0;
    for (std::size_t k = lo; k <= hi && k < row.size(); ++k) {
      den += std::abs(row[k]) / static_cast<double>(k);
    }
    worst = std::max(worst, ratio(num, den));
  }
  return worst;
}

std::string to_string(SequenceClass cls) {
  switch (cls) {
    case SequenceClass::ms: return "ms";
    case SequenceClass::rbvs: return "rbvs";
    case SequenceClass::gm: return "gm";
    case SequenceClass::gm2: return "gm2";
  }
  return "unknown";
}

SequenceClass sequence_class_from_string(const std::string& name) {
  if (name == "ms") return SequenceClass::ms;
  if (name == "rbvs") return SequenceClass::rbvs;
  if (name == "gm") return SequenceClass::gm;
  if (name == "gm2") return SequenceClass::gm2;
  throw ValidationError("class", "unknown sequence class '" + name + "'");
}

ClassReport class_membership(const SummabilityMatrix& matrix, SequenceClass cls,
                             double threshold, std::size_t n_min, std::size_t n_max, double c,
                             double side_tolerance) {
  if (cls == SequenceClass::gm2 && !(c > 1.0)) throw ValidationError("c", "must be > 1");
  ClassReport report;
  report.cls = cls;
  report.c = c;
  report.threshold = threshold;
  if (n_min > n_max) return report;

  for (std::size_t n = n_min; n <= n_max; ++n) {
    const Row row = matrix.row(n);
    double k = 0.0;
    switch (cls) {
      case SequenceClass::ms: k = is_ms(row) ? 1.0 : kInf; break;
      case SequenceClass::rbvs: k = rbvs_constant(row); break;
      case SequenceClass::gm: k = gm_constant(row); break;
      case SequenceClass::gm2: k = gm2_constant(row, c); break;
    }
    report.rows.push_back(n);
    report.constants.push_back(k);
    report.first_weights.push_back(at(row, 0));
    report.sup_constant = std::max(report.sup_constant, k);
  }
  report.member = std::isfinite(report.sup_constant) && report.sup_constant <= threshold;

  const double last = report.first_weights.back();
  const double middle = report.first_weights[report.first_weights.size() / 2];
  report.side_condition_ok = last <= side_tolerance && last <= middle;
  return report;
}

}  // namespace apsum
