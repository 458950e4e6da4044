#include "apsum/strong_means.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apsum/errors.hpp"
#include "apsum/parallel.hpp"

namespace apsum {

namespace {

void check_q(double q) {
  if (!std::isfinite(q) || q <= 0.0) throw ValidationError("q", "must be finite and > 0");
}

template <class Bracket>
double bracket_mean(std::span<const double> row, double q, Bracket&& bracket) {
  std::vector<double> values(row.size(), 0.0);
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] > 0.0) values[k] = bracket(k);
  }
  return power_mean(row, values, q);
}

double lhs_at(const QuasiPeriodicFunction& f, const RatioInputs& in, const Row& row,
              std::size_t n, const StrongMeanParams& params) {
  double worst = 0.0;
  for (double x : in.xs) {
    const double v = in.theorem == Theorem::prop4 ? dyadic_strong_mean(f, x, n, params)
                                                  : strong_mean(f, x, row, params);
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace

void StrongMeanParams::validate() const {
  check_q(q);
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw ValidationError("alpha", "must be finite and > 0");
  }
  if (!std::isfinite(c) || c <= 1.0) throw ValidationError("c", "must be finite and > 1");
  quadrature.validate();
}

double StrongMeanParams::delta(std::size_t n) {
  return std::numbers::pi / static_cast<double>(n + 1);
}

double StrongMeanParams::thm5_divisor() const {
  const double e = thm5_exponent == Thm5Exponent::floor ? 1.0 + std::floor(c) : 1.0 + c;
  return std::exp2(e);
}

double power_mean(std::span<const double> weights, std::span<const double> values, double q) {
  check_q(q);
  if (weights.size() != values.size()) {
    throw ValidationError("row", "weights and values differ in length");
  }
  double scale = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] > 0.0) scale = std::max(scale, std::abs(values[k]));
  }
  if (scale == 0.0) return 0.0;
  if (std::isinf(scale)) return scale;
  double sum = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] > 0.0) sum += weights[k] * std::pow(std::abs(values[k]) / scale, q);
  }
  return scale * std::pow(sum, 1.0 / q);
}

double partial_sum_deviation(const QuasiPeriodicFunction& f, double x, std::size_t k,
                             const StrongMeanParams& params) {
  double s = 0.0;
  if (params.route == PartialSumRoute::direct) {
    s = partial_sum_direct(f, params.gamma(k), x);
  } else {
    if (params.alpha != f.alpha()) {
      throw ValidationError("alpha", "kernel route needs alpha equal to the spectrum's alpha");
    }
    s = partial_sum_kernel(f, static_cast<int>(k), x, params.quadrature);
  }
  return std::abs(s - f(x));
}

double strong_mean(const QuasiPeriodicFunction& f, double x, std::span<const double> row,
                   const StrongMeanParams& params) {
  params.validate();
  return bracket_mean(row, params.q,
                      [&](std::size_t k) { return partial_sum_deviation(f, x, k, params); });
}

double strong_mean(const QuasiPeriodicFunction& f, double x, const SummabilityMatrix& a,
                   std::size_t n, const StrongMeanParams& params) {
  return strong_mean(f, x, a.row(n), params);
}

double dyadic_strong_mean(const QuasiPeriodicFunction& f, double x, std::size_t n,
                          const StrongMeanParams& params) {
  Row row(2 * n + 1, 0.0);
  for (std::size_t k = n; k <= 2 * n; ++k) row[k] = 1.0 / static_cast<double>(n + 1);
  return strong_mean(f, x, row, params);
}

double prop4_rhs(const ModulusMajorant& w, const QuasiPeriodicFunction& f, std::size_t n,
                 const StrongMeanParams& params) {
  return w(StrongMeanParams::delta(n)) + best_approx_tail(f, params.gamma(n));
}

double thm5_rhs(std::span<const double> row, const ModulusMajorant& w,
                const QuasiPeriodicFunction& f, const StrongMeanParams& params) {
  params.validate();
  const double divisor = params.thm5_divisor();
  return bracket_mean(row, params.q, [&](std::size_t k) {
    const double sigma = params.alpha * static_cast<double>(k) / divisor;
    return w(StrongMeanParams::delta(k)) + best_approx_tail(f, sigma);
  });
}

double thm6_rhs(std::span<const double> row, const ModulusMajorant& w,
                const QuasiPeriodicFunction& f, const StrongMeanParams& params) {
  params.validate();
  return bracket_mean(row, params.q, [&](std::size_t k) {
    return w(StrongMeanParams::delta(k)) + best_approx_tail(f, params.gamma(k));
  });
}

double thm2_rhs(std::span<const double> row, const QuasiPeriodicFunction& f, double q,
                double p, const WindowGrid& grid) {
  return bracket_mean(row, q, [&](std::size_t k) {
    return modulus_omega(f, StrongMeanParams::delta(k), p, grid);
  });
}

std::string to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::prop4: return "prop4";
    case Theorem::thm2: return "thm2";
    case Theorem::thm5: return "thm5";
    case Theorem::thm6: return "thm6";
  }
  return "unknown";
}

Theorem theorem_from_string(const std::string& name) {
  if (name == "prop4") return Theorem::prop4;
  if (name == "thm2") return Theorem::thm2;
  if (name == "thm5") return Theorem::thm5;
  if (name == "thm6") return Theorem::thm6;
  throw ValidationError("theorem", "unknown theorem '" + name + "'");
}

RatioRecord ratio_record(std::size_t n, double lhs, double rhs) {
  RatioRecord rec{n, lhs, rhs, 0.0, {}};
  if (lhs == 0.0 && rhs == 0.0) {
    rec.flags.push_back("0/0");
  } else if (rhs == 0.0) {
    rec.ratio = kInfinity;
    rec.flags.push_back("rhs=0");
  } else {
    rec.ratio = lhs / rhs;
  }
  return rec;
}

RatioSeries ratio_series(const QuasiPeriodicFunction& f, const RatioInputs& in,
                         const StrongMeanParams& params) {
  params.validate();
  if (in.xs.empty()) throw ValidationError("x", "at least one x sample is required");
  const bool uses_matrix = in.theorem != Theorem::prop4;
  if (uses_matrix && in.matrix == nullptr) {
    throw ValidationError("matrix", "required for " + to_string(in.theorem));
  }
  if (in.theorem != Theorem::thm2 && in.majorant == nullptr) {
    throw ValidationError("majorant", "required for " + to_string(in.theorem));
  }

  RatioSeries series;
  series.theorem = in.theorem;
  if (in.n_min > in.n_max) return series;
  const std::size_t count = in.n_max - in.n_min + 1;

  // Rows first: thm2 needs the largest support to size the omega cache.
  std::vector<Row> rows(count);
  std::vector<std::string> row_errors(count);
  if (uses_matrix) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        rows[i] = in.matrix->row(in.n_min + i);
      } catch (const std::exception& e) {
        row_errors[i] = e.what();
      }
    }
  }

  std::vector<double> omega;
  if (in.theorem == Theorem::thm2) {
    std::size_t support = 0;
    for (const auto& r : rows) support = std::max(support, r.size());
    omega.assign(support, 0.0);
    parallel_for(support, [&](std::size_t k) {
      omega[k] = modulus_omega(f, StrongMeanParams::delta(k), in.p, in.grid);
    });
  }

  series.records.resize(count);
  parallel_for(count, [&](std::size_t i) {
    RatioRecord& rec = series.records[i];
    rec.n = in.n_min + i;
    try {
      if (!row_errors[i].empty()) throw ValidationError("matrix", row_errors[i]);
      const Row& row = rows[i];
      rec.lhs = lhs_at(f, in, row, rec.n, params);
      switch (in.theorem) {
        case Theorem::prop4: rec.rhs = prop4_rhs(*in.majorant, f, rec.n, params); break;
        case Theorem::thm5: rec.rhs = thm5_rhs(row, *in.majorant, f, params); break;
        case Theorem::thm6: rec.rhs = thm6_rhs(row, *in.majorant, f, params); break;
        case Theorem::thm2:
          rec.rhs = power_mean(row, std::span<const double>(omega.data(), row.size()), params.q);
          break;
      }
      rec = ratio_record(rec.n, rec.lhs, rec.rhs);
    } catch (const ToleranceError& e) {
      rec.lhs = rec.rhs = rec.ratio = std::nan("");
      rec.flags = {"tolerance", std::string("error:") + e.what()};
    } catch (const std::exception& e) {
      rec.lhs = rec.rhs = rec.ratio = std::nan("");
      rec.flags = {std::string("error:") + e.what()};
    }
  });

  auto& s = series.summary;
  for (const auto& rec : series.records) {
    if (std::isnan(rec.ratio)) {
      ++s.failures;
      if (std::find(rec.flags.begin(), rec.flags.end(), "tolerance") != rec.flags.end()) {
        ++s.tolerance_failures;
      }
      continue;
    }
    if (std::find(rec.flags.begin(), rec.flags.end(), "0/0") != rec.flags.end()) {
      ++s.zero_over_zero;
    }
    if (!s.argmax_n || rec.ratio > s.max_ratio) {
      s.max_ratio = rec.ratio;
      s.argmax_n = rec.n;
    }
  }

  if (uses_matrix) {
    const SequenceClass cls =
        in.theorem == Theorem::thm6 ? SequenceClass::ms : SequenceClass::gm2;
    try {
      auto report = class_membership(*in.matrix, cls, in.class_threshold, in.n_min, in.n_max,
                                     params.c);
      s.side_condition_ok = report.side_condition_ok;
      if (in.theorem != Theorem::thm2) s.class_check = std::move(report);
    } catch (const std::exception&) {
      s.side_condition_ok = false;
    }
  }
  return series;
}

}  // namespace apsum
