#include "apsum/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <gsl/gsl_sf_expint.h>

#include "apsum/errors.hpp"
#include "apsum/quadrature.hpp"

namespace apsum {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double u) {
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

struct Interval {
  double lo;
  double hi;
};

Interval gap_interval(double alpha, int k) {
  return {0.5 * alpha * k, 0.5 * alpha * (k + 1)};
}

std::vector<const SpectralTerm*> exponents_inside(const QuasiPeriodicFunction& f, int k) {
  const auto [lo, hi] = gap_interval(f.alpha(), k);
  std::vector<const SpectralTerm*> inside;
  for (const auto& t : f.terms()) {
    if (t.lambda > lo && t.lambda < hi) inside.push_back(&t);
  }
  return inside;
}

// The kernel oscillation 4 pi / (alpha (2k+1)) gets panels_per_oscillation
// panels; every product frequency of f(x +- t) Psi_k(t) gets at least one
// 15-point panel per period.
double panel_width(double max_lambda, double alpha, int k, double eta,
                   const QuadratureConfig& cfg) {
  const double kernel = 4.0 * kPi / (alpha * (2 * k + 1)) / cfg.panels_per_oscillation;
  const double product = 2.0 * kPi / (max_lambda + eta);
  return std::min(kernel, product);
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!std::isfinite(truncation_T)) {
    throw ValidationError("truncation_T", "must be finite");
  }
  if (panels_per_oscillation < 4) {
    throw ValidationError("panels_per_oscillation", "must be >= 4");
  }
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw ValidationError("rel_tol", "must be positive");
  }
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
    throw ValidationError("abs_tol", "must be positive");
  }
}

double QuadratureConfig::default_truncation(double alpha) {
  return 16.0 * (2.0 * kPi / alpha);
}

double QuadratureConfig::resolved_T(double alpha) const {
  return truncation_T > 0.0 ? truncation_T : default_truncation(alpha);
}

double psi(double lambda, double eta, double t) {
  if (!(lambda > 0.0) || !(eta > lambda)) {
    throw ValidationError("eta", "psi requires 0 < lambda < eta");
  }
  const double a = 0.5 * (eta - lambda);
  const double b = 0.5 * (eta + lambda);
  if (std::abs(t) < 1e-8) {
    return (eta + lambda) / (2.0 * kPi) * (1.0 - (a * a + b * b) * t * t / 6.0);
  }
  return 2.0 * std::sin(a * t) * std::sin(b * t) / (kPi * (eta - lambda) * t * t);
}

double psi_k(double alpha, int k, double t) {
  if (!(alpha > 0.0)) throw ValidationError("alpha", "must be positive");
  if (k < 1) throw ValidationError("k", "psi_k requires k >= 1");
  const double slow = 0.25 * alpha;
  const double fast = 0.25 * alpha * (2 * k + 1);
  // 4 sin(slow t) sin(fast t) / (alpha pi t^2) written with sinc factors.
  return 4.0 * slow * fast / (alpha * kPi) * sinc(slow * t) * sinc(fast * t);
}

double partial_sum_direct(const QuasiPeriodicFunction& f, double gamma, double x) {
  double sum = 0.0;
  for (const auto& t : f.terms()) {
    if (t.lambda <= gamma) sum += t.value_at(x);
  }
  return sum;
}

bool gap_free(const QuasiPeriodicFunction& f, int k) {
  if (k < 0) throw ValidationError("k", "must be >= 0");
  return exponents_inside(f, k).empty();
}

double cosine_tail_integral(double w, double T) {
  if (w == 0.0) return 1.0 / T;
  const double wt = w * T;
  return std::cos(wt) / T - w * (0.5 * kPi - gsl_sf_Si(wt));
}

KernelSum partial_sum_kernel_detailed(const QuasiPeriodicFunction& f, int k, double x,
                                      const QuadratureConfig& cfg) {
  cfg.validate();
  if (k < 0) throw ValidationError("k", "must be >= 0");
  const double alpha = f.alpha();
  if (!(alpha > 0.0)) throw ValidationError("alpha", "must be positive");

  KernelSum out;
  if (k == 0) {
    out.value = partial_sum_direct(f, 0.0, x);
    return out;
  }

  int kernel_index = k;
  const SpectralTerm* removed = nullptr;
  if (auto inside = exponents_inside(f, k); !inside.empty()) {
    if (inside.size() > 1) {
      throw ValidationError("spectrum", "more than one exponent inside a gap interval");
    }
    removed = inside.front();
    kernel_index = k + 1;
    if (!gap_free(f, kernel_index)) {
      throw ValidationError("spectrum", "gap condition violated next to a shifted interval");
    }
  }

  const double lambda = 0.5 * alpha * kernel_index;
  const double eta = 0.5 * alpha * (kernel_index + 1);
  const double T = cfg.resolved_T(alpha);
  const double width = panel_width(f.max_lambda(), alpha, kernel_index, eta, cfg);
  const auto panels = static_cast<std::size_t>(std::ceil(T / width));

  const auto est = quadrature::gauss_kronrod(
      [&](double t) { return (f(x + t) + f(x - t)) * psi_k(alpha, kernel_index, t); }, 0.0, T,
      panels);

  out.quadrature_error = est.error;
  out.tail_bound = 8.0 * f.amplitude_sum() / (alpha * kPi * T);
  if (cfg.tail == TailMode::exact) {
    // f(x+t) + f(x-t) = sum 2 e_nu(x) cos(lambda_nu t), and
    // Psi = (cos(lambda t) - cos(eta t)) / (pi (eta - lambda) t^2).
    quadrature::CompensatedSum tail;
    for (const auto& term : f.terms()) {
      const double e = term.value_at(x);
      if (e == 0.0) continue;
      const double mu = term.lambda;
      const double bracket =
          cosine_tail_integral(std::abs(mu - lambda), T) + cosine_tail_integral(mu + lambda, T) -
          cosine_tail_integral(std::abs(mu - eta), T) - cosine_tail_integral(mu + eta, T);
      tail.add(e * bracket / (kPi * (eta - lambda)));
    }
    out.tail = tail.value();
    out.error_estimate = out.quadrature_error;
  } else {
    out.error_estimate = out.quadrature_error + out.tail_bound;
  }

  out.value = est.value + out.tail;
  if (removed != nullptr) {
    out.value -= removed->value_at(x);
    out.shifted = true;
    out.removed_lambda = removed->lambda;
  }

  const double budget = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(out.value));
  if (out.error_estimate > budget) {
    std::ostringstream msg;
    msg << "partial_sum_kernel k=" << k << " x=" << x << ": error estimate "
        << out.error_estimate << " exceeds budget " << budget;
    throw ToleranceError(msg.str(), out.error_estimate, budget);
  }
  return out;
}

double partial_sum_kernel(const QuasiPeriodicFunction& f, int k, double x,
                          const QuadratureConfig& cfg) {
  return partial_sum_kernel_detailed(f, k, x, cfg).value;
}

KernelSum kernel_normalization(double alpha, int k, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(alpha > 0.0)) throw ValidationError("alpha", "must be positive");
  if (k < 1) throw ValidationError("k", "must be >= 1");

  const double lambda = 0.5 * alpha * k;
  const double eta = 0.5 * alpha * (k + 1);
  const double T = cfg.resolved_T(alpha);
  const double width = panel_width(0.0, alpha, k, eta, cfg);
  const auto panels = static_cast<std::size_t>(std::ceil(T / width));

  const auto est =
      quadrature::gauss_kronrod([&](double t) { return psi_k(alpha, k, t); }, 0.0, T, panels);

  KernelSum out;
  out.quadrature_error = est.error;
  out.tail_bound = 4.0 / (alpha * kPi * T);
  if (cfg.tail == TailMode::exact) {
    out.tail = (cosine_tail_integral(lambda, T) - cosine_tail_integral(eta, T)) /
               (kPi * (eta - lambda));
    out.error_estimate = out.quadrature_error;
  } else {
    out.error_estimate = out.quadrature_error + out.tail_bound;
  }
  out.value = est.value + out.tail;
  return out;
}

}  // namespace apsum
