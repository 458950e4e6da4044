#include "apsum/approx_measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "apsum/errors.hpp"
#include "apsum/quadrature.hpp"

namespace apsum {

namespace {

constexpr double kPi = std::numbers::pi;

double ratio(double num, double den) {
  if (num == 0.0) return 0.0;
  if (den == 0.0) return kInfinity;
  return num / den;
}

void check_p(double p, double lower, bool inclusive) {
  const bool ok = inclusive ? p >= lower : p > lower;
  if (std::isnan(p) || !ok) {
    throw ValidationError("p", inclusive ? "must be >= 1" : "must be > 1");
  }
}

void check_delta(double delta) {
  if (!std::isfinite(delta) || delta <= 0.0) {
    throw ValidationError("delta", "must be finite and > 0");
  }
}

// Panels for integrals over [0, delta] of phi_x-type integrands: eight
// panels per period of the fastest exponent, never fewer than 16.
std::size_t phi_panels(const QuasiPeriodicFunction& f, double length) {
  const double periods = length * f.max_lambda() / (2.0 * kPi);
  return std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(8.0 * periods)));
}

double lp_mean(double length, std::size_t panels, double p, double a,
               const std::function<double(double)>& g) {
  if (std::isinf(p)) {
    double sup = std::abs(g(a + length));
    quadrature::for_each_legendre_node(a, a + length, panels, [&](std::size_t, double t, double) {
      sup = std::max(sup, std::abs(g(t)));
    });
    return sup;
  }
  const double integral = quadrature::gauss_legendre(
      [&](double t) { return std::pow(std::abs(g(t)), p); }, a, a + length, panels);
  return std::pow(std::max(integral, 0.0) / length, 1.0 / p);
}

// Window layout: windows [u, u + pi] are unions of M panels of width pi/M,
// and consecutive u samples are r panels apart.
struct Layout {
  double h = 0.0;
  std::size_t M = 0;
  std::size_t r = 0;
  std::size_t windows = 0;
};

Layout window_layout(const QuasiPeriodicFunction& f, double span, const WindowGrid& grid) {
  const double step = span / static_cast<double>(grid.u_samples);
  Layout l;
  l.M = std::max({grid.panels_per_window,
                  static_cast<std::size_t>(std::ceil(4.0 * f.max_lambda())),
                  static_cast<std::size_t>(std::ceil(kPi / step))});
  l.h = kPi / static_cast<double>(l.M);
  l.r = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(step / l.h * (1.0 + 1e-12))));
  const double stride = static_cast<double>(l.r) * l.h;
  l.windows = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / stride - 1e-9)));
  return l;
}

double stepanov_norm_with_span(const QuasiPeriodicFunction& f, double p, double span,
                               const WindowGrid& grid) {
  const Layout l = window_layout(f, span, grid);
  const std::size_t panels = (l.windows - 1) * l.r + l.M;
  const double end = l.h * static_cast<double>(panels);

  if (std::isinf(p)) {
    double sup = 0.0;
    for (std::size_t i = 0; i <= panels; ++i) {
      sup = std::max(sup, std::abs(f(l.h * static_cast<double>(i))));
    }
    quadrature::for_each_legendre_node(0.0, end, panels, [&](std::size_t, double t, double) {
      sup = std::max(sup, std::abs(f(t)));
    });
    return sup;
  }

  std::vector<double> cell(panels, 0.0);
  quadrature::for_each_legendre_node(0.0, end, panels, [&](std::size_t i, double t, double w) {
    cell[i] += w * std::pow(std::abs(f(t)), p);
  });
  // Prefix sums of nonnegative terms; window sums are differences.
  std::vector<long double> prefix(panels + 1, 0.0L);
  for (std::size_t i = 0; i < panels; ++i) prefix[i + 1] = prefix[i] + cell[i];

  double best = 0.0;
  for (std::size_t j = 0; j < l.windows; ++j) {
    const std::size_t lo = j * l.r;
    const auto window = static_cast<double>(prefix[lo + l.M] - prefix[lo]);
    best = std::max(best, window);
  }
  return std::pow(std::max(best, 0.0) / kPi, 1.0 / p);
}

}  // namespace

void WindowGrid::validate() const {
  if (u_samples == 0) throw ValidationError("grid.u_samples", "must be > 0");
  if (panels_per_window == 0) throw ValidationError("grid.panels_per_window", "must be > 0");
  if (t_samples == 0) throw ValidationError("grid.t_samples", "must be > 0");
  if (!std::isfinite(u_span)) throw ValidationError("grid.u_span", "must be finite");
}

double resolved_u_span(const QuasiPeriodicFunction& f, const WindowGrid& grid) {
  if (grid.u_span > 0.0) return grid.u_span;
  if (auto period = common_period(f.spectrum())) return *period;
  double lambda_min = kInfinity;
  for (const auto& t : f.terms()) {
    if (t.lambda > 0.0) lambda_min = std::min(lambda_min, t.lambda);
  }
  if (std::isinf(lambda_min)) return kPi;  // constant: every window is the same
  return 64.0 * 2.0 * kPi / lambda_min;
}

double stepanov_norm(const QuasiPeriodicFunction& f, double p, const WindowGrid& grid) {
  check_p(p, 1.0, false);
  grid.validate();
  return stepanov_norm_with_span(f, p, resolved_u_span(f, grid), grid);
}

double modulus_omega(const QuasiPeriodicFunction& f, double delta, double p,
                     const WindowGrid& grid) {
  check_p(p, 1.0, false);
  grid.validate();
  if (std::isnan(delta) || delta < 0.0) throw ValidationError("delta", "must be >= 0");
  if (delta == 0.0) return 0.0;

  // The difference has the same exponents, so the span is fixed from f.
  const double span = resolved_u_span(f, grid);
  auto g = [&](double t) { return stepanov_norm_with_span(f.difference(t), p, span, grid); };

  const auto n = static_cast<std::ptrdiff_t>(grid.t_samples);
  const double dt = delta / static_cast<double>(n);
  std::vector<double> ts;
  std::vector<double> values;
  for (std::ptrdiff_t j = -n; j <= n; ++j) {
    const double t = j == n ? delta : (j == -n ? -delta : dt * static_cast<double>(j));
    ts.push_back(t);
    values.push_back(g(t));
  }
  double best = *std::max_element(values.begin(), values.end());

  // Golden-section refinement around the three largest interior local maxima.
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] >= values[i - 1] && values[i] >= values[i + 1]) peaks.push_back(i);
  }
  std::sort(peaks.begin(), peaks.end(),
            [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  if (peaks.size() > 3) peaks.resize(3);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i : peaks) {
    double a = ts[i - 1];
    double b = ts[i + 1];
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double gc = g(c);
    double gd = g(d);
    for (int it = 0; it < 60 && b - a > 1e-10 * std::max(1.0, delta); ++it) {
      if (gc >= gd) {
        b = d; d = c; gd = gc;
        c = b - inv_phi * (b - a);
        gc = g(c);
      } else {
        a = c; c = d; gc = gd;
        d = a + inv_phi * (b - a);
        gd = g(d);
      }
    }
    best = std::max({best, gc, gd});
  }
  return best;
}

double pointwise_modulus(const QuasiPeriodicFunction& f, double x, double delta, double p) {
  check_delta(delta);
  check_p(p, 1.0, true);
  return lp_mean(delta, phi_panels(f, delta), p, 0.0, [&](double t) { return f.phi(x, t); });
}

double phi_average(const QuasiPeriodicFunction& f, double x, double delta, double nu) {
  check_delta(delta);
  if (!std::isfinite(nu) || nu < 0.0) throw ValidationError("nu", "must be finite and >= 0");
  const double integral = quadrature::gauss_legendre([&](double u) { return f.phi(x, u); }, nu,
                                                     nu + delta, phi_panels(f, delta));
  return integral / delta;
}

double shifted_phi_modulus(const QuasiPeriodicFunction& f, double x, double gamma,
                           double delta, double p) {
  check_delta(delta);
  check_p(p, 1.0, true);
  if (!std::isfinite(gamma) || gamma < 0.0) throw ValidationError("gamma", "must be >= 0");
  const std::size_t panels = phi_panels(f, delta);
  double worst = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double v = lp_mean(delta, panels, p, 0.0, [&](double t) {
      return f.phi(x, t) - f.phi(x, t + sign * gamma);
    });
    worst = std::max(worst, v);
  }
  return worst;
}

double best_approx_tail(const QuasiPeriodicFunction& f, double sigma) {
  if (std::isnan(sigma)) throw ValidationError("sigma", "must not be NaN");
  double sum = 0.0;
  for (const auto& t : f.terms()) {
    if (t.lambda > sigma) sum += t.magnitude();
  }
  return sum;
}

SamplePlan SamplePlan::uniform(std::size_t count, double max, double threshold) {
  if (count == 0) throw ValidationError("plan", "count must be > 0");
  if (!std::isfinite(max) || max <= 0.0) throw ValidationError("plan", "max must be > 0");
  SamplePlan plan;
  plan.threshold = threshold;
  for (std::size_t i = 1; i <= count; ++i) {
    plan.gammas.push_back(max * static_cast<double>(i) / static_cast<double>(count));
  }
  plan.deltas = plan.gammas;
  return plan;
}

OmegaClassReport omega_class_check(const QuasiPeriodicFunction& f, double x,
                                   const ModulusMajorant& w, double p, const SamplePlan& plan) {
  if (plan.gammas.empty() || plan.deltas.empty()) {
    throw ValidationError("plan", "gamma and delta samples must be nonempty");
  }
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!std::all_of(plan.gammas.begin(), plan.gammas.end(), positive) ||
      !std::all_of(plan.deltas.begin(), plan.deltas.end(), positive)) {
    throw ValidationError("plan", "samples must be finite and > 0");
  }

  OmegaClassReport report;
  report.threshold = plan.threshold;
  for (double gamma : plan.gammas) {
    const double wg = w(gamma);
    for (double delta : plan.deltas) {
      report.shift_constant =
          std::max(report.shift_constant, ratio(shifted_phi_modulus(f, x, gamma, delta, p), wg));
    }
  }
  for (double delta : plan.deltas) {
    report.modulus_constant =
        std::max(report.modulus_constant, ratio(pointwise_modulus(f, x, delta, p), w(delta)));
  }
  const double c = report.constant();
  report.member = std::isfinite(c) && c <= plan.threshold;
  return report;
}

FittedMajorant fit_majorant(const QuasiPeriodicFunction& f, double x,
                            const ModulusMajorant& base, double p, const SamplePlan& plan) {
  const auto report = omega_class_check(f, x, base, p, plan);
  const double c = report.constant();
  if (!std::isfinite(c)) {
    throw ValidationError("majorant", "no finite constant fits the sampled inequalities");
  }
  return {base.scaled(c), report};
}

bool check_eq7(const QuasiPeriodicFunction& f, double x, const ModulusMajorant& w,
               double delta1, double delta2) {
  return std::abs(phi_average(f, x, delta1, delta2)) <= w(delta1) + w(delta2) + 1e-9;
}

}  // namespace apsum
