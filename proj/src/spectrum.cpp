#include "apsum/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "apsum/errors.hpp"
#include "apsum/quadrature.hpp"

namespace apsum {

std::complex<double> SpectralTerm::amplitude() const {
  if (lambda == 0.0) return {cos_coeff, 0.0};
  return {0.5 * cos_coeff, -0.5 * sin_coeff};
}

double SpectralTerm::magnitude() const {
  if (lambda == 0.0) return std::abs(cos_coeff);
  return std::hypot(cos_coeff, sin_coeff);
}

double SpectralTerm::value_at(double x) const {
  if (lambda == 0.0) return cos_coeff;
  const double arg = lambda * x;
  return cos_coeff * std::cos(arg) + sin_coeff * std::sin(arg);
}

double Spectrum::max_lambda() const {
  double m = 0.0;
  for (const auto& t : terms) m = std::max(m, t.lambda);
  return m;
}

std::string to_string(SpectrumIssueKind kind) {
  switch (kind) {
    case SpectrumIssueKind::non_finite: return "non_finite";
    case SpectrumIssueKind::bad_alpha: return "bad_alpha";
    case SpectrumIssueKind::negative_frequency: return "negative_frequency";
    case SpectrumIssueKind::misplaced_zero_frequency: return "misplaced_zero_frequency";
    case SpectrumIssueKind::ordering: return "ordering";
    case SpectrumIssueKind::gap: return "gap";
    case SpectrumIssueKind::zero_amplitude: return "zero_amplitude";
  }
  return "unknown";
}

bool SpectrumReport::has(SpectrumIssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(),
                     [kind](const SpectrumIssue& i) { return i.kind == kind; });
}

std::string SpectrumReport::summary() const {
  if (issues.empty()) return "valid";
  std::ostringstream out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) out << "; ";
    out << to_string(issues[i].kind) << " at index " << issues[i].index << ": "
        << issues[i].message;
  }
  return out.str();
}

SpectrumReport validate_spectrum(const Spectrum& spectrum) {
  SpectrumReport report;
  auto add = [&](SpectrumIssueKind kind, std::size_t index, std::string msg) {
    report.issues.push_back({kind, index, std::move(msg)});
  };

  if (!std::isfinite(spectrum.alpha) || spectrum.alpha <= 0.0) {
    add(SpectrumIssueKind::bad_alpha, 0, "alpha must be finite and positive");
  }

  const auto& terms = spectrum.terms;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& t = terms[i];
    if (!std::isfinite(t.lambda) || !std::isfinite(t.cos_coeff) ||
        !std::isfinite(t.sin_coeff)) {
      add(SpectrumIssueKind::non_finite, i, "non-finite exponent or coefficient");
      continue;
    }
    if (t.lambda < 0.0) {
      add(SpectrumIssueKind::negative_frequency, i,
          "exponents are stored as nonnegative representatives");
    }
    if (t.lambda == 0.0 && i != 0) {
      add(SpectrumIssueKind::misplaced_zero_frequency, i,
          "lambda = 0 is only allowed for the first entry");
    }
    if (t.lambda > 0.0 && t.cos_coeff == 0.0 && t.sin_coeff == 0.0) {
      add(SpectrumIssueKind::zero_amplitude, i, "|A_nu| + |A_-nu| = 0");
    }
    if (i == 0) continue;
    const auto& prev = terms[i - 1];
    if (!std::isfinite(prev.lambda)) continue;
    if (t.lambda <= prev.lambda) {
      std::ostringstream msg;
      msg << "lambda " << t.lambda << " does not exceed previous " << prev.lambda;
      add(SpectrumIssueKind::ordering, i, msg.str());
    } else if (prev.lambda > 0.0 && t.lambda - prev.lambda < spectrum.alpha) {
      // The separation is only required between positive exponents.
      std::ostringstream msg;
      msg << "difference " << t.lambda - prev.lambda << " below alpha " << spectrum.alpha;
      add(SpectrumIssueKind::gap, i, msg.str());
    }
  }
  return report;
}

QuasiPeriodicFunction::QuasiPeriodicFunction(Spectrum spectrum)
    : spectrum_(std::move(spectrum)), max_lambda_(spectrum_.max_lambda()) {}

double QuasiPeriodicFunction::operator()(double x) const {
  double sum = 0.0;
  for (const auto& t : spectrum_.terms) sum += t.value_at(x);
  return sum;
}

double QuasiPeriodicFunction::phi(double x, double t) const {
  double sum = 0.0;
  for (const auto& term : spectrum_.terms) {
    if (term.lambda == 0.0) continue;
    const double s = std::sin(0.5 * term.lambda * t);
    sum += term.value_at(x) * s * s;
  }
  return -4.0 * sum;
}

double QuasiPeriodicFunction::amplitude_sum() const {
  double sum = 0.0;
  for (const auto& t : spectrum_.terms) sum += t.magnitude();
  return sum;
}

QuasiPeriodicFunction QuasiPeriodicFunction::translated(double shift) const {
  Spectrum out = spectrum_;
  for (auto& t : out.terms) {
    if (t.lambda == 0.0) continue;
    const double c = std::cos(t.lambda * shift);
    const double s = std::sin(t.lambda * shift);
    const double a = t.cos_coeff;
    const double b = t.sin_coeff;
    t.cos_coeff = a * c + b * s;
    t.sin_coeff = b * c - a * s;
  }
  return QuasiPeriodicFunction(std::move(out));
}

QuasiPeriodicFunction QuasiPeriodicFunction::difference(double t) const {
  Spectrum out = translated(t).spectrum_;
  for (std::size_t i = 0; i < out.terms.size(); ++i) {
    out.terms[i].cos_coeff -= spectrum_.terms[i].cos_coeff;
    out.terms[i].sin_coeff -= spectrum_.terms[i].sin_coeff;
    if (out.terms[i].lambda == 0.0) out.terms[i].cos_coeff = 0.0;
  }
  return QuasiPeriodicFunction(std::move(out));
}

QuasiPeriodicFunction QuasiPeriodicFunction::scaled(double factor) const {
  Spectrum out = spectrum_;
  for (auto& t : out.terms) {
    t.cos_coeff *= factor;
    t.sin_coeff *= factor;
  }
  return QuasiPeriodicFunction(std::move(out));
}

double eval_f(const QuasiPeriodicFunction& f, double x) { return f(x); }

double eval_phi(const QuasiPeriodicFunction& f, double x, double t) { return f.phi(x, t); }

std::complex<double> fourier_coefficient(const QuasiPeriodicFunction& f, double lambda,
                                         double L) {
  if (!std::isfinite(lambda)) throw ValidationError("lambda", "must be finite");
  if (!std::isfinite(L) || L <= 0.0) throw ValidationError("L", "must be finite and > 0");

  const double fastest = f.max_lambda() + std::abs(lambda);
  const double width = fastest > 0.0 ? std::min(std::numbers::pi / fastest, 1.0) : 1.0;
  const auto panels = static_cast<std::size_t>(std::ceil(L / width));

  quadrature::CompensatedSum re;
  quadrature::CompensatedSum im;
  quadrature::for_each_legendre_node(0.0, L, panels, [&](std::size_t, double t, double w) {
    const double v = w * f(t);
    re.add(v * std::cos(lambda * t));
    im.add(-v * std::sin(lambda * t));
  });
  return {re.value() / L, im.value() / L};
}

namespace {

// Continued-fraction approximation of r with denominator <= max_den; returns
// the denominator if |r - p/q| <= tol.
std::optional<long long> rational_denominator(double r, long long max_den, double tol) {
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = r;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(x);
    const auto ai = static_cast<long long>(a);
    const long long h2 = ai * h1 + h0;
    const long long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (std::abs(r - static_cast<double>(h1) / static_cast<double>(k1)) <=
        tol * std::max(1.0, std::abs(r))) {
      return k1;
    }
    const double frac = x - a;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace

std::optional<double> common_period(const Spectrum& spectrum) {
  std::vector<double> positive;
  for (const auto& t : spectrum.terms) {
    if (t.lambda > 0.0) positive.push_back(t.lambda);
  }
  if (positive.empty()) return std::nullopt;
  const double base = *std::min_element(positive.begin(), positive.end());

  // Every exponent is (integer / common denominator) * base.
  long long den = 1;
  for (double l : positive) {
    auto q = rational_denominator(l / base, 1000, 1e-12);
    if (!q) return std::nullopt;
    den = std::lcm(den, *q);
    if (den > 1000000) return std::nullopt;
  }
  std::vector<long long> numerators;
  for (double l : positive) {
    numerators.push_back(std::llround(l / base * static_cast<double>(den)));
  }
  long long g = 0;
  for (long long n : numerators) g = std::gcd(g, n);
  const double unit = base * static_cast<double>(g) / static_cast<double>(den);
  return 2.0 * std::numbers::pi / unit;
}

}  // namespace apsum
