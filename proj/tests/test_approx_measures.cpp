#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "apsum/approx_measures.hpp"
#include "apsum/errors.hpp"
#include "oracle.hpp"

using namespace apsum;
using oracle::mp;

namespace {

constexpr double kPi = std::numbers::pi;

QuasiPeriodicFunction make(std::vector<SpectralTerm> terms, double alpha = 1.0) {
  return QuasiPeriodicFunction(Spectrum{std::move(terms), alpha});
}

const QuasiPeriodicFunction kCos = make({{1, 1, 0}});
const QuasiPeriodicFunction kSmooth = make({{1, 1, 0}, {10, 0.1, 0}});
const QuasiPeriodicFunction kConst = make({{0, 1, 0}});

QuasiPeriodicFunction random_function(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_int_distribution<int> step(1, 3);
  std::vector<SpectralTerm> terms{{0.0, coef(rng), 0.0}};
  int lambda = 0;
  for (int i = 0; i < 3; ++i) {
    lambda += step(rng);
    terms.push_back({static_cast<double>(lambda), coef(rng), coef(rng)});
  }
  return make(terms);
}

// ((1/delta) int_0^delta phi_x(t)^2 dt)^{1/2} in closed form:
// phi = sum b_nu (cos(l_nu t) - 1) with b_nu = 2 e_nu(x).
double pointwise_l2_reference(const QuasiPeriodicFunction& f, double x, double delta) {
  const mp d = delta;
  auto S = [&](const mp& w) { return w == 0 ? d : mp(sin(w * d) / w); };
  std::vector<std::pair<mp, mp>> b;
  for (const auto& t : f.terms()) {
    if (t.lambda == 0.0) continue;
    const mp lx = mp(t.lambda) * mp(x);
    b.emplace_back(mp(t.lambda), 2 * (mp(t.cos_coeff) * cos(lx) + mp(t.sin_coeff) * sin(lx)));
  }
  mp sum = 0;
  for (const auto& [a, ba] : b) {
    for (const auto& [c, bc] : b) {
      sum += ba * bc * ((S(a - c) + S(a + c)) / 2 - S(a) - S(c) + d);
    }
  }
  return static_cast<double>(sqrt(sum / d));
}

}  // namespace

TEST_SUITE("approx_measures") {

TEST_CASE("stepanov_norm anchors") {
  for (double p : {1.5, 2.0, kInfinity}) CHECK(stepanov_norm(kConst, p) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(stepanov_norm(kCos, kInfinity) - 1.0) <= 1e-9);
  CHECK(std::abs(stepanov_norm(kCos, 2.0) - std::sqrt(0.5)) <= 1e-3);
  CHECK_THROWS_AS(stepanov_norm(kCos, 1.0), ValidationError);
  CHECK_THROWS_AS(stepanov_norm(kCos, 0.5), ValidationError);
}

TEST_CASE("stepanov_norm is nondecreasing in p") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_function(rng);
    double prev = 0.0;
    for (double p : {1.5, 2.0, 4.0, kInfinity}) {
      const double v = stepanov_norm(f, p);
      CHECK(v + 1e-9 >= prev);
      prev = v;
    }
  }
}

TEST_CASE("stepanov_norm is translation invariant on the grid") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> shift(-10.0, 10.0);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_function(rng);
    const double a = shift(rng);
    for (double p : {2.0, kInfinity}) {
      CHECK(std::abs(stepanov_norm(f.translated(a), p) - stepanov_norm(f, p)) <= 1e-3);
    }
  }
}

TEST_CASE("irrational spectra use the long u span") {
  const auto f = make({{1, 1, 0}, {std::numbers::sqrt2 * kPi, 0.5, 0}});
  CHECK(resolved_u_span(f, {}) == doctest::Approx(128.0 * kPi));
  CHECK(resolved_u_span(kSmooth, {}) == doctest::Approx(2.0 * kPi));
  WindowGrid g;
  g.u_span = 5.0;
  CHECK(resolved_u_span(kSmooth, g) == 5.0);
  const double s = stepanov_norm(f, kInfinity);
  CHECK(s <= 1.5);
  CHECK(s >= 1.4);
}

TEST_CASE("modulus_omega") {
  CHECK(modulus_omega(kCos, 0.0, 2.0) == 0.0);
  for (double d : {0.1, 1.0, 3.0}) {
    CHECK(std::abs(modulus_omega(kCos, d, kInfinity) - 2.0 * std::sin(d / 2.0)) <= 1e-3);
  }
  // For cos, f(.+t) - f = -2 sin(t/2) sin(. + t/2): S^2 norm is sqrt2 |sin(t/2)|.
  CHECK(std::abs(modulus_omega(kCos, 1.0, 2.0) - std::sqrt(2.0) * std::sin(0.5)) <= 1e-3);
  CHECK_THROWS_AS(modulus_omega(kCos, -1.0, 2.0), ValidationError);
}

TEST_CASE("modulus_omega is monotone in delta") {
  std::mt19937_64 rng(12);
  WindowGrid g;
  g.t_samples = 8;
  g.u_samples = 64;
  for (int i = 0; i < 4; ++i) {
    const auto f = random_function(rng);
    double prev = 0.0;
    for (double d : {0.2, 0.5, 1.0, 2.0, 3.0}) {
      const double v = modulus_omega(f, d, 2.0, g);
      CHECK(prev <= v + 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("pointwise_modulus") {
  CHECK(pointwise_modulus(kConst, 0.4, 1.0, 2.0) == 0.0);
  for (double d : {0.5, 1.0, 2.0}) {
    CHECK(std::abs(pointwise_modulus(kCos, 0.0, d, 1.0) - (2.0 - 2.0 * std::sin(d) / d)) <= 1e-6);
  }
  CHECK(pointwise_modulus(kSmooth, 0.3, 1e-6, 2.0) <= 1e-9);
  CHECK_THROWS_AS(pointwise_modulus(kCos, 0.0, 0.0, 2.0), ValidationError);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_function(rng);
    for (double d : {0.3, 2.0, 7.0}) {
      CHECK(pointwise_modulus(f, 0.9, d, 2.0) ==
            doctest::Approx(pointwise_l2_reference(f, 0.9, d)).epsilon(1e-10));
    }
  }
}

TEST_CASE("phi_average") {
  CHECK(phi_average(kConst, 0.0, 1.0, 2.0) == 0.0);
  CHECK(phi_average(kSmooth, 0.2, 1e-7, 0.9) == doctest::Approx(eval_phi(kSmooth, 0.2, 0.9)).epsilon(1e-6));
  for (double d : {0.3, 1.0, 4.0}) {
    for (double nu : {0.0, 0.5, 3.0}) {
      const double ref = 2.0 / d * (std::sin(nu + d) - std::sin(nu)) - 2.0;
      CHECK(std::abs(phi_average(kCos, 0.0, d, nu) - ref) <= 1e-9);
    }
  }
}

TEST_CASE("best_approx_tail") {
  CHECK(best_approx_tail(kSmooth, 5.0) == doctest::Approx(0.1));
  CHECK(best_approx_tail(kSmooth, 0.5) == doctest::Approx(1.1));
  CHECK(best_approx_tail(kSmooth, 10.0) == 0.0);
  CHECK(best_approx_tail(kSmooth, 50.0) == 0.0);
  double prev = kInfinity;
  for (double s = 0.0; s <= 12.0; s += 0.25) {
    const double v = best_approx_tail(kSmooth, s);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("omega_class_check") {
  const auto plan = SamplePlan::uniform(6, 2.0 * kPi);
  const auto w = ModulusMajorant::table({{2.0, 2.0}});  // min(delta, 2)

  const auto c = omega_class_check(kConst, 0.0, w, 2.0, plan);
  CHECK(c.shift_constant == 0.0);
  CHECK(c.modulus_constant == 0.0);
  CHECK(c.member);

  const auto r = omega_class_check(kCos, 0.0, w, 2.0, plan);
  CHECK(std::isfinite(r.constant()));
  // grid-scan oracle
  double c1 = 0.0;
  double c2 = 0.0;
  for (double g : plan.gammas) {
    for (double d : plan.deltas) c1 = std::max(c1, shifted_phi_modulus(kCos, 0.0, g, d, 2.0) / w(g));
  }
  for (double d : plan.deltas) c2 = std::max(c2, pointwise_l2_reference(kCos, 0.0, d) / w(d));
  CHECK(r.shift_constant == doctest::Approx(c1).epsilon(1e-12));
  CHECK(r.modulus_constant == doctest::Approx(c2).epsilon(1e-9));

  const auto zero = omega_class_check(kCos, 0.0, ModulusMajorant::power(0.0, 1.0), 2.0, plan);
  CHECK_FALSE(zero.member);
  CHECK(std::isinf(zero.constant()));

  SamplePlan bad = plan;
  bad.deltas.push_back(-1.0);
  CHECK_THROWS_AS(omega_class_check(kCos, 0.0, w, 2.0, bad), ValidationError);
}

TEST_CASE("shifted_phi_modulus against a direct sum") {
  // phi_x(t) - phi_x(t + g) for cos at x = 0 is 2 (cos t - cos(t + g)).
  const double g = 0.8;
  const double d = 1.7;
  const int n = 200000;
  double plus = 0.0;
  double minus = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) * d / n;
    plus += std::pow(2.0 * (std::cos(t) - std::cos(t + g)), 2);
    minus += std::pow(2.0 * (std::cos(t) - std::cos(t - g)), 2);
  }
  const double ref = std::sqrt(std::max(plus, minus) / n);
  CHECK(shifted_phi_modulus(kCos, 0.0, g, d, 2.0) == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("fit_majorant and the second-difference bound") {
  const auto plan = SamplePlan::uniform(10, 2.0 * kPi);
  const auto fit = fit_majorant(kSmooth, 0.7, ModulusMajorant::power(1.0, 1.0), 2.0, plan);
  const auto again = omega_class_check(kSmooth, 0.7, fit.majorant, 2.0, plan);
  CHECK(again.constant() <= 1.0 + 1e-12);
  CHECK_THROWS_AS(fit_majorant(kSmooth, 0.7, ModulusMajorant::power(0.0, 1.0), 2.0, plan),
                  ValidationError);

  for (double x : {0.0, 2.1}) CHECK(check_eq7(kConst, x, ModulusMajorant::power(0.0, 1.0), 1.0, 2.0));
  std::size_t violations = 0;
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      if (!check_eq7(kSmooth, 0.7, fit.majorant, 2.0 * kPi * i / 20, 2.0 * kPi * j / 20)) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("pointwise modulus stays below the norm modulus") {
  for (double d : {0.25, 0.5, 1.0}) {
    const double omega = modulus_omega(kSmooth, d, 2.0);
    double sup = 0.0;
    for (int i = 0; i < 64; ++i) sup = std::max(sup, pointwise_modulus(kSmooth, 2.0 * kPi * i / 64, d, 2.0));
    CHECK(sup <= omega * (1.0 + 1e-3) + 1e-6);
    double shifted = 0.0;
    for (int i = 0; i < 16; ++i) {
      shifted = std::max(shifted, shifted_phi_modulus(kSmooth, 2.0 * kPi * i / 16, d, d, 2.0));
    }
    CHECK(shifted <= 4.0 * omega);
  }
}

}  // TEST_SUITE
