#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "apsum/errors.hpp"
#include "apsum/spectrum.hpp"
#include "oracle.hpp"

using namespace apsum;

namespace {

QuasiPeriodicFunction make(std::vector<SpectralTerm> terms, double alpha = 1.0) {
  return QuasiPeriodicFunction(Spectrum{std::move(terms), alpha});
}

QuasiPeriodicFunction random_function(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> gap(1.0, 3.0);
  std::vector<SpectralTerm> terms{{0.0, coef(rng), 0.0}};
  double lambda = 0.0;
  for (int i = 0; i < 5; ++i) {
    lambda += gap(rng);
    terms.push_back({lambda, coef(rng), coef(rng)});
  }
  return make(terms);
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("eval_f on simple functions") {
  CHECK(eval_f(make({{1.0, 1.0, 0.0}}), 0.0) == 1.0);
  CHECK(eval_f(make({{0.0, 3.0, 0.0}}), 17.2) == 3.0);
}

TEST_CASE("eval_f matches a 50-digit summation") {
  const auto f = make({{1.0, 1.0, 0.0}, {10.0, 0.1, 0.0}});
  const double ref = static_cast<double>(oracle::eval(f, oracle::mp("0.3")));
  CHECK(eval_f(f, 0.3) == doctest::Approx(ref).epsilon(1e-15));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_function(rng);
    const double x = std::uniform_real_distribution<double>(-20.0, 20.0)(rng);
    const double r = static_cast<double>(oracle::eval(g, oracle::mp(x)));
    CHECK(std::abs(eval_f(g, x) - r) <= 1e-13);
  }
}

TEST_CASE("eval_phi identities") {
  const auto c = make({{0.0, 2.5, 0.0}});
  CHECK(eval_phi(c, 1.3, 0.7) == 0.0);

  const auto cosine = make({{1.0, 1.0, 0.0}});
  for (double t : {0.1, 1.0, 2.5}) {
    CHECK(eval_phi(cosine, 0.0, t) == doctest::Approx(2.0 * std::cos(t) - 2.0).epsilon(1e-14));
  }

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 50; ++i) {
    const auto f = random_function(rng);
    const double x = u(rng);
    const double t = u(rng);
    CHECK(eval_phi(f, x, 0.0) == 0.0);
    CHECK(std::abs(eval_phi(f, x, t) - eval_phi(f, x, -t)) <= 1e-14);
    const double direct = f(x + t) + f(x - t) - 2.0 * f(x);
    CHECK(std::abs(eval_phi(f, x, t) - direct) <= 1e-12);
  }
}

TEST_CASE("fourier_coefficient") {
  const auto c = make({{0.0, 2.0, 0.0}});
  CHECK(fourier_coefficient(c, 0.0, 7.3).real() == doctest::Approx(2.0).epsilon(1e-14));

  const auto cosine = make({{1.0, 1.0, 0.0}});
  const auto a = fourier_coefficient(cosine, 1.0, 1e4);
  CHECK(std::abs(a - std::complex<double>(0.5, 0.0)) <= 1e-3);
  CHECK(std::abs(fourier_coefficient(cosine, 3.7, 1e4)) <= 1e-3);

  CHECK_THROWS_AS(fourier_coefficient(cosine, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(fourier_coefficient(cosine, NAN, 1.0), ValidationError);
}

TEST_CASE("fourier_coefficient error decays like 1/L") {
  // For A at lambda, the finite-L error is a sum of terms
  // B (e^{i d L} - 1) / (i d L) over the other exponents (d = their offset),
  // so L * error stays below sum |B| * 2 / |d|.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_function(rng);
    const auto& terms = f.terms();
    const auto& target = terms[2];
    double envelope = 0.0;
    for (const auto& t : terms) {
      if (&t == &target) continue;
      const double d1 = std::abs(t.lambda - target.lambda);
      envelope += std::abs(t.amplitude()) * 2.0 / d1;
      if (t.lambda > 0.0) envelope += std::abs(t.amplitude()) * 2.0 / (t.lambda + target.lambda);
    }
    envelope += std::abs(target.amplitude()) * 2.0 / (2.0 * target.lambda);  // conjugate partner
    double worst = 0.0;
    for (double L : {100.0, 200.0, 400.0, 800.0, 1600.0}) {
      const double err = std::abs(fourier_coefficient(f, target.lambda, L) - target.amplitude());
      CHECK(L * err <= envelope * (1.0 + 1e-9));
      worst = std::max(worst, err);
    }
    CHECK(worst <= envelope / 100.0 + 1e-12);
  }
}

TEST_CASE("validate_spectrum") {
  CHECK(validate_spectrum({{{0, 1, 0}, {1, 1, 0}, {2, 1, 0}, {3, 1, 0}}, 1.0}).valid());

  const auto gap = validate_spectrum({{{0, 1, 0}, {1, 1, 0}, {1.5, 1, 0}}, 1.0});
  REQUIRE(gap.has(SpectrumIssueKind::gap));
  CHECK(gap.issues.front().index == 2);

  CHECK(validate_spectrum({{{0, 1, 0}, {2, 1, 0}, {1, 1, 0}}, 1.0})
            .has(SpectrumIssueKind::ordering));
  CHECK(validate_spectrum({{{1, 1, 0}, {0, 1, 0}}, 1.0})
            .has(SpectrumIssueKind::misplaced_zero_frequency));
  CHECK(validate_spectrum({{{1, 0, 0}}, 1.0}).has(SpectrumIssueKind::zero_amplitude));
  CHECK(validate_spectrum({{{1, 1, 0}}, 0.0}).has(SpectrumIssueKind::bad_alpha));
  CHECK(validate_spectrum({{{-1, 1, 0}}, 1.0}).has(SpectrumIssueKind::negative_frequency));
  CHECK(validate_spectrum({{{1, NAN, 0}}, 1.0}).has(SpectrumIssueKind::non_finite));
  // The step from the zero exponent to the first positive one is unconstrained.
  CHECK(validate_spectrum({{{0, 1, 0}, {0.25, 1, 0}, {1.25, 1, 0}}, 1.0}).valid());
}

TEST_CASE("amplitudes and transformations") {
  const SpectralTerm t{2.0, 0.6, 0.8};
  CHECK(t.magnitude() == doctest::Approx(1.0));
  CHECK(t.amplitude().real() == doctest::Approx(0.3));
  CHECK(t.amplitude().imag() == doctest::Approx(-0.4));

  std::mt19937_64 rng(9);
  const auto f = random_function(rng);
  const auto shifted = f.translated(0.8);
  const auto diff = f.difference(0.8);
  const auto scaled = f.scaled(-2.0);
  for (double x : {-3.0, 0.0, 1.7}) {
    CHECK(shifted(x) == doctest::Approx(f(x + 0.8)).epsilon(1e-13));
    CHECK(diff(x) == doctest::Approx(f(x + 0.8) - f(x)).epsilon(1e-12));
    CHECK(scaled(x) == doctest::Approx(-2.0 * f(x)).epsilon(1e-14));
  }
  CHECK(f.amplitude_sum() >= std::abs(f(0.3)));
}

TEST_CASE("common_period") {
  const auto p = common_period({{{1, 1, 0}, {10, 0.1, 0}}, 1.0});
  REQUIRE(p);
  CHECK(*p == doctest::Approx(2.0 * std::numbers::pi));
  const auto half = common_period({{{1.5, 1, 0}, {2.5, 1, 0}}, 1.0});
  REQUIRE(half);
  CHECK(*half == doctest::Approx(4.0 * std::numbers::pi));
  CHECK_FALSE(common_period({{{1, 1, 0}, {std::numbers::sqrt2 * std::numbers::pi, 1, 0}}, 1.0}));
  CHECK_FALSE(common_period({{{0, 1, 0}}, 1.0}));
}

}  // TEST_SUITE
