#pragma once

#include <cmath>
#include <cstddef>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace apsum::quadrature {

/// Neumaier-compensated running sum; summation order is the call order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

inline constexpr std::size_t kLegendreOrder = 8;

/// Calls visit(panel_index, node, weight) for every node of a composite
/// 8-point Gauss-Legendre rule on [a, b] with `panels` equal panels.
/// Weights already include the panel half-width.
template <class Visit>
void for_each_legendre_node(double a, double b, std::size_t panels, Visit&& visit) {
  using rule = boost::math::quadrature::gauss<double, kLegendreOrder>;
  const auto& x = rule::abscissa();
  const auto& w = rule::weights();
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    const double half = 0.5 * h;
    // 8-point rule has no centre node; abscissae come in +/- pairs.
    for (std::size_t i = 0; i < x.size(); ++i) {
      visit(p, mid - half * x[i], half * w[i]);
      visit(p, mid + half * x[i], half * w[i]);
    }
  }
}

template <class F>
double gauss_legendre(F&& f, double a, double b, std::size_t panels) {
  CompensatedSum total;
  for_each_legendre_node(a, b, panels,
                         [&](std::size_t, double t, double wt) { total.add(wt * f(t)); });
  return total.value();
}

/// Composite Gauss-Kronrod 7/15. The error estimate is the summed per-panel
/// |K15 - G7|, i.e. the error of the embedded Gauss rule; the returned value
/// is the Kronrod result.
template <class F>
Estimate gauss_kronrod(F&& f, double a, double b, std::size_t panels) {
  using rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  using gauss = boost::math::quadrature::gauss<double, 7>;
  const auto& x = rule::abscissa();
  const auto& wk = rule::weights();
  const auto& wg = gauss::weights();
  const double h = (b - a) / static_cast<double>(panels);

  CompensatedSum total;
  double error = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double half = 0.5 * h;
    const double mid = lo + half;
    const double f0 = f(mid);
    double k15 = wk[0] * f0;
    double g7 = wg[0] * f0;
    for (std::size_t i = 1; i < x.size(); ++i) {
      const double pair = f(mid - half * x[i]) + f(mid + half * x[i]);
      k15 += wk[i] * pair;
      // Gauss nodes sit at the even Kronrod indices.
      if (i % 2 == 0) g7 += wg[i / 2] * pair;
    }
    total.add(half * k15);
    error += half * std::abs(k15 - g7);
  }
  return {total.value(), error};
}

}  // namespace apsum::quadrature
