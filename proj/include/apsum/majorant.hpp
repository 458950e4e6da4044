#pragma once

#include <utility>
#include <vector>

namespace apsum {

/// Function of modulus-of-continuity type: w(0) = 0, nondecreasing,
/// subadditive. Either C * delta^gamma with 0 < gamma <= 1, or a
/// piecewise-linear table through (0, 0) that stays flat past the last knot.
class ModulusMajorant {
 public:
  enum class Kind { power, table };
  using Knot = std::pair<double, double>;

  static ModulusMajorant power(double C, double gamma);
  /// Knots (delta, w) with strictly increasing delta > 0; (0, 0) is implied.
  /// Monotonicity and subadditivity on all knot pairs are checked here.
  static ModulusMajorant table(std::vector<Knot> knots);

  double operator()(double delta) const;
  ModulusMajorant scaled(double factor) const;

  Kind kind() const noexcept { return kind_; }
  double coefficient() const noexcept { return C_; }
  double exponent() const noexcept { return gamma_; }
  const std::vector<Knot>& knots() const noexcept { return knots_; }

 private:
  ModulusMajorant() = default;

  Kind kind_ = Kind::power;
  double C_ = 1.0;
  double gamma_ = 1.0;
  std::vector<Knot> knots_;  // includes (0, 0)
};

}  // namespace apsum
