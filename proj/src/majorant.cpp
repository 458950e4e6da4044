#include "apsum/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "apsum/errors.hpp"

namespace apsum {

ModulusMajorant ModulusMajorant::power(double C, double gamma) {
  if (!std::isfinite(C) || C < 0.0) throw ValidationError("majorant.C", "must be >= 0");
  if (!(gamma > 0.0) || gamma > 1.0) {
    throw ValidationError("majorant.gamma", "must lie in (0, 1]");
  }
  ModulusMajorant w;
  w.kind_ = Kind::power;
  w.C_ = C;
  w.gamma_ = gamma;
  return w;
}

ModulusMajorant ModulusMajorant::table(std::vector<Knot> knots) {
  if (knots.empty()) throw ValidationError("majorant.knots", "at least one knot required");
  if (knots.front().first == 0.0) {
    if (knots.front().second != 0.0) {
      throw ValidationError("majorant.knots", "w(0) must be 0");
    }
  } else {
    knots.insert(knots.begin(), {0.0, 0.0});
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    const auto [d, v] = knots[i];
    if (!std::isfinite(d) || !std::isfinite(v)) {
      throw ValidationError("majorant.knots", "knots must be finite");
    }
    if (d <= knots[i - 1].first) {
      throw ValidationError("majorant.knots", "deltas must be strictly increasing and > 0");
    }
    if (v < knots[i - 1].second) {
      throw ValidationError("majorant.knots", "w must be nondecreasing");
    }
  }

  ModulusMajorant w;
  w.kind_ = Kind::table;
  w.knots_ = std::move(knots);

  const auto& ks = w.knots_;
  for (std::size_t i = 1; i < ks.size(); ++i) {
    for (std::size_t j = i; j < ks.size(); ++j) {
      const double lhs = w(ks[i].first + ks[j].first);
      const double rhs = ks[i].second + ks[j].second;
      if (lhs > rhs + 1e-12 * std::max(1.0, rhs)) {
        std::ostringstream msg;
        msg << "not subadditive at knots " << ks[i].first << ", " << ks[j].first;
        throw ValidationError("majorant.knots", msg.str());
      }
    }
  }
  return w;
}

double ModulusMajorant::operator()(double delta) const {
  if (delta <= 0.0) return 0.0;
  if (kind_ == Kind::power) return C_ * std::pow(delta, gamma_);

  if (delta >= knots_.back().first) return knots_.back().second;
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), delta,
                             [](double d, const Knot& k) { return d < k.first; });
  auto lo = std::prev(hi);
  const double s = (delta - lo->first) / (hi->first - lo->first);
  return lo->second + s * (hi->second - lo->second);
}

ModulusMajorant ModulusMajorant::scaled(double factor) const {
  if (!std::isfinite(factor) || factor < 0.0) {
    throw ValidationError("majorant", "scale factor must be finite and >= 0");
  }
  ModulusMajorant w = *this;
  w.C_ *= factor;
  for (auto& k : w.knots_) k.second *= factor;
  return w;
}

}  // namespace apsum
