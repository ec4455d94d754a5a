#include "wg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wg {

namespace {

// Value and derivative of the degree-n Legendre polynomial at x,
// by the three-term recurrence.
std::pair<double, double> legendre_with_deriv(int n, double x) {
  double p_prev = 1.0;
  double p = x;
  for (int m = 2; m <= n; ++m) {
    const double p_next = ((2.0 * m - 1.0) * x * p - (m - 1.0) * p_prev) / m;
    p_prev = p;
    p = p_next;
  }
  const double dp = n * (x * p - p_prev) / (x * x - 1.0);
  return {p, dp};
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 30) {
    throw std::invalid_argument("gauss_legendre: order must be in [1, 30]");
  }

  QuadratureRule rule;
  rule.order = n;
  rule.points.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  if (n == 1) {
    rule.points[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }

  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double value = 0.0, slope = 0.0;
    for (int it = 0; it < 100; ++it) {
      std::tie(value, slope) = legendre_with_deriv(n, x);
      const double dx = -value / slope;
      x += dx;
      if (std::abs(dx) < 1e-16) break;
    }
    std::tie(value, slope) = legendre_with_deriv(n, x);
    if (std::abs(value) >= 1e-15) {
      throw std::runtime_error("gauss_legendre: Newton iteration stalled");
    }
    const double w = 2.0 / ((1.0 - x * x) * slope * slope);
    rule.points[n - 1 - i] = x;
    rule.points[i] = -x;
    rule.weights[n - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (n % 2 == 1) {
    rule.points[n / 2] = 0.0;
    const auto [value, slope] = legendre_with_deriv(n, 0.0);
    (void)value;
    rule.weights[n / 2] = 2.0 / (slope * slope);
  }
  return rule;
}

}  // namespace wg
