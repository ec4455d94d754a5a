#pragma once

#include <vector>

namespace wg {

/// Gauss-Legendre rule on the reference interval [-1, 1].
/// An n-point rule integrates polynomials of degree <= 2n-1 exactly.
struct QuadratureRule {
  int order = 0;                // number of points
  std::vector<double> points;   // ascending, contained in (-1, 1)
  std::vector<double> weights;  // positive, summing to 2
};

/// Builds the n-point Gauss-Legendre rule. Nodes are the roots of the
/// degree-n Legendre polynomial, located by Newton iteration to residual
/// below 1e-15. Throws std::invalid_argument unless 1 <= n <= 30.
QuadratureRule gauss_legendre(int n);

/// Maps a reference point t in [-1, 1] to the interval [a, b].
inline double map_to_interval(double a, double b, double t) {
  return 0.5 * (a + b) + 0.5 * (b - a) * t;
}

}  // namespace wg
