#pragma once

#include "wg/problem.hpp"

namespace wg {

/// Benchmark 1: variable convection.
///   -eps*Lap(u) - (2+2x-y) du/dx - (3-x+2y) du/dy + u = f,
///   u = 2 sin(pi x) (1 - e^{-2x/eps}) (1-y)^2 (1 - e^{-y/eps}).
/// f is supplied in closed form from the factored derivatives of u.
/// beta1 = 1, beta2 = 2 (minima of the convection components), gamma = 3.
ProblemSpec variable_convection_benchmark(double eps, int k);

/// Benchmark 2: constant convection.
///   -eps*Lap(u) - 2 du/dx - 3 du/dy + u = f,
///   u = 2 sin(1-x) (1 - e^{-2x/eps}) (1-y)^2 (1 - e^{-3y/eps}).
/// beta1 = 2, beta2 = 3, gamma = 1.
ProblemSpec constant_convection_benchmark(double eps, int k);

/// Lookup by CLI id (1 or 2). Throws std::invalid_argument otherwise.
ProblemSpec benchmark_problem(int id, double eps, int k);

/// Polynomial patch problem: u = x(1-x) y(1-y) (in Q_2, zero trace),
/// b = (2, 3), c = 1. The scheme reproduces its interpolant exactly, so
/// the discrete error is solver noise.
ProblemSpec patch_problem(double eps, int k);

}  // namespace wg
