#pragma once

#include <functional>
#include <optional>
#include <string>

namespace wg {

/// Analytic scalar field on the unit square. Long double signature so the
/// finite-difference validation of manufactured data can out-resolve double
/// rounding; everything else evaluates through double arguments.
using Field = std::function<long double(long double, long double)>;

inline double eval(const Field& f, double x, double y) {
  return static_cast<double>(f(x, y));
}

/// Convection field with its divergence supplied in closed form (the
/// discrete scheme never differentiates numerically).
struct VectorField {
  Field x, y;
  Field div;
};

struct GradField {
  Field dx, dy;
};

/// Data for -eps*Lap(u) - b.grad(u) + c*u = f on (0,1)^2 with u = 0 on the
/// boundary, plus the coefficient bounds the analysis rests on:
/// b1 >= beta1 > 0, b2 >= beta2 > 0, c + div(b)/2 >= gamma > 0.
struct ProblemSpec {
  double eps = 0.0;
  VectorField b;
  Field c, f;
  std::optional<Field> exact_u;
  std::optional<GradField> exact_grad;
  double beta1 = 0.0, beta2 = 0.0, gamma = 0.0;
  int k = 1;
  double sigma = 0.0;  // mesh grading exponent, defaults to k+1 in builders
  std::string name;
};

struct ProblemValidation {
  bool b1_positive = false, b2_positive = false, reaction_positive = false;
  double min_b1 = 0.0, min_b2 = 0.0, min_reaction = 0.0;  // 41x41 grid minima
  bool manufactured_f_checked = false;
  bool manufactured_f_ok = true;
  double max_f_mismatch = 0.0;  // relative to max(1, |f|)
  int f_points = 0;

  bool pass() const {
    return b1_positive && b2_positive && reaction_positive &&
           (!manufactured_f_checked || manufactured_f_ok);
  }
};

/// Grid check of the coefficient assumptions (41x41 sample), and, when an
/// exact solution is attached and eps >= 1e-5, a finite-difference check
/// that f matches the operator applied to u at random points outside the
/// layers (width 10*eps skipped). Below eps = 1e-5 the extended-precision
/// stencil can no longer resolve the layer curvature, so the f check is
/// skipped and reported as such.
ProblemValidation validate_problem(const ProblemSpec& p,
                                   unsigned rng_seed = 20240901u);

/// Operator applied to exact_u by Richardson-extrapolated central
/// differences in long double (validation oracle; not used by the solver).
double finite_difference_f(const ProblemSpec& p, double x, double y);

}  // namespace wg
