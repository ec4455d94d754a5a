#include "wg/problem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wg {

namespace {

// Central differences at three step sizes, extrapolated twice: O(h^6).
long double richardson3(long double d_h, long double d_h2, long double d_h4,
                        long double factor) {
  const long double r1 = (factor * d_h2 - d_h) / (factor - 1.0L);
  const long double r2 = (factor * d_h4 - d_h2) / (factor - 1.0L);
  const long double factor2 = factor * factor;
  return (factor2 * r2 - r1) / (factor2 - 1.0L);
}

struct Derivs {
  long double dx, dy, dxx, dyy;
};

Derivs fd_derivatives(const Field& u, long double x, long double y,
                      long double h) {
  const auto d1 = [&](long double step, bool in_x) {
    const long double up = in_x ? u(x + step, y) : u(x, y + step);
    const long double dn = in_x ? u(x - step, y) : u(x, y - step);
    return (up - dn) / (2.0L * step);
  };
  const long double u0 = u(x, y);
  const auto d2 = [&](long double step, bool in_x) {
    const long double up = in_x ? u(x + step, y) : u(x, y + step);
    const long double dn = in_x ? u(x - step, y) : u(x, y - step);
    return (up - 2.0L * u0 + dn) / (step * step);
  };
  Derivs d;
  d.dx = richardson3(d1(h, true), d1(h / 2, true), d1(h / 4, true), 4.0L);
  d.dy = richardson3(d1(h, false), d1(h / 2, false), d1(h / 4, false), 4.0L);
  d.dxx = richardson3(d2(h, true), d2(h / 2, true), d2(h / 4, true), 4.0L);
  d.dyy = richardson3(d2(h, false), d2(h / 2, false), d2(h / 4, false), 4.0L);
  return d;
}

long double fd_operator(const ProblemSpec& p, long double x, long double y,
                        long double h) {
  const Derivs d = fd_derivatives(*p.exact_u, x, y, h);
  const long double bx = p.b.x(x, y);
  const long double by = p.b.y(x, y);
  const long double c = p.c(x, y);
  const long double u0 = (*p.exact_u)(x, y);
  return -static_cast<long double>(p.eps) * (d.dxx + d.dyy) - bx * d.dx -
         by * d.dy + c * u0;
}

long double fd_step(double eps) {
  return std::clamp(static_cast<long double>(eps) / 60.0L, 1e-7L, 3e-4L);
}

}  // namespace

double finite_difference_f(const ProblemSpec& p, double x, double y) {
  if (!p.exact_u) {
    throw std::invalid_argument("finite_difference_f: no exact solution");
  }
  return static_cast<double>(fd_operator(p, x, y, fd_step(p.eps)));
}

ProblemValidation validate_problem(const ProblemSpec& p, unsigned rng_seed) {
  ProblemValidation v;

  constexpr int grid = 41;
  double min_b1 = std::numeric_limits<double>::infinity();
  double min_b2 = min_b1, min_reaction = min_b1;
  for (int j = 0; j < grid; ++j) {
    for (int i = 0; i < grid; ++i) {
      const double x = static_cast<double>(i) / (grid - 1);
      const double y = static_cast<double>(j) / (grid - 1);
      min_b1 = std::min(min_b1, eval(p.b.x, x, y));
      min_b2 = std::min(min_b2, eval(p.b.y, x, y));
      min_reaction = std::min(
          min_reaction, eval(p.c, x, y) + 0.5 * eval(p.b.div, x, y));
    }
  }
  v.min_b1 = min_b1;
  v.min_b2 = min_b2;
  v.min_reaction = min_reaction;
  v.b1_positive = min_b1 > 0.0;
  v.b2_positive = min_b2 > 0.0;
  v.reaction_positive = min_reaction > 0.0;

  if (p.exact_u && p.eps >= 1e-5) {
    v.manufactured_f_checked = true;
    std::mt19937_64 rng(rng_seed);
    const double margin = 10.0 * p.eps;
    std::uniform_real_distribution<double> coord(margin, 0.995);
    const long double h = fd_step(p.eps);
    for (int trial = 0; trial < 100; ++trial) {
      const double x = coord(rng);
      const double y = coord(rng);
      const long double fd = fd_operator(p, x, y, h);
      const long double fc = p.f(x, y);
      const double mismatch = static_cast<double>(
          std::abs(fd - fc) / std::max(1.0L, std::abs(fc)));
      v.max_f_mismatch = std::max(v.max_f_mismatch, mismatch);
      ++v.f_points;
    }
    v.manufactured_f_ok = v.max_f_mismatch <= 1e-8;
  }
  return v;
}

}  // namespace wg
