#include "wg/benchmarks.hpp"

#include <cmath>
#include <stdexcept>

namespace wg {

namespace {

// a * e^{-t}. The early-out keeps t values far past the representable
// range from producing NaNs in downstream arithmetic; the prefactors are
// at most ~1/eps^2, so nothing representable is lost.
inline long double scaled_decay(long double a, long double t) {
  return t > 11300.0L ? 0.0L : a * std::exp(-t);
}

constexpr long double kPi = 3.14159265358979323846264338327950288L;

// One boundary-layer factor family: value, first and second derivative of
// s(z) * (1 - e^{-rate z / eps}) for a smooth factor s supplied by the
// caller as (s, s', s'').
struct Smooth {
  long double v, d, dd;
};

struct LayerFactor {
  long double rate_over_eps;

  long double value(const Smooth& s, long double z) const {
    return s.v - scaled_decay(s.v, rate_over_eps * z);
  }
  long double deriv(const Smooth& s, long double z) const {
    const long double t = rate_over_eps * z;
    return s.d - scaled_decay(s.d - rate_over_eps * s.v, t);
  }
  long double deriv2(const Smooth& s, long double z) const {
    const long double t = rate_over_eps * z;
    const long double r = rate_over_eps;
    return s.dd - scaled_decay(s.dd - 2.0L * r * s.d + r * r * s.v, t);
  }
};

}  // namespace

ProblemSpec variable_convection_benchmark(double eps, int k) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("variable_convection_benchmark: bad eps");
  }
  const long double le = eps;

  ProblemSpec p;
  p.name = "variable-convection";
  p.eps = eps;
  p.k = k;
  p.sigma = k + 1;
  p.b.x = [](long double x, long double y) { return 2.0L + 2.0L * x - y; };
  p.b.y = [](long double x, long double y) { return 3.0L - x + 2.0L * y; };
  p.b.div = [](long double, long double) { return 4.0L; };
  p.c = [](long double, long double) { return 1.0L; };
  p.beta1 = 1.0;  // min of 2 + 2x - y on the square
  p.beta2 = 2.0;  // min of 3 - x + 2y
  p.gamma = 3.0;  // c + div(b)/2

  const LayerFactor fx{2.0L / le};
  const LayerFactor fy{1.0L / le};
  const auto sx = [](long double x) {
    return Smooth{2.0L * std::sin(kPi * x), 2.0L * kPi * std::cos(kPi * x),
                  -2.0L * kPi * kPi * std::sin(kPi * x)};
  };
  const auto sy = [](long double y) {
    const long double w = 1.0L - y;
    return Smooth{w * w, -2.0L * w, 2.0L};
  };

  p.exact_u = [=](long double x, long double y) {
    return fx.value(sx(x), x) * fy.value(sy(y), y);
  };
  p.exact_grad = GradField{
      [=](long double x, long double y) {
        return fx.deriv(sx(x), x) * fy.value(sy(y), y);
      },
      [=](long double x, long double y) {
        return fx.value(sx(x), x) * fy.deriv(sy(y), y);
      }};
  p.f = [=, bx = p.b.x, by = p.b.y](long double x, long double y) {
    const Smooth gx = sx(x), gy = sy(y);
    const long double xv = fx.value(gx, x), yv = fy.value(gy, y);
    const long double xd = fx.deriv(gx, x), yd = fy.deriv(gy, y);
    const long double xdd = fx.deriv2(gx, x), ydd = fy.deriv2(gy, y);
    return -le * (xdd * yv + xv * ydd) - bx(x, y) * xd * yv -
           by(x, y) * xv * yd + xv * yv;
  };
  return p;
}

ProblemSpec constant_convection_benchmark(double eps, int k) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("constant_convection_benchmark: bad eps");
  }
  const long double le = eps;

  ProblemSpec p;
  p.name = "constant-convection";
  p.eps = eps;
  p.k = k;
  p.sigma = k + 1;
  p.b.x = [](long double, long double) { return 2.0L; };
  p.b.y = [](long double, long double) { return 3.0L; };
  p.b.div = [](long double, long double) { return 0.0L; };
  p.c = [](long double, long double) { return 1.0L; };
  p.beta1 = 2.0;
  p.beta2 = 3.0;
  p.gamma = 1.0;

  const LayerFactor fx{2.0L / le};
  const LayerFactor fy{3.0L / le};
  const auto sx = [](long double x) {
    return Smooth{2.0L * std::sin(1.0L - x), -2.0L * std::cos(1.0L - x),
                  -2.0L * std::sin(1.0L - x)};
  };
  const auto sy = [](long double y) {
    const long double w = 1.0L - y;
    return Smooth{w * w, -2.0L * w, 2.0L};
  };

  p.exact_u = [=](long double x, long double y) {
    return fx.value(sx(x), x) * fy.value(sy(y), y);
  };
  p.exact_grad = GradField{
      [=](long double x, long double y) {
        return fx.deriv(sx(x), x) * fy.value(sy(y), y);
      },
      [=](long double x, long double y) {
        return fx.value(sx(x), x) * fy.deriv(sy(y), y);
      }};
  p.f = [=](long double x, long double y) {
    const Smooth gx = sx(x), gy = sy(y);
    const long double xv = fx.value(gx, x), yv = fy.value(gy, y);
    const long double xd = fx.deriv(gx, x), yd = fy.deriv(gy, y);
    const long double xdd = fx.deriv2(gx, x), ydd = fy.deriv2(gy, y);
    return -le * (xdd * yv + xv * ydd) - 2.0L * xd * yv - 3.0L * xv * yd +
           xv * yv;
  };
  return p;
}

ProblemSpec benchmark_problem(int id, double eps, int k) {
  if (id == 1) return variable_convection_benchmark(eps, k);
  if (id == 2) return constant_convection_benchmark(eps, k);
  throw std::invalid_argument("benchmark_problem: id must be 1 or 2");
}

ProblemSpec patch_problem(double eps, int k) {
  ProblemSpec p;
  p.name = "polynomial-patch";
  p.eps = eps;
  p.k = k;
  p.sigma = k + 1;
  p.b.x = [](long double, long double) { return 2.0L; };
  p.b.y = [](long double, long double) { return 3.0L; };
  p.b.div = [](long double, long double) { return 0.0L; };
  p.c = [](long double, long double) { return 1.0L; };
  p.beta1 = 2.0;
  p.beta2 = 3.0;
  p.gamma = 1.0;
  p.exact_u = [](long double x, long double y) {
    return x * (1.0L - x) * y * (1.0L - y);
  };
  p.exact_grad = GradField{
      [](long double x, long double y) {
        return (1.0L - 2.0L * x) * y * (1.0L - y);
      },
      [](long double x, long double y) {
        return x * (1.0L - x) * (1.0L - 2.0L * y);
      }};
  p.f = [eps](long double x, long double y) {
    const long double g = x * (1.0L - x), h = y * (1.0L - y);
    const long double dg = 1.0L - 2.0L * x, dh = 1.0L - 2.0L * y;
    return -static_cast<long double>(eps) * (-2.0L * h - 2.0L * g) -
           2.0L * dg * h - 3.0L * g * dh + g * h;
  };
  return p;
}

}  // namespace wg
