#include "wg/basis.hpp"

#include <cassert>

namespace wg {

void legendre_values(int k, double t, std::span<double> values) {
  assert(static_cast<int>(values.size()) >= k + 1);
  values[0] = 1.0;
  if (k == 0) return;
  values[1] = t;
  for (int m = 2; m <= k; ++m) {
    values[m] = ((2.0 * m - 1.0) * t * values[m - 1] -
                 (m - 1.0) * values[m - 2]) / m;
  }
}

void legendre_values_derivs(int k, double t, std::span<double> values,
                            std::span<double> derivs) {
  legendre_values(k, t, values);
  derivs[0] = 0.0;
  if (k == 0) return;
  derivs[1] = 1.0;
  // P'_m = (2m-1) P_{m-1} + P'_{m-2}
  for (int m = 2; m <= k; ++m) {
    derivs[m] = (2.0 * m - 1.0) * values[m - 1] + derivs[m - 2];
  }
}

void eval_element_basis(int k, const Rect& cell, double x, double y,
                        std::span<double> values, std::span<Vec2> gradients) {
  const int n = k + 1;
  double px[16], dpx[16], py[16], dpy[16];
  assert(n <= 16);
  legendre_values_derivs(k, cell.tx(x), {px, px + n}, {dpx, dpx + n});
  legendre_values_derivs(k, cell.ty(y), {py, py + n}, {dpy, dpy + n});
  const double sx = 2.0 / cell.hx();
  const double sy = 2.0 / cell.hy();
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const int p = iy * n + ix;
      values[p] = px[ix] * py[iy];
      gradients[p] = {dpx[ix] * sx * py[iy], px[ix] * dpy[iy] * sy};
    }
  }
}

double element_mass_diag(int k, const Rect& cell, int p) {
  const int n = k + 1;
  const int ix = p % n;
  const int iy = p / n;
  return cell.hx() / (2.0 * ix + 1.0) * cell.hy() / (2.0 * iy + 1.0);
}

void eval_edge_basis(int k, double a, double b, double s,
                     std::span<double> values) {
  const double t = (2.0 * s - a - b) / (b - a);
  legendre_values(k, t, values);
}

double edge_mass_diag(int k, double a, double b, int m) {
  (void)k;
  return (b - a) / (2.0 * m + 1.0);
}

}  // namespace wg
