#pragma once

#include <span>

namespace wg {

struct Vec2 {
  double x = 0.0, y = 0.0;
};

/// Axis-aligned rectangle [x0, x1] x [y0, y1].
struct Rect {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  double hx() const { return x1 - x0; }
  double hy() const { return y1 - y0; }
  double tx(double x) const { return (2.0 * x - x0 - x1) / (x1 - x0); }
  double ty(double y) const { return (2.0 * y - y0 - y1) / (y1 - y0); }
  double area() const { return hx() * hy(); }
};

/// Legendre polynomials P_0..P_k at t (unnormalized, P_m(1) = 1).
void legendre_values(int k, double t, std::span<double> values);

/// Values and first derivatives (with respect to t) of P_0..P_k at t.
void legendre_values_derivs(int k, double t, std::span<double> values,
                            std::span<double> derivs);

/// Tensor-product basis of Q_k on a rectangle: the function with index
/// p = iy*(k+1) + ix  is  P_ix(tx(x)) * P_iy(ty(y)).
/// Index 0 is the constant 1. The basis is L2-orthogonal on the cell.
inline int element_basis_size(int k) { return (k + 1) * (k + 1); }

/// Basis values and physical-space gradients at (x, y). `values` and
/// `gradients` must have element_basis_size(k) entries.
void eval_element_basis(int k, const Rect& cell, double x, double y,
                        std::span<double> values, std::span<Vec2> gradients);

/// Diagonal of the element mass matrix: (phi_p, phi_p)_cell.
double element_mass_diag(int k, const Rect& cell, int p);

/// P_k basis on an interval [a, b]: index m gives P_m of the mapped
/// coordinate. `values` must have k+1 entries.
void eval_edge_basis(int k, double a, double b, double s,
                     std::span<double> values);

/// Diagonal of the edge mass matrix: (e_m, e_m)_[a,b] = (b-a)/(2m+1).
double edge_mass_diag(int k, double a, double b, int m);

}  // namespace wg
