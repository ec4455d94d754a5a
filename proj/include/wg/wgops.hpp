#pragma once

#include <Eigen/Dense>

#include "wg/mesh.hpp"
#include "wg/problem.hpp"

namespace wg {

/// Discretization knobs.
struct NumericsConfig {
  int quad_points = 0;   // Gauss points per direction; 0 -> max(k+2, 6)
  bool condense = true;  // eliminate interior unknowns element by element
  int threads = 0;       // local assembly workers; 0 -> hardware count
};

/// The coefficient data is non-polynomial (boundary-layer exponentials), so
/// the default over-integrates: max(k+2, 6) points per direction.
inline int default_quad_points(int k) { return k + 2 > 6 ? k + 2 : 6; }

inline int resolve_quad_points(const NumericsConfig& cfg, int k) {
  return cfg.quad_points > 0 ? cfg.quad_points : default_quad_points(k);
}

/// Jump penalty for an element/edge-orientation: N on the outer region,
/// eps over the transverse cell width elsewhere.
double penalty_weight(const TensorMesh& mesh, int elem, EdgeAxis axis,
                      double eps);

/// Local unknown order used everywhere: the (k+1)^2 interior coefficients,
/// then k+1 trace coefficients per edge in the order bottom, right, top,
/// left. Matrices returned below follow (row = test, column = trial).
inline int local_size(int k) { return (k + 1) * (k + 1) + 4 * (k + 1); }

/// Geometry of an element side (0 bottom, 1 right, 2 top, 3 left): the
/// axis it runs along, outward normal, tangential interval, and the
/// transverse reference coordinate (-1 or +1).
struct SideGeom {
  EdgeAxis axis;
  double nx, ny;
  double a, b;
  double trans_ref;
};
SideGeom side_geometry(const Rect& cell, int side);

/// The trace of interior basis (mx, my) on a side is
/// trace_sign * P_{trace_degree}(tangential coordinate).
double trace_sign(int side, int mx, int my);
int trace_degree(int side, int mx, int my);

/// Coefficient maps of the discrete weak gradient: applied to a local
/// coefficient vector they give the Q_k coefficients of the two components
/// of grad_w v. Exact (the orthogonal basis turns the defining moment
/// system into divisions).
struct WeakGradient {
  Eigen::MatrixXd x, y;  // (k+1)^2 x local_size(k)
};
WeakGradient local_weak_gradient(const TensorMesh& mesh, int elem, int k);

/// Coefficient map of the discrete weak convection divergence for the
/// field b; div(b phi) is expanded with the analytic divergence.
Eigen::MatrixXd local_weak_convdiv(const TensorMesh& mesh, int elem, int k,
                                   const VectorField& b, int quad_points);

/// Jump stabilizer: sum over the four edges of
/// penalty * <u0 - ub, v0 - vb>. Symmetric positive semidefinite.
Eigen::MatrixXd local_stabilizer_d(const TensorMesh& mesh, int elem, int k,
                                   double eps);

/// Inflow stabilizer: <-b.n (u0 - ub), v0 - vb> restricted pointwise to
/// quadrature nodes where b.n <= 0.
Eigen::MatrixXd local_stabilizer_c(const TensorMesh& mesh, int elem, int k,
                                   const VectorField& b, int quad_points);

/// Element mass diagonal (phi_p, phi_p)_T for the Q_k basis.
Eigen::VectorXd local_mass_diag(const TensorMesh& mesh, int elem, int k);

/// Local bilinear form and load of the scheme:
///   eps (grad_w u, grad_w v) + s_d - (div_w^b u, v0) + (c u0, v0) + s_c,
///   load = (f, v0).
/// The convection term enters with a minus sign and the weak-gradient term
/// carries eps; only this combination is coercive for
/// -eps*Lap(u) - b.grad(u) + c*u.
struct LocalSystem {
  Eigen::MatrixXd a;     // local_size x local_size
  Eigen::VectorXd load;  // local_size, edge entries zero
};
LocalSystem local_system(const TensorMesh& mesh, int elem,
                         const ProblemSpec& problem, int k, int quad_points);

}  // namespace wg
