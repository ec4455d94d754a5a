#include "wg/wgops.hpp"

#include <array>
#include <cmath>

#include "wg/quadrature.hpp"

namespace wg {

// Element edge sides in local order.
enum Side { kBottom = 0, kRight = 1, kTop = 2, kLeft = 3 };

SideGeom side_geometry(const Rect& cell, int side) {
  switch (side) {
    case kBottom: return {EdgeAxis::x, 0.0, -1.0, cell.x0, cell.x1, -1.0};
    case kRight: return {EdgeAxis::y, 1.0, 0.0, cell.y0, cell.y1, 1.0};
    case kTop: return {EdgeAxis::x, 0.0, 1.0, cell.x0, cell.x1, 1.0};
    default: return {EdgeAxis::y, -1.0, 0.0, cell.y0, cell.y1, -1.0};
  }
}

// The sign is the Legendre end value in the transverse direction.
double trace_sign(int side, int mx, int my) {
  switch (side) {
    case kBottom: return (my % 2 == 0) ? 1.0 : -1.0;
    case kTop: return 1.0;
    case kLeft: return (mx % 2 == 0) ? 1.0 : -1.0;
    default: return 1.0;
  }
}

int trace_degree(int side, int mx, int my) {
  return (side == kBottom || side == kTop) ? mx : my;
}

namespace {

// J(r, a) = int_{-1}^{1} P_r P_a' dt  (2 when a > r with a+r odd, else 0).
Eigen::MatrixXd legendre_grad_moments(int k) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(k + 1, k + 1);
  for (int a = 0; a <= k; ++a) {
    for (int r = a - 1; r >= 0; r -= 2) j(r, a) = 2.0;
  }
  return j;
}

// Trace-jump map of one side: rows are P_m coefficients of (v0|_e - vb).
Eigen::MatrixXd jump_map(int k, int side) {
  const int n1 = k + 1;
  const int n0 = n1 * n1;
  Eigen::MatrixXd jmp = Eigen::MatrixXd::Zero(n1, local_size(k));
  for (int my = 0; my <= k; ++my) {
    for (int mx = 0; mx <= k; ++mx) {
      jmp(trace_degree(side, mx, my), my * n1 + mx) += trace_sign(side, mx, my);
    }
  }
  for (int m = 0; m <= k; ++m) jmp(m, n0 + side * n1 + m) = -1.0;
  return jmp;
}

}  // namespace

double penalty_weight(const TensorMesh& mesh, int elem, EdgeAxis axis,
                      double eps) {
  const ElementInfo& el = mesh.elements[elem];
  if (el.region == Region::outer) return static_cast<double>(mesh.n());
  return axis == EdgeAxis::x ? eps / el.cell.hy() : eps / el.cell.hx();
}

WeakGradient local_weak_gradient(const TensorMesh& mesh, int elem, int k) {
  const ElementInfo& el = mesh.elements[elem];
  const double hx = el.cell.hx();
  const double hy = el.cell.hy();
  const int n1 = k + 1;
  const int n0 = n1 * n1;
  const int nloc = local_size(k);
  const Eigen::MatrixXd j = legendre_grad_moments(k);

  WeakGradient g;
  g.x = Eigen::MatrixXd::Zero(n0, nloc);
  g.y = Eigen::MatrixXd::Zero(n0, nloc);

  // Interior trials: -(v0, dx q) collapses to 1D Legendre moments.
  for (int c = 0; c <= k; ++c) {
    for (int a = 0; a <= k; ++a) {
      const int p = c * n1 + a;
      for (int r = 0; r <= k; ++r) {
        if (j(r, a) != 0.0) {
          g.x(p, c * n1 + r) = -j(r, a) * (2.0 * a + 1.0) / hx;
        }
        if (j(r, c) != 0.0) {
          g.y(p, r * n1 + a) = -j(r, c) * (2.0 * c + 1.0) / hy;
        }
      }
    }
  }

  // Edge trials: <vb, q.n> with matching tangential degree.
  for (int side = 0; side < 4; ++side) {
    const SideGeom geom = side_geometry(el.cell, side);
    for (int m = 0; m <= k; ++m) {
      const int col = n0 + side * n1 + m;
      for (int t = 0; t <= k; ++t) {  // transverse degree of the test q
        if (geom.axis == EdgeAxis::y) {
          // vertical edge, contributes to the x component
          const int p = m * n1 + t;
          const double end = (geom.trans_ref > 0 || t % 2 == 0) ? 1.0 : -1.0;
          g.x(p, col) += geom.nx * end * (2.0 * t + 1.0) / hx;
        } else {
          const int p = t * n1 + m;
          const double end = (geom.trans_ref > 0 || t % 2 == 0) ? 1.0 : -1.0;
          g.y(p, col) += geom.ny * end * (2.0 * t + 1.0) / hy;
        }
      }
    }
  }
  return g;
}

Eigen::MatrixXd local_weak_convdiv(const TensorMesh& mesh, int elem, int k,
                                   const VectorField& b, int quad_points) {
  const ElementInfo& el = mesh.elements[elem];
  const Rect& cell = el.cell;
  const int n1 = k + 1;
  const int n0 = n1 * n1;
  const int nloc = local_size(k);
  const QuadratureRule rule = gauss_legendre(quad_points);

  Eigen::MatrixXd conv = Eigen::MatrixXd::Zero(n0, nloc);

  std::vector<double> values(n0);
  std::vector<Vec2> grads(n0);

  // Interior trials: -(v0, (div b) phi_p + b . grad phi_p).
  for (int qy = 0; qy < rule.order; ++qy) {
    const double y = map_to_interval(cell.y0, cell.y1, rule.points[qy]);
    for (int qx = 0; qx < rule.order; ++qx) {
      const double x = map_to_interval(cell.x0, cell.x1, rule.points[qx]);
      const double w = rule.weights[qx] * rule.weights[qy] * cell.area() / 4.0;
      eval_element_basis(k, cell, x, y, values, grads);
      const double b1 = eval(b.x, x, y);
      const double b2 = eval(b.y, x, y);
      const double divb = eval(b.div, x, y);
      for (int p = 0; p < n0; ++p) {
        const double test_term =
            divb * values[p] + b1 * grads[p].x + b2 * grads[p].y;
        const double scale = -w * test_term;
        for (int jdof = 0; jdof < n0; ++jdof) {
          conv(p, jdof) += scale * values[jdof];
        }
      }
    }
  }

  // Edge trials: <vb, b.n phi_p>.
  std::vector<double> edge_vals(n1);
  for (int side = 0; side < 4; ++side) {
    const SideGeom geom = side_geometry(el.cell, side);
    for (int q = 0; q < rule.order; ++q) {
      const double s = map_to_interval(geom.a, geom.b, rule.points[q]);
      const double w = rule.weights[q] * (geom.b - geom.a) / 2.0;
      const double x = (geom.axis == EdgeAxis::x)
                           ? s
                           : (geom.nx > 0 ? cell.x1 : cell.x0);
      const double y = (geom.axis == EdgeAxis::x)
                           ? (geom.ny > 0 ? cell.y1 : cell.y0)
                           : s;
      const double bn = eval(b.x, x, y) * geom.nx + eval(b.y, x, y) * geom.ny;
      eval_edge_basis(k, geom.a, geom.b, s, edge_vals);
      for (int my = 0; my <= k; ++my) {
        for (int mx = 0; mx <= k; ++mx) {
          const int p = my * n1 + mx;
          const double trace = trace_sign(side, mx, my) *
                               edge_vals[trace_degree(side, mx, my)];
          const double scale = w * bn * trace;
          for (int m = 0; m <= k; ++m) {
            conv(p, n1 * n1 + side * n1 + m) += scale * edge_vals[m];
          }
        }
      }
    }
  }

  const Eigen::VectorXd mass = local_mass_diag(mesh, elem, k);
  return mass.cwiseInverse().asDiagonal() * conv;
}

Eigen::MatrixXd local_stabilizer_d(const TensorMesh& mesh, int elem, int k,
                                   double eps) {
  const ElementInfo& el = mesh.elements[elem];
  const int nloc = local_size(k);
  Eigen::MatrixXd sd = Eigen::MatrixXd::Zero(nloc, nloc);
  for (int side = 0; side < 4; ++side) {
    const SideGeom geom = side_geometry(el.cell, side);
    const double weight = penalty_weight(mesh, elem, geom.axis, eps);
    const Eigen::MatrixXd jmp = jump_map(k, side);
    Eigen::VectorXd edge_mass(k + 1);
    for (int m = 0; m <= k; ++m) {
      edge_mass(m) = edge_mass_diag(k, geom.a, geom.b, m);
    }
    sd.noalias() += weight * jmp.transpose() * edge_mass.asDiagonal() * jmp;
  }
  return sd;
}

Eigen::MatrixXd local_stabilizer_c(const TensorMesh& mesh, int elem, int k,
                                   const VectorField& b, int quad_points) {
  const ElementInfo& el = mesh.elements[elem];
  const Rect& cell = el.cell;
  const int n1 = k + 1;
  const int nloc = local_size(k);
  const QuadratureRule rule = gauss_legendre(quad_points);

  Eigen::MatrixXd sc = Eigen::MatrixXd::Zero(nloc, nloc);
  std::vector<double> edge_vals(n1);
  Eigen::VectorXd jump(nloc);
  for (int side = 0; side < 4; ++side) {
    const SideGeom geom = side_geometry(cell, side);
    for (int q = 0; q < rule.order; ++q) {
      const double s = map_to_interval(geom.a, geom.b, rule.points[q]);
      const double x = (geom.axis == EdgeAxis::x)
                           ? s
                           : (geom.nx > 0 ? cell.x1 : cell.x0);
      const double y = (geom.axis == EdgeAxis::x)
                           ? (geom.ny > 0 ? cell.y1 : cell.y0)
                           : s;
      const double bn = eval(b.x, x, y) * geom.nx + eval(b.y, x, y) * geom.ny;
      if (bn > 0.0) continue;  // inflow part only
      const double w = rule.weights[q] * (geom.b - geom.a) / 2.0 * (-bn);
      eval_edge_basis(k, geom.a, geom.b, s, edge_vals);
      jump.setZero();
      for (int my = 0; my <= k; ++my) {
        for (int mx = 0; mx <= k; ++mx) {
          jump(my * n1 + mx) = trace_sign(side, mx, my) *
                               edge_vals[trace_degree(side, mx, my)];
        }
      }
      for (int m = 0; m <= k; ++m) {
        jump(n1 * n1 + side * n1 + m) = -edge_vals[m];
      }
      sc.noalias() += w * jump * jump.transpose();
    }
  }
  return sc;
}

Eigen::VectorXd local_mass_diag(const TensorMesh& mesh, int elem, int k) {
  const Rect& cell = mesh.elements[elem].cell;
  const int n0 = (k + 1) * (k + 1);
  Eigen::VectorXd mass(n0);
  for (int p = 0; p < n0; ++p) mass(p) = element_mass_diag(k, cell, p);
  return mass;
}

LocalSystem local_system(const TensorMesh& mesh, int elem,
                         const ProblemSpec& problem, int k, int quad_points) {
  const ElementInfo& el = mesh.elements[elem];
  const Rect& cell = el.cell;
  const int n1 = k + 1;
  const int n0 = n1 * n1;
  const int nloc = local_size(k);

  const WeakGradient grad = local_weak_gradient(mesh, elem, k);
  const Eigen::MatrixXd conv =
      local_weak_convdiv(mesh, elem, k, problem.b, quad_points);
  const Eigen::VectorXd mass = local_mass_diag(mesh, elem, k);

  LocalSystem sys;
  sys.a = problem.eps * (grad.x.transpose() * mass.asDiagonal() * grad.x +
                         grad.y.transpose() * mass.asDiagonal() * grad.y);
  sys.a += local_stabilizer_d(mesh, elem, k, problem.eps);
  sys.a += local_stabilizer_c(mesh, elem, k, problem.b, quad_points);
  sys.a.topRows(n0) -= mass.asDiagonal() * conv;

  // Reaction block and load need quadrature (variable c, general f).
  const QuadratureRule rule = gauss_legendre(quad_points);
  sys.load = Eigen::VectorXd::Zero(nloc);
  std::vector<double> values(n0);
  std::vector<Vec2> grads_unused(n0);
  for (int qy = 0; qy < rule.order; ++qy) {
    const double y = map_to_interval(cell.y0, cell.y1, rule.points[qy]);
    for (int qx = 0; qx < rule.order; ++qx) {
      const double x = map_to_interval(cell.x0, cell.x1, rule.points[qx]);
      const double w = rule.weights[qx] * rule.weights[qy] * cell.area() / 4.0;
      eval_element_basis(k, cell, x, y, values, grads_unused);
      const double c = eval(problem.c, x, y);
      const double f = eval(problem.f, x, y);
      for (int i = 0; i < n0; ++i) {
        sys.load(i) += w * f * values[i];
        const double ci = w * c * values[i];
        for (int jdof = 0; jdof < n0; ++jdof) {
          sys.a(i, jdof) += ci * values[jdof];
        }
      }
    }
  }
  return sys;
}

}  // namespace wg
