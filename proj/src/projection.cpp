#include "wg/projection.hpp"

#include <vector>

#include "wg/quadrature.hpp"

namespace wg {

WeakFunction project(const Field& u, const TensorMesh& mesh, int k,
                     int quad_points) {
  const QuadratureRule rule = gauss_legendre(quad_points);
  const int n1 = k + 1;
  const int n0 = n1 * n1;
  WeakFunction out = zero_weak_function(mesh, k);

  std::vector<double> values(n0);
  std::vector<Vec2> grads(n0);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Rect& cell = mesh.elements[e].cell;
    Eigen::VectorXd moments = Eigen::VectorXd::Zero(n0);
    for (int qy = 0; qy < rule.order; ++qy) {
      const double y = map_to_interval(cell.y0, cell.y1, rule.points[qy]);
      for (int qx = 0; qx < rule.order; ++qx) {
        const double x = map_to_interval(cell.x0, cell.x1, rule.points[qx]);
        const double w =
            rule.weights[qx] * rule.weights[qy] * cell.area() / 4.0;
        eval_element_basis(k, cell, x, y, values, grads);
        const double uval = eval(u, x, y);
        for (int p = 0; p < n0; ++p) moments(p) += w * uval * values[p];
      }
    }
    for (int p = 0; p < n0; ++p) {
      out.interior(static_cast<Eigen::Index>(e) * n0 + p) =
          moments(p) / element_mass_diag(k, cell, p);
    }
  }

  std::vector<double> edge_vals(n1);
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const Edge& edge = mesh.edges[e];
    Eigen::VectorXd moments = Eigen::VectorXd::Zero(n1);
    for (int q = 0; q < rule.order; ++q) {
      const double s = map_to_interval(edge.lo, edge.hi, rule.points[q]);
      const double w = rule.weights[q] * (edge.hi - edge.lo) / 2.0;
      const double x = edge.axis == EdgeAxis::x ? s : edge.fixed;
      const double y = edge.axis == EdgeAxis::x ? edge.fixed : s;
      const double uval = eval(u, x, y);
      eval_edge_basis(k, edge.lo, edge.hi, s, edge_vals);
      for (int m = 0; m <= k; ++m) moments(m) += w * uval * edge_vals[m];
    }
    for (int m = 0; m <= k; ++m) {
      out.edge(static_cast<Eigen::Index>(e) * n1 + m) =
          moments(m) / edge_mass_diag(k, edge.lo, edge.hi, m);
    }
  }
  return out;
}

ProjectedGradient project_gradient(const GradField& grad,
                                   const TensorMesh& mesh, int k,
                                   int quad_points) {
  const QuadratureRule rule = gauss_legendre(quad_points);
  const int n0 = (k + 1) * (k + 1);
  ProjectedGradient out;
  out.k = k;
  out.x = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(mesh.n_elements()) * n0);
  out.y = Eigen::VectorXd::Zero(out.x.size());

  std::vector<double> values(n0);
  std::vector<Vec2> grads(n0);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Rect& cell = mesh.elements[e].cell;
    Eigen::VectorXd mx = Eigen::VectorXd::Zero(n0);
    Eigen::VectorXd my = Eigen::VectorXd::Zero(n0);
    for (int qy = 0; qy < rule.order; ++qy) {
      const double y = map_to_interval(cell.y0, cell.y1, rule.points[qy]);
      for (int qx = 0; qx < rule.order; ++qx) {
        const double x = map_to_interval(cell.x0, cell.x1, rule.points[qx]);
        const double w =
            rule.weights[qx] * rule.weights[qy] * cell.area() / 4.0;
        eval_element_basis(k, cell, x, y, values, grads);
        const double gx = eval(grad.dx, x, y);
        const double gy = eval(grad.dy, x, y);
        for (int p = 0; p < n0; ++p) {
          mx(p) += w * gx * values[p];
          my(p) += w * gy * values[p];
        }
      }
    }
    for (int p = 0; p < n0; ++p) {
      const double mass = element_mass_diag(k, cell, p);
      out.x(static_cast<Eigen::Index>(e) * n0 + p) = mx(p) / mass;
      out.y(static_cast<Eigen::Index>(e) * n0 + p) = my(p) / mass;
    }
  }
  return out;
}

double eval_interior(const WeakFunction& v, const TensorMesh& mesh, int elem,
                     double x, double y) {
  const int n0 = v.interior_per_element();
  std::vector<double> values(n0);
  std::vector<Vec2> grads(n0);
  eval_element_basis(v.k, mesh.elements[elem].cell, x, y, values, grads);
  double sum = 0.0;
  for (int p = 0; p < n0; ++p) {
    sum += v.interior(static_cast<Eigen::Index>(elem) * n0 + p) * values[p];
  }
  return sum;
}

}  // namespace wg
