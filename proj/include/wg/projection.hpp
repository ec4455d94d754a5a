#pragma once

#include <Eigen/Dense>

#include "wg/mesh.hpp"
#include "wg/problem.hpp"
#include "wg/weakfunction.hpp"

namespace wg {

/// Elementwise + edgewise L2 projection of a scalar field into the weak
/// function space (quadrature inner products, diagonal mass systems).
WeakFunction project(const Field& u, const TensorMesh& mesh, int k,
                     int quad_points);

/// Componentwise element L2 projection of a gradient field into [Q_k]^2.
struct ProjectedGradient {
  int k = 1;
  Eigen::VectorXd x, y;  // n_elements * (k+1)^2 each
};
ProjectedGradient project_gradient(const GradField& grad,
                                   const TensorMesh& mesh, int k,
                                   int quad_points);

/// Element-interior value of a weak function at (x, y).
double eval_interior(const WeakFunction& v, const TensorMesh& mesh, int elem,
                     double x, double y);

}  // namespace wg
