#pragma once

#include <Eigen/Dense>

#include "wg/dofmap.hpp"
#include "wg/mesh.hpp"

namespace wg {

/// Discrete weak function {v0, vb}: per-element interior coefficients in the
/// tensor Legendre basis of Q_k, plus single-valued per-edge coefficients in
/// the Legendre basis of P_k on every edge (boundary edges included, so
/// inhomogeneous traces remain representable).
struct WeakFunction {
  int k = 1;
  Eigen::VectorXd interior;  // n_elements * (k+1)^2
  Eigen::VectorXd edge;      // n_edges * (k+1)

  int interior_per_element() const { return (k + 1) * (k + 1); }
  int per_edge() const { return k + 1; }
};

WeakFunction zero_weak_function(const TensorMesh& mesh, int k);

/// Local coefficient vector of an element in the order used by the local
/// operators: interior block, then edge blocks bottom, right, top, left.
Eigen::VectorXd gather_local(const WeakFunction& v, const TensorMesh& mesh,
                             int elem);

/// Free-vector layout (boundary edge coefficients dropped) <-> WeakFunction.
WeakFunction from_free_vector(const Eigen::VectorXd& free, const DofMap& dofs,
                              const TensorMesh& mesh);
Eigen::VectorXd to_free_vector(const WeakFunction& v, const DofMap& dofs,
                               const TensorMesh& mesh);

WeakFunction weak_difference(const WeakFunction& a, const WeakFunction& b);

}  // namespace wg
