#include "wg/weakfunction.hpp"

#include <stdexcept>

namespace wg {

WeakFunction zero_weak_function(const TensorMesh& mesh, int k) {
  WeakFunction v;
  v.k = k;
  v.interior = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(mesh.n_elements()) * (k + 1) * (k + 1));
  v.edge = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(mesh.n_edges()) * (k + 1));
  return v;
}

Eigen::VectorXd gather_local(const WeakFunction& v, const TensorMesh& mesh,
                             int elem) {
  const int n0 = v.interior_per_element();
  const int ne = v.per_edge();
  Eigen::VectorXd local(n0 + 4 * ne);
  local.head(n0) = v.interior.segment(static_cast<Eigen::Index>(elem) * n0, n0);
  const ElementInfo& el = mesh.elements[elem];
  for (int side = 0; side < 4; ++side) {
    local.segment(n0 + side * ne, ne) =
        v.edge.segment(static_cast<Eigen::Index>(el.edge[side]) * ne, ne);
  }
  return local;
}

WeakFunction from_free_vector(const Eigen::VectorXd& free, const DofMap& dofs,
                              const TensorMesh& mesh) {
  if (free.size() != dofs.n_free) {
    throw std::invalid_argument("from_free_vector: size mismatch");
  }
  WeakFunction v = zero_weak_function(mesh, dofs.k);
  v.interior = free.head(dofs.n_interior);
  const int ne = dofs.per_edge();
  for (int e = 0; e < dofs.n_edges; ++e) {
    const std::ptrdiff_t start = dofs.edge_start(e);
    if (start >= 0) {
      v.edge.segment(static_cast<Eigen::Index>(e) * ne, ne) =
          free.segment(start, ne);
    }
  }
  return v;
}

Eigen::VectorXd to_free_vector(const WeakFunction& v, const DofMap& dofs,
                               const TensorMesh& mesh) {
  (void)mesh;
  Eigen::VectorXd free = Eigen::VectorXd::Zero(dofs.n_free);
  free.head(dofs.n_interior) = v.interior;
  const int ne = dofs.per_edge();
  for (int e = 0; e < dofs.n_edges; ++e) {
    const std::ptrdiff_t start = dofs.edge_start(e);
    if (start >= 0) {
      free.segment(start, ne) =
          v.edge.segment(static_cast<Eigen::Index>(e) * ne, ne);
    }
  }
  return free;
}

WeakFunction weak_difference(const WeakFunction& a, const WeakFunction& b) {
  WeakFunction d = a;
  d.interior -= b.interior;
  d.edge -= b.edge;
  return d;
}

}  // namespace wg
