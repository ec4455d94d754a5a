#include "wg/dofmap.hpp"

#include <stdexcept>

namespace wg {

DofMap build_dof_map(const TensorMesh& mesh, int k) {
  if (k < 1) throw std::invalid_argument("build_dof_map: k must be >= 1");
  DofMap map;
  map.k = k;
  map.n_elements = mesh.n_elements();
  map.n_edges = mesh.n_edges();
  map.n_interior =
      static_cast<std::ptrdiff_t>(map.n_elements) * map.interior_per_element();
  map.edge_block.assign(map.n_edges, -1);
  std::ptrdiff_t block = 0;
  for (int e = 0; e < map.n_edges; ++e) {
    if (!mesh.edges[e].boundary) map.edge_block[e] = block++;
  }
  map.n_free = map.n_interior + block * map.per_edge();
  return map;
}

}  // namespace wg
