#pragma once

#include <cstddef>
#include <vector>

#include "wg/mesh.hpp"

namespace wg {

/// Global numbering of the free unknowns: the (k+1)^2 interior coefficients
/// of every element first (element-major), then k+1 coefficients per
/// non-boundary edge in mesh enumeration order. Boundary-edge coefficients
/// are pinned to zero (homogeneous Dirichlet data) and carry no index.
///
/// A "full" layout that keeps boundary edges is also provided; weak
/// functions are stored in it so traces on the outer boundary stay
/// representable.
struct DofMap {
  int k = 1;
  int n_elements = 0;
  int n_edges = 0;
  std::ptrdiff_t n_interior = 0;   // n_elements * (k+1)^2
  std::ptrdiff_t n_free = 0;       // n_interior + (free edges) * (k+1)
  std::vector<std::ptrdiff_t> edge_block;  // per edge: free block index or -1

  int interior_per_element() const { return (k + 1) * (k + 1); }
  int per_edge() const { return k + 1; }

  std::ptrdiff_t element_start(int e) const {
    return static_cast<std::ptrdiff_t>(e) * interior_per_element();
  }
  /// Start of an edge's block in the free vector; -1 for boundary edges.
  std::ptrdiff_t edge_start(int edge) const {
    const std::ptrdiff_t b = edge_block[edge];
    return b < 0 ? -1 : n_interior + b * per_edge();
  }

  std::ptrdiff_t full_size() const {
    return n_interior + static_cast<std::ptrdiff_t>(n_edges) * per_edge();
  }
  std::ptrdiff_t full_edge_start(int edge) const {
    return n_interior + static_cast<std::ptrdiff_t>(edge) * per_edge();
  }
};

DofMap build_dof_map(const TensorMesh& mesh, int k);

}  // namespace wg
