#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "wg/basis.hpp"

namespace wg {

/// Graded 1D node set on [0, 1] for one coordinate direction. The first
/// N/2 cells are exponentially graded to resolve a boundary layer of
/// width O(eps) at 0; the remaining cells are uniform.
struct Mesh1D {
  int n = 0;          // cell count N, even, >= 4
  double eps = 0.0;   // perturbation parameter
  double sigma = 0.0; // grading exponent
  double beta = 0.0;  // layer decay constant for this direction
  std::vector<double> nodes;  // n+1 entries, 0 = nodes[0] < ... < nodes[n] = 1

  /// Cell width h_i = nodes[i] - nodes[i-1], 1-based as in the grading bounds.
  double width(int i) const { return nodes[i] - nodes[i - 1]; }
};

/// Layer-graded node distribution:
///   nodes[i] = -(sigma*eps/beta) * ln(1 - 2(1-eps) i/N)   for i <= N/2,
///   nodes[i] = 1 - (1 - nodes[N/2]) * 2(N-i)/N            for i >  N/2.
/// Requires N even and >= 4, 0 < eps <= 1/N, sigma > 0, beta > 0; violations
/// throw std::invalid_argument (eps > 1/N breaks the grading bounds, so it
/// is rejected rather than warned about).
Mesh1D bakhvalov_nodes(int n, double eps, double sigma, double beta);

/// Cell classification by which directions are in the graded band.
/// corner: both fine; xfine: x fine only; yfine: y fine only; outer: neither.
enum class Region : std::uint8_t { outer, xfine, yfine, corner };

const char* region_name(Region r);

enum class EdgeAxis : std::uint8_t { x, y };  // direction the edge runs along

struct Edge {
  EdgeAxis axis = EdgeAxis::x;
  double lo = 0.0, hi = 0.0;  // tangential interval
  double fixed = 0.0;         // constant coordinate
  int elem_neg = -1;          // element below (axis x) / left of (axis y)
  int elem_pos = -1;          // element above / right
  bool boundary = false;
};

struct ElementInfo {
  int ix = 0, iy = 0;
  Rect cell;
  Region region = Region::outer;
  std::array<int, 4> edge{};  // bottom, right, top, left
};

/// Tensor product of two Mesh1D with matching N. Elements are numbered
/// row-major with iy outer (ix fastest); edges list all x-parallel edges
/// first (j*N + i, row by row), then all y-parallel ones.
struct TensorMesh {
  Mesh1D x, y;
  std::vector<ElementInfo> elements;
  std::vector<Edge> edges;

  int n() const { return x.n; }
  int n_elements() const { return static_cast<int>(elements.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
  int n_interior_edges() const { return 2 * n() * (n() - 1); }
  int n_boundary_edges() const { return 4 * n(); }
  int element_index(int ix, int iy) const { return iy * n() + ix; }
};

/// Throws std::invalid_argument when the two directions disagree on N.
TensorMesh build_tensor_mesh(const Mesh1D& mx, const Mesh1D& my);

/// Convenience: graded mesh in both directions (beta1 for x, beta2 for y).
TensorMesh make_layer_mesh(int n, double eps, double sigma, double beta1,
                           double beta2);

/// Pass/fail audit of the explicit-constant grading bounds, plus measured
/// ratios for the bounds whose constants are not pinned down.
struct MeshAudit {
  bool fine_widths_monotone = false;     // h_1 <= ... <= h_{N/2-1}
  bool last_fine_width_bounded = false;  // sigma*eps/4 <= h_{N/2-1} <= sigma*eps
  bool transition_width_bounded = false; // sigma*eps/2 <= h_{N/2} <= 2*sigma/N
  bool coarse_widths_bounded = false;    // 1/N <= h_i <= 2/N for i >= N/2+1
  bool all_widths_positive = false;

  // Measured ratios only (no pass/fail):
  double first_width_vs_eps_over_n = 0.0;       // h_1 / (eps/N)
  double transition_vs_sigma_eps_log_n = 0.0;   // x_{N/2} / (sigma*eps*ln N)
  double transition_vs_sigma_eps_log_eps = 0.0; // x_{N/2} / (sigma*eps*|ln eps|)
  // max over fine cells of h_i^rho e^{-beta*x_{i-1}/eps} / (eps^rho N^-rho),
  // for rho = 0, 1, ..., floor(sigma)
  std::vector<double> graded_decay_ratio;

  bool pass() const {
    return fine_widths_monotone && last_fine_width_bounded &&
           transition_width_bounded && coarse_widths_bounded &&
           all_widths_positive;
  }
};

MeshAudit audit_mesh(const Mesh1D& m);

void print_audit(const MeshAudit& audit, std::ostream& os);

/// One node per line, "%.17g", LF endings (for cross-implementation diffs).
void write_nodes(const Mesh1D& m, std::ostream& os);

}  // namespace wg
