#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "wg/dofmap.hpp"
#include "wg/problem.hpp"
#include "wg/wgops.hpp"

namespace wg {

struct CsrMatrix {
  std::ptrdiff_t rows = 0, cols = 0;
  std::vector<std::ptrdiff_t> row_offsets;  // rows + 1 entries
  std::vector<std::ptrdiff_t> col_indices;
  std::vector<double> values;

  std::ptrdiff_t nnz() const {
    return static_cast<std::ptrdiff_t>(values.size());
  }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

struct SparseSystem {
  CsrMatrix matrix;
  Eigen::VectorXd rhs;
  DofMap dofs;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Assembles the global scheme over the free unknowns. Element loops are
/// evaluated concurrently but merged in fixed element order, so the CSR
/// arrays are bit-identical for a given configuration regardless of the
/// worker count. Warns to stderr when sigma < k+1 (outside the regime the
/// convergence bound assumes) but proceeds.
SparseSystem assemble(const TensorMesh& mesh, const ProblemSpec& problem,
                      int k, const NumericsConfig& config = {});

/// Element-by-element elimination of the interior unknowns (their global
/// block is block-diagonal). The condensed system couples edge unknowns
/// only; recover() reproduces the interior values exactly.
struct CondensedSystem {
  SparseSystem edge_system;           // unknowns: free edge dofs, in order
  std::ptrdiff_t n_interior = 0;
  std::vector<Eigen::MatrixXd> couple;   // per element: A00^-1 A0b
  std::vector<Eigen::VectorXd> shift;    // per element: A00^-1 rhs0
  std::vector<std::vector<std::ptrdiff_t>> edge_cols;  // per element: free
                                                       // edge dofs (parent
                                                       // numbering)

  /// Expands an edge-only solution to the full free vector of the parent.
  Eigen::VectorXd recover(const Eigen::VectorXd& edge_solution) const;
};

/// Throws NumericalError if some interior block is singular (impossible for
/// validated data; indicates an assembly defect).
CondensedSystem condense(const SparseSystem& system);

struct SolveReport {
  double rel_residual = 0.0;
  double factor_seconds = 0.0;
  double solve_seconds = 0.0;
  std::ptrdiff_t dimension = 0;
  bool condensed = false;
};

struct SolveResult {
  Eigen::VectorXd solution;
  SolveReport report;
};

/// Sparse LU with a fill-reducing ordering; rows and columns are
/// equilibrated by max magnitude before factorization and unscaled after.
/// Deterministic for fixed input. Throws NumericalError on a singular
/// factorization (message carries the pivot location) or when the relative
/// residual exceeds 1e-8.
SolveResult solve(const SparseSystem& system);

/// assemble [+ condense] + solve + recover.
SolveResult solve_scheme(const TensorMesh& mesh, const ProblemSpec& problem,
                         int k, const NumericsConfig& config = {});

/// Matrix Market coordinate format, 1-based indices, "%.17g" values.
void write_matrix_market(const CsrMatrix& m, std::ostream& os);

}  // namespace wg
