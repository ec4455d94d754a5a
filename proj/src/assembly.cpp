#include "wg/assembly.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>

namespace wg {

namespace {

struct Triplet {
  std::ptrdiff_t row, col;
  double value;
};

void parallel_over_elements(int n_elements, int threads,
                            const std::function<void(int)>& work) {
  int workers = threads > 0
                    ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers == 1 || n_elements < 64) {
    for (int e = 0; e < n_elements; ++e) work(e);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&]() {
      for (int e = next.fetch_add(1); e < n_elements; e = next.fetch_add(1)) {
        work(e);
      }
    });
  }
  for (auto& th : pool) th.join();
}

CsrMatrix compress_triplets(std::vector<Triplet>& trips, std::ptrdiff_t rows,
                            std::ptrdiff_t cols) {
  // Stable sort keeps the per-cell accumulation order fixed, so repeated
  // assemblies produce bit-identical values.
  std::stable_sort(trips.begin(), trips.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return a.row != b.row ? a.row < b.row : a.col < b.col;
                   });
  CsrMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_offsets.assign(rows + 1, 0);
  for (std::size_t i = 0; i < trips.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < trips.size() && trips[j].row == trips[i].row &&
           trips[j].col == trips[i].col) {
      sum += trips[j].value;
      ++j;
    }
    m.col_indices.push_back(trips[i].col);
    m.values.push_back(sum);
    ++m.row_offsets[trips[i].row + 1];
    i = j;
  }
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    m.row_offsets[r + 1] += m.row_offsets[r];
  }
  return m;
}

// Global free index of each local unknown of an element; -1 on boundary
// edges (those coefficients are pinned to zero).
std::vector<std::ptrdiff_t> local_to_global(const TensorMesh& mesh,
                                            const DofMap& dofs, int elem) {
  const int n0 = dofs.interior_per_element();
  const int ne = dofs.per_edge();
  std::vector<std::ptrdiff_t> idx(n0 + 4 * ne, -1);
  const std::ptrdiff_t e0 = dofs.element_start(elem);
  for (int i = 0; i < n0; ++i) idx[i] = e0 + i;
  const ElementInfo& el = mesh.elements[elem];
  for (int side = 0; side < 4; ++side) {
    const std::ptrdiff_t start = dofs.edge_start(el.edge[side]);
    if (start < 0) continue;
    for (int m = 0; m < ne; ++m) idx[n0 + side * ne + m] = start + m;
  }
  return idx;
}

}  // namespace

Eigen::VectorXd CsrMatrix::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rows);
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::ptrdiff_t p = row_offsets[r]; p < row_offsets[r + 1]; ++p) {
      sum += values[p] * x(col_indices[p]);
    }
    y(r) = sum;
  }
  return y;
}

SparseSystem assemble(const TensorMesh& mesh, const ProblemSpec& problem,
                      int k, const NumericsConfig& config) {
  if (mesh.x.eps != problem.eps) {
    throw std::invalid_argument(
        "assemble: mesh was graded for a different eps than the problem's");
  }
  if (mesh.x.sigma < k + 1 || mesh.y.sigma < k + 1) {
    std::fprintf(stderr,
                 "assemble: warning: mesh sigma %.3g below k+1 = %d; the "
                 "convergence bound assumes sigma >= k+1\n",
                 std::min(mesh.x.sigma, mesh.y.sigma), k + 1);
  }

  const int quad = resolve_quad_points(config, k);
  const int n_elems = mesh.n_elements();
  std::vector<LocalSystem> locals(n_elems);
  parallel_over_elements(n_elems, config.threads, [&](int e) {
    locals[e] = local_system(mesh, e, problem, k, quad);
  });

  SparseSystem sys;
  sys.dofs = build_dof_map(mesh, k);
  sys.rhs = Eigen::VectorXd::Zero(sys.dofs.n_free);

  std::vector<Triplet> trips;
  trips.reserve(static_cast<std::size_t>(n_elems) * local_size(k) *
                local_size(k));
  for (int e = 0; e < n_elems; ++e) {
    const auto idx = local_to_global(mesh, sys.dofs, e);
    const LocalSystem& loc = locals[e];
    const int nloc = static_cast<int>(idx.size());
    for (int i = 0; i < nloc; ++i) {
      if (idx[i] < 0) continue;
      sys.rhs(idx[i]) += loc.load(i);
      for (int j = 0; j < nloc; ++j) {
        if (idx[j] < 0) continue;
        trips.push_back({idx[i], idx[j], loc.a(i, j)});
      }
    }
  }
  sys.matrix = compress_triplets(trips, sys.dofs.n_free, sys.dofs.n_free);
  return sys;
}

CondensedSystem condense(const SparseSystem& system) {
  const DofMap& dofs = system.dofs;
  const CsrMatrix& a = system.matrix;
  const int n0 = dofs.interior_per_element();
  const std::ptrdiff_t ni = dofs.n_interior;
  const std::ptrdiff_t n_edge = dofs.n_free - ni;

  CondensedSystem out;
  out.n_interior = ni;
  out.couple.resize(dofs.n_elements);
  out.shift.resize(dofs.n_elements);
  out.edge_cols.resize(dofs.n_elements);

  std::vector<Triplet> trips;
  // Edge-edge entries of the parent pattern.
  for (std::ptrdiff_t r = ni; r < dofs.n_free; ++r) {
    for (std::ptrdiff_t p = a.row_offsets[r]; p < a.row_offsets[r + 1]; ++p) {
      if (a.col_indices[p] >= ni) {
        trips.push_back({r - ni, a.col_indices[p] - ni, a.values[p]});
      }
    }
  }

  Eigen::VectorXd rhs_edge = system.rhs.tail(n_edge);

  for (int e = 0; e < dofs.n_elements; ++e) {
    const std::ptrdiff_t e0 = dofs.element_start(e);

    // Columns of this element's free edge unknowns, in local scan order.
    std::vector<std::ptrdiff_t>& cols = out.edge_cols[e];
    for (std::ptrdiff_t p = a.row_offsets[e0]; p < a.row_offsets[e0 + 1];
         ++p) {
      if (a.col_indices[p] >= ni) cols.push_back(a.col_indices[p]);
    }
    const int nb = static_cast<int>(cols.size());

    Eigen::MatrixXd a00 = Eigen::MatrixXd::Zero(n0, n0);
    Eigen::MatrixXd a0b = Eigen::MatrixXd::Zero(n0, nb);
    for (int i = 0; i < n0; ++i) {
      const std::ptrdiff_t r = e0 + i;
      for (std::ptrdiff_t p = a.row_offsets[r]; p < a.row_offsets[r + 1];
           ++p) {
        const std::ptrdiff_t c = a.col_indices[p];
        if (c >= e0 && c < e0 + n0) {
          a00(i, c - e0) = a.values[p];
        } else if (c >= ni) {
          const auto it = std::lower_bound(cols.begin(), cols.end(), c);
          a0b(i, it - cols.begin()) = a.values[p];
        }
      }
    }
    Eigen::MatrixXd ab0 = Eigen::MatrixXd::Zero(nb, n0);
    for (int i = 0; i < nb; ++i) {
      const std::ptrdiff_t r = cols[i];
      for (std::ptrdiff_t p = a.row_offsets[r]; p < a.row_offsets[r + 1];
           ++p) {
        const std::ptrdiff_t c = a.col_indices[p];
        if (c >= e0 && c < e0 + n0) ab0(i, c - e0) = a.values[p];
      }
    }

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a00);
    const Eigen::VectorXd udiag = lu.matrixLU().diagonal().cwiseAbs();
    if (udiag.minCoeff() <= 1e-300 ||
        udiag.minCoeff() < 1e-14 * udiag.maxCoeff()) {
      throw NumericalError("condense: singular interior block in element " +
                           std::to_string(e));
    }
    out.couple[e] = lu.solve(a0b);
    out.shift[e] = lu.solve(system.rhs.segment(e0, n0));

    const Eigen::MatrixXd schur = ab0 * out.couple[e];
    for (int i = 0; i < nb; ++i) {
      for (int j = 0; j < nb; ++j) {
        trips.push_back({cols[i] - ni, cols[j] - ni, -schur(i, j)});
      }
      rhs_edge(cols[i] - ni) -= ab0.row(i).dot(out.shift[e]);
    }
  }

  out.edge_system.dofs = dofs;
  out.edge_system.rhs = rhs_edge;
  out.edge_system.matrix = compress_triplets(trips, n_edge, n_edge);
  return out;
}

Eigen::VectorXd CondensedSystem::recover(
    const Eigen::VectorXd& edge_solution) const {
  const std::ptrdiff_t total = n_interior + edge_solution.size();
  Eigen::VectorXd full(total);
  full.tail(edge_solution.size()) = edge_solution;
  const int n_elements = static_cast<int>(couple.size());
  const int n0 = static_cast<int>(n_interior / n_elements);
  for (int e = 0; e < n_elements; ++e) {
    const int nb = static_cast<int>(edge_cols[e].size());
    Eigen::VectorXd ub(nb);
    for (int i = 0; i < nb; ++i) {
      ub(i) = edge_solution(edge_cols[e][i] - n_interior);
    }
    full.segment(static_cast<std::ptrdiff_t>(e) * n0, n0) =
        shift[e] - couple[e] * ub;
  }
  return full;
}

SolveResult solve(const SparseSystem& system) {
  const CsrMatrix& a = system.matrix;
  const std::ptrdiff_t n = a.rows;

  // Two-sided max-magnitude equilibration; tiny eps and N-scaled penalties
  // otherwise put twenty orders of magnitude between rows.
  Eigen::VectorXd row_scale = Eigen::VectorXd::Zero(n);
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    for (std::ptrdiff_t p = a.row_offsets[r]; p < a.row_offsets[r + 1]; ++p) {
      row_scale(r) = std::max(row_scale(r), std::abs(a.values[p]));
    }
    row_scale(r) = row_scale(r) > 0.0 ? 1.0 / row_scale(r) : 1.0;
  }
  Eigen::VectorXd col_scale = Eigen::VectorXd::Zero(n);
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    for (std::ptrdiff_t p = a.row_offsets[r]; p < a.row_offsets[r + 1]; ++p) {
      col_scale(a.col_indices[p]) =
          std::max(col_scale(a.col_indices[p]),
                   std::abs(a.values[p]) * row_scale(r));
    }
  }
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    col_scale(c) = col_scale(c) > 0.0 ? 1.0 / col_scale(c) : 1.0;
  }

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(a.values.size());
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    for (std::ptrdiff_t p = a.row_offsets[r]; p < a.row_offsets[r + 1]; ++p) {
      const std::ptrdiff_t c = a.col_indices[p];
      trips.emplace_back(static_cast<int>(r), static_cast<int>(c),
                         a.values[p] * row_scale(r) * col_scale(c));
    }
  }
  Eigen::SparseMatrix<double> mat(n, n);
  mat.setFromTriplets(trips.begin(), trips.end());
  mat.makeCompressed();

  SolveResult result;
  result.report.dimension = n;

  const auto t0 = std::chrono::steady_clock::now();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.analyzePattern(mat);
  lu.factorize(mat);
  const auto t1 = std::chrono::steady_clock::now();
  if (lu.info() != Eigen::Success) {
    throw NumericalError("solve: factorization failed: " +
                         lu.lastErrorMessage());
  }

  const Eigen::VectorXd scaled_rhs = system.rhs.cwiseProduct(row_scale);
  const Eigen::VectorXd y = lu.solve(scaled_rhs);
  const auto t2 = std::chrono::steady_clock::now();
  if (lu.info() != Eigen::Success) {
    throw NumericalError("solve: backsubstitution failed");
  }
  result.solution = y.cwiseProduct(col_scale);

  const double rhs_norm = system.rhs.norm();
  const double res = (a.apply(result.solution) - system.rhs).norm();
  result.report.rel_residual = rhs_norm > 0.0 ? res / rhs_norm : res;
  result.report.factor_seconds =
      std::chrono::duration<double>(t1 - t0).count();
  result.report.solve_seconds = std::chrono::duration<double>(t2 - t1).count();
  if (result.report.rel_residual > 1e-8) {
    throw NumericalError("solve: relative residual " +
                         std::to_string(result.report.rel_residual) +
                         " exceeds 1e-8");
  }
  return result;
}

SolveResult solve_scheme(const TensorMesh& mesh, const ProblemSpec& problem,
                         int k, const NumericsConfig& config) {
  const SparseSystem sys = assemble(mesh, problem, k, config);
  SolveResult result;
  if (config.condense) {
    const CondensedSystem cond = condense(sys);
    SolveResult edge = solve(cond.edge_system);
    result.solution = cond.recover(edge.solution);
    result.report = edge.report;
    result.report.condensed = true;
  } else {
    result = solve(sys);
  }
  // Residual of the full (uncondensed) system is the stronger statement;
  // report that one.
  const double rhs_norm = sys.rhs.norm();
  const double res = (sys.matrix.apply(result.solution) - sys.rhs).norm();
  result.report.rel_residual = rhs_norm > 0.0 ? res / rhs_norm : res;
  if (result.report.rel_residual > 1e-8) {
    throw NumericalError("solve_scheme: recovered residual " +
                         std::to_string(result.report.rel_residual) +
                         " exceeds 1e-8");
  }
  return result;
}

void write_matrix_market(const CsrMatrix& m, std::ostream& os) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << m.rows << " " << m.cols << " " << m.nnz() << "\n";
  char buf[64];
  for (std::ptrdiff_t r = 0; r < m.rows; ++r) {
    for (std::ptrdiff_t p = m.row_offsets[r]; p < m.row_offsets[r + 1]; ++p) {
      std::snprintf(buf, sizeof(buf), "%.17g", m.values[p]);
      os << (r + 1) << " " << (m.col_indices[p] + 1) << " " << buf << "\n";
    }
  }
}

}  // namespace wg
