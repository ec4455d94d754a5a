#include "wg/study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace wg {

namespace {

struct Cell {
  double eps;
  int n;
  int row_index;
};

std::string format_eps(double eps) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", eps);
  return buf;
}

}  // namespace

StudyResult run_study(const ProblemFamily& family, int k,
                      const std::vector<int>& n_list,
                      const std::vector<double>& eps_list,
                      const StudyConfig& config) {
  if (n_list.empty() || eps_list.empty()) {
    throw std::invalid_argument("run_study: empty N or eps list");
  }
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 4 || n_list[i] % 2 != 0) {
      throw std::invalid_argument("run_study: N values must be even, >= 4");
    }
    if (i > 0 && n_list[i] != 2 * n_list[i - 1]) {
      throw std::invalid_argument("run_study: N values must double");
    }
  }

  StudyResult result;
  result.k = k;
  result.sigma = config.sigma > 0.0 ? config.sigma : 2.0 * k;
  result.quad_points = config.quad_points > 0 ? config.quad_points
                                              : default_quad_points(k);

  // Validate the coefficient assumptions once per eps.
  for (const double eps : eps_list) {
    const ProblemSpec probe = family(eps, k);
    const ProblemValidation v = validate_problem(probe);
    if (!v.pass()) {
      throw std::invalid_argument(
          "run_study: problem fails assumption validation at eps = " +
          format_eps(eps));
    }
  }

  std::vector<Cell> cells;
  int row_index = 0;
  for (const double eps : eps_list) {
    for (const int n : n_list) {
      cells.push_back({eps, n, row_index++});
    }
  }
  result.rows.resize(cells.size());
  result.reports.resize(cells.size());
  result.wall_seconds.resize(cells.size());

  NumericsConfig numerics;
  numerics.quad_points = result.quad_points;
  numerics.condense = config.condense;
  numerics.threads = config.threads;

  const auto run_cell = [&](const Cell& cell) {
    StudyRow row;
    row.k = k;
    row.eps = cell.eps;
    row.n = cell.n;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ProblemSpec problem = family(cell.eps, k);
      problem.sigma = result.sigma;
      const TensorMesh mesh = make_layer_mesh(
          cell.n, cell.eps, result.sigma, problem.beta1, problem.beta2);
      const SolveResult solved = solve_scheme(mesh, problem, k, numerics);
      const DofMap dofs = build_dof_map(mesh, k);
      const WeakFunction u_n = from_free_vector(solved.solution, dofs, mesh);
      const WeakFunction qnu =
          project(*problem.exact_u, mesh, k, result.quad_points);
      row.error = energy_norm(weak_difference(qnu, u_n), mesh, problem,
                              result.quad_points);
      result.reports[cell.row_index] = solved.report;
    } catch (const std::exception& err) {
      row.failed = true;
      row.note = err.what();
      row.error = std::numeric_limits<double>::quiet_NaN();
    }
    result.wall_seconds[cell.row_index] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    result.rows[cell.row_index] = row;
  };

  if (config.parallel_cells && cells.size() > 1) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers < 2) workers = 2;
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < cells.size();
             i = next.fetch_add(1)) {
          run_cell(cells[i]);
        }
      });
    }
    for (auto& th : pool) th.join();
  } else {
    for (const Cell& cell : cells) run_cell(cell);
  }

  // Rates per eps column (rows are already grouped by eps, N ascending).
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    StudyRow& row = result.rows[i];
    if (i == 0 || result.rows[i - 1].eps != row.eps) {
      row.rate = 0.0;
      continue;
    }
    const StudyRow& prev = result.rows[i - 1];
    row.rate = (!row.failed && !prev.failed && row.n == 2 * prev.n)
                   ? std::log2(prev.error / row.error)
                   : 0.0;
  }
  return result;
}

void write_csv(const StudyResult& result, std::ostream& os) {
  os << "k,eps,N,error,rate\n";
  char buf[128];
  for (const StudyRow& row : result.rows) {
    if (row.failed) {
      std::snprintf(buf, sizeof(buf), "%d,%g,%d,NA,0.00\n", row.k, row.eps,
                    row.n);
    } else {
      std::snprintf(buf, sizeof(buf), "%d,%g,%d,%.2E,%.2f\n", row.k, row.eps,
                    row.n, row.error, row.rate);
    }
    os << buf;
  }
}

std::string csv_string(const StudyResult& result) {
  std::ostringstream os;
  write_csv(result, os);
  return os.str();
}

void write_markdown(const StudyResult& result, std::ostream& os) {
  // Column layout mirrors the study tables: one (error, rate) pair per eps.
  std::vector<double> eps_values;
  std::vector<int> n_values;
  for (const StudyRow& row : result.rows) {
    if (std::find(eps_values.begin(), eps_values.end(), row.eps) ==
        eps_values.end()) {
      eps_values.push_back(row.eps);
    }
    if (std::find(n_values.begin(), n_values.end(), row.n) ==
        n_values.end()) {
      n_values.push_back(row.n);
    }
  }
  std::sort(n_values.begin(), n_values.end());

  os << "| N |";
  for (const double eps : eps_values) {
    os << " eps=" << format_eps(eps) << " |  rate |";
  }
  os << "\n|---|";
  for (std::size_t i = 0; i < eps_values.size(); ++i) os << "---|---|";
  os << "\n";

  char buf[64];
  for (const int n : n_values) {
    os << "| " << n << " |";
    for (const double eps : eps_values) {
      const auto it = std::find_if(
          result.rows.begin(), result.rows.end(), [&](const StudyRow& r) {
            return r.n == n && r.eps == eps;
          });
      if (it == result.rows.end() || it->failed) {
        os << " NA | NA |";
      } else {
        std::snprintf(buf, sizeof(buf), " %.2E | %.2f |", it->error,
                      it->rate);
        os << buf;
      }
    }
    os << "\n";
  }
}

std::vector<std::string> write_plot_data(const StudyResult& result,
                                         const std::string& stem) {
  std::vector<std::string> names;
  std::vector<std::pair<int, double>> keys;  // (k, eps) in first-seen order
  for (const StudyRow& row : result.rows) {
    const std::pair<int, double> key{row.k, row.eps};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      keys.push_back(key);
    }
  }
  for (const auto& [k, eps] : keys) {
    std::string name = stem + "_k" + std::to_string(k) + "_eps" +
                       format_eps(eps) + ".dat";
    std::ofstream os(name, std::ios::binary);
    if (!os) throw std::runtime_error("write_plot_data: cannot open " + name);
    char buf[64];
    for (const StudyRow& row : result.rows) {
      if (row.k != k || row.eps != eps || row.failed) continue;
      std::snprintf(buf, sizeof(buf), "%d %.17g\n", row.n, row.error);
      os << buf;
    }
    names.push_back(std::move(name));
  }
  return names;
}

StudyResult parse_csv(std::istream& is) {
  StudyResult result;
  std::string line;
  if (!std::getline(is, line) || line != "k,eps,N,error,rate") {
    throw std::runtime_error("parse_csv: bad header");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    StudyRow row;
    std::string error_token;
    if (!(ss >> row.k >> row.eps >> row.n >> error_token >> row.rate)) {
      throw std::runtime_error("parse_csv: bad row: " + line);
    }
    if (error_token == "NA") {
      row.failed = true;
      row.error = std::numeric_limits<double>::quiet_NaN();
    } else {
      row.error = std::stod(error_token);
    }
    result.rows.push_back(row);
    result.k = row.k;
  }
  return result;
}

}  // namespace wg
