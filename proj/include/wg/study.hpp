#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wg/analysis.hpp"
#include "wg/benchmarks.hpp"

namespace wg {

struct StudyRow {
  int k = 1;
  double eps = 0.0;
  int n = 0;
  double error = 0.0;  // |||Q_N u - u_N|||
  double rate = 0.0;   // log2 ratio against the previous N; 0.00 on the first
  bool failed = false;
  std::string note;
};

struct StudyConfig {
  double sigma = 0.0;   // 0 -> 2k, the experimental choice; the convergence
                        // bound itself only needs sigma >= k+1
  int quad_points = 0;  // 0 -> default
  bool condense = true;
  bool parallel_cells = false;  // opt-in concurrent (eps, N) cells
  int threads = 0;
};

struct StudyResult {
  int k = 1;
  double sigma = 0.0;
  int quad_points = 0;
  std::vector<StudyRow> rows;          // ordered by (k, eps, N)
  std::vector<SolveReport> reports;    // parallel to rows
  std::vector<double> wall_seconds;    // parallel to rows
};

using ProblemFamily = std::function<ProblemSpec(double eps, int k)>;

/// For each (eps, N): grade the mesh, assemble, solve, and measure the
/// energy norm of Q_N u - u_N. N values must be even and doubling. A cell
/// whose solve fails is recorded (failed flag + note) and the study moves
/// on. Requires the problem family to pass assumption validation.
StudyResult run_study(const ProblemFamily& family, int k,
                      const std::vector<int>& n_list,
                      const std::vector<double>& eps_list,
                      const StudyConfig& config = {});

/// CSV with header "k,eps,N,error,rate"; errors like 3.66E-01, rates with
/// two decimals; failed cells carry "NA". UTF-8, LF endings.
void write_csv(const StudyResult& result, std::ostream& os);
std::string csv_string(const StudyResult& result);

/// One table block per k: N rows, (error, rate) column pair per eps.
void write_markdown(const StudyResult& result, std::ostream& os);

/// Per (k, eps): "<stem>_k<k>_eps<eps>.dat" with "N error" rows at full
/// precision. Returns the file names written.
std::vector<std::string> write_plot_data(const StudyResult& result,
                                         const std::string& stem);

/// Inverse of write_csv (used by the round-trip checks).
StudyResult parse_csv(std::istream& is);

}  // namespace wg
