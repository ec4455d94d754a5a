// Command-line front end: convergence studies, mesh audits, verification
// suites, and system dumps for the layer-adapted weak Galerkin solver.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <vector>

#include "wg/analysis.hpp"
#include "wg/benchmarks.hpp"
#include "wg/study.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct StudyArgs {
  int example = 1;
  int k = 1;
  std::vector<int> n_list{8, 16, 32, 64};
  std::vector<double> eps_list{1e-6, 1e-8};
  double sigma = 0.0;
  int quad_order = 0;
  bool no_condense = false;
  bool parallel = false;
  std::string format = "csv";
  std::string out;
};

int run_study_command(const StudyArgs& args) {
  wg::StudyConfig config;
  config.sigma = args.sigma;
  config.quad_points = args.quad_order;
  config.condense = !args.no_condense;
  config.parallel_cells = args.parallel;
  const wg::ProblemFamily family = [&](double eps, int k) {
    return wg::benchmark_problem(args.example, eps, k);
  };
  const wg::StudyResult result =
      wg::run_study(family, args.k, args.n_list, args.eps_list, config);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out, std::ios::binary);
    if (!file) {
      std::cerr << "cannot open output path: " << args.out << "\n";
      return kExitUsage;
    }
    os = &file;
  }
  if (args.format == "md") {
    wg::write_markdown(result, *os);
  } else {
    wg::write_csv(result, *os);
  }
  if (!args.out.empty()) {
    wg::write_plot_data(result, args.out);
  }

  for (const wg::StudyRow& row : result.rows) {
    if (row.failed) {
      std::cerr << "cell (eps=" << row.eps << ", N=" << row.n
                << ") failed: " << row.note << "\n";
      return kExitNumerical;
    }
  }
  return 0;
}

int run_mesh_audit(int n, double eps, double sigma, double beta,
                   const std::string& dump) {
  const wg::Mesh1D mesh = wg::bakhvalov_nodes(n, eps, sigma, beta);
  const wg::MeshAudit audit = wg::audit_mesh(mesh);
  std::cout << "mesh N=" << n << " eps=" << eps << " sigma=" << sigma
            << " beta=" << beta << "\n";
  wg::print_audit(audit, std::cout);
  if (!dump.empty()) {
    std::ofstream os(dump, std::ios::binary);
    if (!os) {
      std::cerr << "cannot open dump path: " << dump << "\n";
      return kExitUsage;
    }
    wg::write_nodes(mesh, os);
  }
  return audit.pass() ? 0 : kExitNumerical;
}

int run_dump_system(int example, int k, int n, double eps, double sigma,
                    const std::string& out) {
  wg::ProblemSpec problem = wg::benchmark_problem(example, eps, k);
  if (sigma > 0.0) problem.sigma = sigma;
  const wg::TensorMesh mesh = wg::make_layer_mesh(
      n, eps, problem.sigma, problem.beta1, problem.beta2);
  const wg::SparseSystem system = wg::assemble(mesh, problem, k);
  std::ofstream os(out, std::ios::binary);
  if (!os) {
    std::cerr << "cannot open output path: " << out << "\n";
    return kExitUsage;
  }
  wg::write_matrix_market(system.matrix, os);
  std::cout << "wrote " << system.matrix.rows << "x" << system.matrix.cols
            << " system with " << system.matrix.nnz() << " entries\n";
  return 0;
}

int run_verify() {
  int failures = 0;
  const auto check = [&failures](const char* what, bool ok, double value,
                                 double limit) {
    std::printf("%-28s %s  (value %.3e, limit %.3e)\n", what,
                ok ? "pass" : "FAIL", value, limit);
    if (!ok) ++failures;
  };

  {
    const wg::ProblemSpec problem = wg::patch_problem(1e-3, 2);
    const wg::TensorMesh mesh =
        wg::make_layer_mesh(8, 1e-3, 6.0, problem.beta1, problem.beta2);
    const wg::SolveResult solved = wg::solve_scheme(mesh, problem, 2, {});
    const wg::DofMap dofs = wg::build_dof_map(mesh, 2);
    const wg::WeakFunction u_n =
        wg::from_free_vector(solved.solution, dofs, mesh);
    const wg::WeakFunction qnu = wg::project(*problem.exact_u, mesh, 2, 6);
    const double err = wg::energy_norm(wg::weak_difference(qnu, u_n), mesh,
                                       problem, 6);
    check("patch test", err <= 1e-9, err, 1e-9);
  }

  {
    double worst = 0.0;
    for (int k = 1; k <= 2; ++k) {
      const wg::TensorMesh mesh = wg::make_layer_mesh(8, 1e-6, 2 * k, 2, 3);
      for (unsigned seed = 1; seed <= 3; ++seed) {
        worst = std::max(worst, wg::commutativity_defect(
                                    wg::random_smooth_field(seed), mesh, k, 0));
      }
    }
    check("commutativity", worst <= 1e-11, worst, 1e-11);
  }

  for (int example = 1; example <= 2; ++example) {
    const wg::ProblemSpec problem = wg::benchmark_problem(example, 1e-8, 1);
    const wg::TensorMesh mesh =
        wg::make_layer_mesh(8, 1e-8, 2.0, problem.beta1, problem.beta2);
    const wg::SparseSystem system = wg::assemble(mesh, problem, 1);
    const wg::CoercivityReport rep =
        wg::coercivity_check(system, mesh, problem, 20, 7u, 0);
    check(example == 1 ? "coercivity (benchmark 1)"
                       : "coercivity (benchmark 2)",
          rep.pass, rep.min_ratio, rep.alpha - 1e-8);
  }

  {
    const wg::ProblemSpec problem = wg::constant_convection_benchmark(1e-6, 1);
    const wg::TensorMesh mesh =
        wg::make_layer_mesh(8, 1e-6, 2.0, problem.beta1, problem.beta2);
    const wg::SparseSystem system = wg::assemble(mesh, problem, 1);
    const wg::SolveResult solved = wg::solve_scheme(mesh, problem, 1, {});
    const wg::WeakFunction u_n =
        wg::from_free_vector(solved.solution, system.dofs, mesh);
    const wg::ErrorEquationReport rep = wg::error_equation_residual(
        system, u_n, mesh, problem, 5, 11u, 0);
    check("error-equation identity", rep.max_residual <= 1e-7 * rep.scale,
          rep.max_residual, 1e-7 * rep.scale);
  }

  {
    wg::ProblemSpec problem = wg::variable_convection_benchmark(1e-8, 1);
    problem.sigma = 2.0;
    const wg::DecayStudy decay =
        wg::projection_decay_study(problem, {8, 16, 32}, 0);
    check("projection decay (volume)",
          std::abs(decay.volume_exponent - 2.0) <= 0.3,
          decay.volume_exponent, 2.0);
    check("projection decay (jump)",
          std::abs(decay.jump_exponent - 1.0) <= 0.3, decay.jump_exponent,
          1.0);
  }

  return failures == 0 ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak Galerkin solver for convection-diffusion problems with "
               "boundary layers on graded tensor meshes"};
  app.set_config("--config", "", "flat `key = value` file; command line wins");
  app.require_subcommand(1);

  StudyArgs study;
  CLI::App* study_cmd =
      app.add_subcommand("study", "run a convergence study");
  study_cmd->add_option("--example", study.example, "benchmark problem id")
      ->check(CLI::IsMember({1, 2}));
  study_cmd->add_option("--k", study.k, "polynomial degree (>= 1)")
      ->check(CLI::PositiveNumber);
  study_cmd->add_option("--n-list", study.n_list,
                        "cell counts per direction (even, doubling)")
      ->delimiter(',');
  study_cmd->add_option("--eps-list", study.eps_list, "eps values")
      ->delimiter(',');
  study_cmd->add_option("--sigma", study.sigma,
                        "mesh grading exponent (default 2k)");
  study_cmd->add_option("--quad-order", study.quad_order,
                        "Gauss points per direction");
  study_cmd->add_flag("--no-condense", study.no_condense,
                      "solve without interior elimination");
  study_cmd->add_flag("--parallel", study.parallel,
                      "run (eps, N) cells concurrently");
  study_cmd->add_option("--format", study.format, "csv or md")
      ->check(CLI::IsMember({"csv", "md"}));
  study_cmd->add_option("--out", study.out, "output path (default stdout)");

  int audit_n = 8;
  double audit_eps = 1e-6, audit_sigma = 2.0, audit_beta = 1.0;
  std::string audit_dump;
  CLI::App* audit_cmd =
      app.add_subcommand("mesh-audit", "audit the grading bounds of a mesh");
  audit_cmd->add_option("--n", audit_n, "cell count (even, >= 4)");
  audit_cmd->add_option("--eps", audit_eps, "perturbation parameter");
  audit_cmd->add_option("--sigma", audit_sigma, "grading exponent");
  audit_cmd->add_option("--beta", audit_beta, "layer decay constant");
  audit_cmd->add_option("--dump", audit_dump,
                        "write nodes to this path, one per line");

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "run the built-in verification suites (exit 2 on failure)");

  int dump_example = 2, dump_k = 1, dump_n = 8;
  double dump_eps = 1e-6, dump_sigma = 0.0;
  std::string dump_out = "system.mtx";
  CLI::App* dump_cmd = app.add_subcommand(
      "dump-system", "assemble and export the matrix (Matrix Market)");
  dump_cmd->add_option("--example", dump_example, "benchmark problem id")
      ->check(CLI::IsMember({1, 2}));
  dump_cmd->add_option("--k", dump_k, "polynomial degree");
  dump_cmd->add_option("--n", dump_n, "cell count");
  dump_cmd->add_option("--eps", dump_eps, "perturbation parameter");
  dump_cmd->add_option("--sigma", dump_sigma, "grading exponent");
  dump_cmd->add_option("--out", dump_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (study_cmd->parsed()) return run_study_command(study);
    if (audit_cmd->parsed()) {
      return run_mesh_audit(audit_n, audit_eps, audit_sigma, audit_beta,
                            audit_dump);
    }
    if (verify_cmd->parsed()) return run_verify();
    if (dump_cmd->parsed()) {
      return run_dump_system(dump_example, dump_k, dump_n, dump_eps,
                             dump_sigma, dump_out);
    }
  } catch (const wg::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
