#pragma once

#include <utility>
#include <vector>

#include "wg/assembly.hpp"
#include "wg/projection.hpp"

namespace wg {

/// Edge-flux weight paired with the penalty in the consistency estimates:
/// eps^2/N on the outer region, eps times the transverse width elsewhere.
double flux_weight(const TensorMesh& mesh, int elem, EdgeAxis axis,
                   double eps);

/// Scheme-induced norm:
///   |||v|||^2 = eps (grad_w v, grad_w v) + s_d(v, v) + ||v0||^2
///               + || |b.n|^{1/2} (v0 - vb) ||^2 over all element edges.
/// Fixed-order accumulation; results are bit-stable.
double energy_norm(const WeakFunction& v, const TensorMesh& mesh,
                   const ProblemSpec& problem, int quad_points);

/// Global bilinear form evaluated by summing local contributions (the
/// independent path for checking the assembled operator).
double bilinear_form_by_elements(const TensorMesh& mesh,
                                 const ProblemSpec& problem, int k,
                                 int quad_points, const WeakFunction& trial,
                                 const WeakFunction& test);

/// Stabilizer values s_d(u, v) and s_c(u, v) for assembled weak functions.
double jump_stabilizer_form(const TensorMesh& mesh, const ProblemSpec& problem,
                            int k, const WeakFunction& trial,
                            const WeakFunction& test);
double inflow_stabilizer_form(const TensorMesh& mesh,
                              const ProblemSpec& problem, int k,
                              int quad_points, const WeakFunction& trial,
                              const WeakFunction& test);

/// Minimum of c + div(b)/2 over a 41x41 grid (the constant the coercivity
/// bound uses; measured rather than trusted from the spec).
double measured_reaction_floor(const ProblemSpec& problem);

struct CoercivityReport {
  double alpha = 0.0;      // min(measured gamma, 1/2)
  double min_ratio = 0.0;  // min over trials of A(v,v)/|||v|||^2
  int trials = 0;
  bool pass = false;       // min_ratio >= alpha - 1e-8
};

/// Random-direction check of A(v, v) >= alpha |||v|||^2 on the free space.
CoercivityReport coercivity_check(const SparseSystem& system,
                                  const TensorMesh& mesh,
                                  const ProblemSpec& problem, int trials,
                                  unsigned seed, int quad_points);

struct ErrorEquationReport {
  double max_residual = 0.0;
  double scale = 0.0;  // ||A||_F * ||coefficients of Q_N u - u_N||_2
  int trials = 0;
};

/// Residual of the discrete error identity: for random unit test functions
/// v, compares A(Q_N u - u_N, v) against the consistency functionals
///   l1 - l2 - l3 + s_d(Q_N u, v) + s_c(Q_N u, v),
/// where l1 = (u - Q_0 u, div(b v0)), l2 = <u - Q_b u, b.n (v0 - vb)>,
/// l3 = eps <(grad u - projected grad u).n, v0 - vb>.
ErrorEquationReport error_equation_residual(const SparseSystem& system,
                                            const WeakFunction& u_n,
                                            const TensorMesh& mesh,
                                            const ProblemSpec& problem,
                                            int trials, unsigned seed,
                                            int quad_points);

/// rate_i = log2(e_{i-1} / e_i); the first entry is reported as 0.0 (table
/// convention). Throws unless the N values double successively.
std::vector<double> convergence_rates(
    const std::vector<std::pair<int, double>>& errors);

/// Smooth trig-exponential field with analytic gradient, drawn from a
/// seeded generator (for randomized identity checks).
struct SmoothField {
  Field u;
  GradField grad;
};
SmoothField random_smooth_field(unsigned seed);

/// Largest elementwise defect of the commutation identity
/// grad_w(projected u) = projected(grad u), relative to the largest
/// projected-gradient coefficient on the mesh.
double commutativity_defect(const SmoothField& field, const TensorMesh& mesh,
                            int k, int quad_points);

/// Projection approximation quantities over a sequence of meshes, with
/// least-squares decay exponents (error ~ N^-exponent):
///   volume:        ( sum_T ||u - Q_0 u||_T^2 )^{1/2}
///   edge:          sum_axes ( sum_T ||u - Q_0 u||^2 on axis edges )^{1/2}
///   weighted_flux: same with flux weight on grad u - projected grad u
///   weighted_jump: same with penalty weight on u - Q_0 u
struct DecayStudy {
  std::vector<int> n_values;
  std::vector<double> volume, edge, weighted_flux, weighted_jump;
  double volume_exponent = 0.0, edge_exponent = 0.0;
  double flux_exponent = 0.0, jump_exponent = 0.0;
};

DecayStudy projection_decay_study(const ProblemSpec& problem,
                                  const std::vector<int>& n_values,
                                  int quad_points = 0);

}  // namespace wg
