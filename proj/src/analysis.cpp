#include "wg/analysis.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "wg/quadrature.hpp"

namespace wg {

namespace {

// Position on a side at tangential coordinate s.
inline void side_point(const Rect& cell, const SideGeom& geom, double s,
                       double& x, double& y) {
  if (geom.axis == EdgeAxis::x) {
    x = s;
    y = geom.ny > 0 ? cell.y1 : cell.y0;
  } else {
    x = geom.nx > 0 ? cell.x1 : cell.x0;
    y = s;
  }
}

double edge_poly_value(const WeakFunction& v, int edge_id, double a, double b,
                       double s) {
  const int n1 = v.per_edge();
  double vals[16];
  eval_edge_basis(v.k, a, b, s, {vals, vals + n1});
  double sum = 0.0;
  for (int m = 0; m < n1; ++m) {
    sum += v.edge(static_cast<Eigen::Index>(edge_id) * n1 + m) * vals[m];
  }
  return sum;
}

double least_squares_exponent(const std::vector<int>& n_values,
                              const std::vector<double>& quantities) {
  const int m = static_cast<int>(n_values.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    const double x = std::log(static_cast<double>(n_values[i]));
    const double y = std::log(std::max(quantities[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return -slope;
}

}  // namespace

double flux_weight(const TensorMesh& mesh, int elem, EdgeAxis axis,
                   double eps) {
  const ElementInfo& el = mesh.elements[elem];
  if (el.region == Region::outer) return eps * eps / mesh.n();
  return axis == EdgeAxis::x ? eps * el.cell.hy() : eps * el.cell.hx();
}

double energy_norm(const WeakFunction& v, const TensorMesh& mesh,
                   const ProblemSpec& problem, int quad_points) {
  const int k = v.k;
  const int quad = quad_points > 0 ? quad_points : default_quad_points(k);
  const QuadratureRule rule = gauss_legendre(quad);
  const int n0 = v.interior_per_element();

  double grad_part = 0.0, jump_part = 0.0, l2_part = 0.0, inflow_part = 0.0;
  std::vector<double> basis(n0);
  std::vector<Vec2> grads(n0);
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementInfo& el = mesh.elements[e];
    const Eigen::VectorXd local = gather_local(v, mesh, e);
    const Eigen::VectorXd mass = local_mass_diag(mesh, e, k);

    const WeakGradient grad = local_weak_gradient(mesh, e, k);
    const Eigen::VectorXd gx = grad.x * local;
    const Eigen::VectorXd gy = grad.y * local;
    grad_part +=
        problem.eps * (mass.dot(gx.cwiseAbs2()) + mass.dot(gy.cwiseAbs2()));

    const Eigen::MatrixXd sd = local_stabilizer_d(mesh, e, k, problem.eps);
    jump_part += local.dot(sd * local);

    l2_part += mass.dot(local.head(n0).cwiseAbs2());

    for (int side = 0; side < 4; ++side) {
      const SideGeom geom = side_geometry(el.cell, side);
      for (int q = 0; q < rule.order; ++q) {
        const double s = map_to_interval(geom.a, geom.b, rule.points[q]);
        double x, y;
        side_point(el.cell, geom, s, x, y);
        eval_element_basis(k, el.cell, x, y, basis, grads);
        double trace = 0.0;
        for (int p = 0; p < n0; ++p) trace += local(p) * basis[p];
        const double vb =
            edge_poly_value(v, el.edge[side], geom.a, geom.b, s);
        const double bn = eval(problem.b.x, x, y) * geom.nx +
                          eval(problem.b.y, x, y) * geom.ny;
        const double w = rule.weights[q] * (geom.b - geom.a) / 2.0;
        inflow_part += w * std::abs(bn) * (trace - vb) * (trace - vb);
      }
    }
  }
  return std::sqrt(grad_part + jump_part + l2_part + inflow_part);
}

double bilinear_form_by_elements(const TensorMesh& mesh,
                                 const ProblemSpec& problem, int k,
                                 int quad_points, const WeakFunction& trial,
                                 const WeakFunction& test) {
  const int quad = quad_points > 0 ? quad_points : default_quad_points(k);
  double sum = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const LocalSystem loc = local_system(mesh, e, problem, k, quad);
    const Eigen::VectorXd ul = gather_local(trial, mesh, e);
    const Eigen::VectorXd vl = gather_local(test, mesh, e);
    sum += vl.dot(loc.a * ul);
  }
  return sum;
}

double jump_stabilizer_form(const TensorMesh& mesh, const ProblemSpec& problem,
                            int k, const WeakFunction& trial,
                            const WeakFunction& test) {
  double sum = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Eigen::MatrixXd sd = local_stabilizer_d(mesh, e, k, problem.eps);
    sum += gather_local(test, mesh, e).dot(sd * gather_local(trial, mesh, e));
  }
  return sum;
}

double inflow_stabilizer_form(const TensorMesh& mesh,
                              const ProblemSpec& problem, int k,
                              int quad_points, const WeakFunction& trial,
                              const WeakFunction& test) {
  const int quad = quad_points > 0 ? quad_points : default_quad_points(k);
  double sum = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const Eigen::MatrixXd sc =
        local_stabilizer_c(mesh, e, k, problem.b, quad);
    sum += gather_local(test, mesh, e).dot(sc * gather_local(trial, mesh, e));
  }
  return sum;
}

double measured_reaction_floor(const ProblemSpec& problem) {
  constexpr int grid = 41;
  double floor = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    for (int i = 0; i < grid; ++i) {
      const double x = static_cast<double>(i) / (grid - 1);
      const double y = static_cast<double>(j) / (grid - 1);
      floor = std::min(floor, eval(problem.c, x, y) +
                                  0.5 * eval(problem.b.div, x, y));
    }
  }
  return floor;
}

CoercivityReport coercivity_check(const SparseSystem& system,
                                  const TensorMesh& mesh,
                                  const ProblemSpec& problem, int trials,
                                  unsigned seed, int quad_points) {
  CoercivityReport report;
  report.alpha = std::min(measured_reaction_floor(problem), 0.5);
  report.trials = trials;
  report.min_ratio = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd v(system.dofs.n_free);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
    v /= v.norm();
    const double quad_form = v.dot(system.matrix.apply(v));
    const WeakFunction wf = from_free_vector(v, system.dofs, mesh);
    const double norm = energy_norm(wf, mesh, problem, quad_points);
    report.min_ratio = std::min(report.min_ratio, quad_form / (norm * norm));
  }
  report.pass = report.min_ratio >= report.alpha - 1e-8;
  return report;
}

std::vector<double> convergence_rates(
    const std::vector<std::pair<int, double>>& errors) {
  if (errors.empty()) return {};
  std::vector<double> rates(errors.size(), 0.0);
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (errors[i].first != 2 * errors[i - 1].first) {
      throw std::invalid_argument(
          "convergence_rates: N values must double successively");
    }
    rates[i] = std::log2(errors[i - 1].second / errors[i].second);
  }
  return rates;
}

ErrorEquationReport error_equation_residual(const SparseSystem& system,
                                            const WeakFunction& u_n,
                                            const TensorMesh& mesh,
                                            const ProblemSpec& problem,
                                            int trials, unsigned seed,
                                            int quad_points) {
  if (!problem.exact_u || !problem.exact_grad) {
    throw std::invalid_argument(
        "error_equation_residual: exact solution with gradient required");
  }
  const int k = system.dofs.k;
  const int quad = quad_points > 0 ? quad_points : default_quad_points(k) + 4;
  const QuadratureRule rule = gauss_legendre(quad);
  const int n0 = (k + 1) * (k + 1);
  const Field& u = *problem.exact_u;
  const GradField& du = *problem.exact_grad;

  const WeakFunction qnu = project(u, mesh, k, quad);
  const ProjectedGradient qgrad = project_gradient(du, mesh, k, quad);
  const WeakFunction err = weak_difference(qnu, u_n);
  const Eigen::VectorXd e_free = to_free_vector(err, system.dofs, mesh);
  const Eigen::VectorXd a_times_e = system.matrix.apply(e_free);

  // The consistency terms are linear in the test function; assemble them
  // once as a vector over the free unknowns.
  Eigen::VectorXd rhs_functional = Eigen::VectorXd::Zero(system.dofs.n_free);
  std::vector<double> basis(n0);
  std::vector<Vec2> grads(n0);
  std::vector<double> edge_vals(k + 1);

  for (int e = 0; e < mesh.n_elements(); ++e) {
    const ElementInfo& el = mesh.elements[e];
    const Rect& cell = el.cell;
    const std::ptrdiff_t e0 = system.dofs.element_start(e);

    // l1 = (u - Q_0 u, (div b) v0 + b . grad v0)
    for (int qy = 0; qy < rule.order; ++qy) {
      const double y = map_to_interval(cell.y0, cell.y1, rule.points[qy]);
      for (int qx = 0; qx < rule.order; ++qx) {
        const double x = map_to_interval(cell.x0, cell.x1, rule.points[qx]);
        const double w =
            rule.weights[qx] * rule.weights[qy] * cell.area() / 4.0;
        eval_element_basis(k, cell, x, y, basis, grads);
        double q0u = 0.0;
        for (int p = 0; p < n0; ++p) {
          q0u += qnu.interior(static_cast<Eigen::Index>(e) * n0 + p) *
                 basis[p];
        }
        const double defect = eval(u, x, y) - q0u;
        const double b1 = eval(problem.b.x, x, y);
        const double b2 = eval(problem.b.y, x, y);
        const double divb = eval(problem.b.div, x, y);
        for (int p = 0; p < n0; ++p) {
          rhs_functional(e0 + p) +=
              w * defect *
              (divb * basis[p] + b1 * grads[p].x + b2 * grads[p].y);
        }
      }
    }

    // Edge functionals: -l2 - l3 against (v0 - vb).
    for (int side = 0; side < 4; ++side) {
      const SideGeom geom = side_geometry(cell, side);
      const int edge_id = el.edge[side];
      const std::ptrdiff_t eb = system.dofs.edge_start(edge_id);
      for (int q = 0; q < rule.order; ++q) {
        const double s = map_to_interval(geom.a, geom.b, rule.points[q]);
        const double w = rule.weights[q] * (geom.b - geom.a) / 2.0;
        double x, y;
        side_point(cell, geom, s, x, y);
        eval_element_basis(k, cell, x, y, basis, grads);
        eval_edge_basis(k, geom.a, geom.b, s, edge_vals);

        const double bn = eval(problem.b.x, x, y) * geom.nx +
                          eval(problem.b.y, x, y) * geom.ny;
        const double qbu = edge_poly_value(qnu, edge_id, geom.a, geom.b, s);
        const double l2_density = (static_cast<double>(u(x, y)) - qbu) * bn;

        double pgx = 0.0, pgy = 0.0;
        for (int p = 0; p < n0; ++p) {
          pgx += qgrad.x(static_cast<Eigen::Index>(e) * n0 + p) * basis[p];
          pgy += qgrad.y(static_cast<Eigen::Index>(e) * n0 + p) * basis[p];
        }
        const double flux_defect =
            (eval(du.dx, x, y) - pgx) * geom.nx +
            (eval(du.dy, x, y) - pgy) * geom.ny;
        const double l3_density = problem.eps * flux_defect;

        const double density = -w * (l2_density + l3_density);
        for (int p = 0; p < n0; ++p) {
          rhs_functional(e0 + p) += density * basis[p];
        }
        if (eb >= 0) {
          for (int m = 0; m <= k; ++m) {
            rhs_functional(eb + m) -= density * edge_vals[m];
          }
        }
      }
    }

    // s_d(Q_N u, v) + s_c(Q_N u, v)
    const Eigen::VectorXd qnu_local = gather_local(qnu, mesh, e);
    const Eigen::MatrixXd sd = local_stabilizer_d(mesh, e, k, problem.eps);
    const Eigen::MatrixXd sc =
        local_stabilizer_c(mesh, e, k, problem.b, quad);
    const Eigen::VectorXd stab = sd * qnu_local + sc * qnu_local;
    for (int i = 0; i < n0; ++i) rhs_functional(e0 + i) += stab(i);
    for (int side = 0; side < 4; ++side) {
      const std::ptrdiff_t eb = system.dofs.edge_start(el.edge[side]);
      if (eb < 0) continue;
      for (int m = 0; m <= k; ++m) {
        rhs_functional(eb + m) += stab(n0 + side * (k + 1) + m);
      }
    }
  }

  double frobenius = 0.0;
  for (const double value : system.matrix.values) frobenius += value * value;
  ErrorEquationReport report;
  report.scale = std::sqrt(frobenius) * e_free.norm();
  report.trials = trials;

  const Eigen::VectorXd defect = a_times_e - rhs_functional;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd v(system.dofs.n_free);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
    v /= v.norm();
    report.max_residual = std::max(report.max_residual,
                                   std::abs(v.dot(defect)));
  }
  return report;
}

SmoothField random_smooth_field(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(0.5, 2.0);
  std::uniform_real_distribution<double> freq(0.5, 3.0);
  std::uniform_real_distribution<double> phase(0.0, 6.28);
  std::uniform_real_distribution<double> growth(-1.0, 1.0);
  const double a1 = amp(rng), w1 = freq(rng), p1 = phase(rng),
               g1 = growth(rng);
  const double a2 = amp(rng), w2 = freq(rng), p2 = phase(rng),
               g2 = growth(rng);
  SmoothField f;
  f.u = [=](long double x, long double y) {
    return a1 * std::sin(w1 * x + p1) * std::exp(g1 * y) +
           a2 * std::cos(w2 * y + p2) * std::exp(g2 * x);
  };
  f.grad.dx = [=](long double x, long double y) {
    return a1 * w1 * std::cos(w1 * x + p1) * std::exp(g1 * y) +
           a2 * g2 * std::cos(w2 * y + p2) * std::exp(g2 * x);
  };
  f.grad.dy = [=](long double x, long double y) {
    return a1 * g1 * std::sin(w1 * x + p1) * std::exp(g1 * y) -
           a2 * w2 * std::sin(w2 * y + p2) * std::exp(g2 * x);
  };
  return f;
}

double commutativity_defect(const SmoothField& field, const TensorMesh& mesh,
                            int k, int quad_points) {
  const int quad = quad_points > 0 ? quad_points : default_quad_points(k);
  const WeakFunction qnu = project(field.u, mesh, k, quad);
  const ProjectedGradient qgrad =
      project_gradient(field.grad, mesh, k, quad);
  const int n0 = (k + 1) * (k + 1);
  const double scale = std::max(qgrad.x.cwiseAbs().maxCoeff(),
                                qgrad.y.cwiseAbs().maxCoeff());
  double worst = 0.0;
  for (int e = 0; e < mesh.n_elements(); ++e) {
    const WeakGradient grad = local_weak_gradient(mesh, e, k);
    const Eigen::VectorXd local = gather_local(qnu, mesh, e);
    const Eigen::VectorXd wx = grad.x * local;
    const Eigen::VectorXd wy = grad.y * local;
    const Eigen::Index at = static_cast<Eigen::Index>(e) * n0;
    worst = std::max(worst,
                     (wx - qgrad.x.segment(at, n0)).cwiseAbs().maxCoeff());
    worst = std::max(worst,
                     (wy - qgrad.y.segment(at, n0)).cwiseAbs().maxCoeff());
  }
  return worst / std::max(scale, 1e-300);
}

DecayStudy projection_decay_study(const ProblemSpec& problem,
                                  const std::vector<int>& n_values,
                                  int quad_points) {
  if (!problem.exact_u || !problem.exact_grad) {
    throw std::invalid_argument(
        "projection_decay_study: exact solution with gradient required");
  }
  const int k = problem.k;
  const int quad = quad_points > 0 ? quad_points : default_quad_points(k);
  const QuadratureRule rule = gauss_legendre(quad);
  const int n0 = (k + 1) * (k + 1);
  const double sigma = problem.sigma > 0 ? problem.sigma : k + 1;
  const Field& u = *problem.exact_u;
  const GradField& du = *problem.exact_grad;

  DecayStudy study;
  study.n_values = n_values;
  std::vector<double> basis(n0);
  std::vector<Vec2> grads(n0);

  for (const int n : n_values) {
    const TensorMesh mesh =
        make_layer_mesh(n, problem.eps, sigma, problem.beta1, problem.beta2);
    const WeakFunction qnu = project(u, mesh, k, quad);
    const ProjectedGradient qgrad = project_gradient(du, mesh, k, quad);

    double volume = 0.0;
    double edge_ax[2] = {0.0, 0.0};
    double flux_ax[2] = {0.0, 0.0};
    double jump_ax[2] = {0.0, 0.0};

    for (int e = 0; e < mesh.n_elements(); ++e) {
      const Rect& cell = mesh.elements[e].cell;
      for (int qy = 0; qy < rule.order; ++qy) {
        const double y = map_to_interval(cell.y0, cell.y1, rule.points[qy]);
        for (int qx = 0; qx < rule.order; ++qx) {
          const double x =
              map_to_interval(cell.x0, cell.x1, rule.points[qx]);
          const double w =
              rule.weights[qx] * rule.weights[qy] * cell.area() / 4.0;
          eval_element_basis(k, cell, x, y, basis, grads);
          double q0u = 0.0;
          for (int p = 0; p < n0; ++p) {
            q0u += qnu.interior(static_cast<Eigen::Index>(e) * n0 + p) *
                   basis[p];
          }
          const double defect = eval(u, x, y) - q0u;
          volume += w * defect * defect;
        }
      }

      for (int side = 0; side < 4; ++side) {
        const SideGeom geom = side_geometry(cell, side);
        const int axis = geom.axis == EdgeAxis::x ? 0 : 1;
        const double penalty =
            penalty_weight(mesh, e, geom.axis, problem.eps);
        const double flux_w = flux_weight(mesh, e, geom.axis, problem.eps);
        for (int q = 0; q < rule.order; ++q) {
          const double s = map_to_interval(geom.a, geom.b, rule.points[q]);
          const double w = rule.weights[q] * (geom.b - geom.a) / 2.0;
          double x, y;
          side_point(cell, geom, s, x, y);
          eval_element_basis(k, cell, x, y, basis, grads);
          double q0u = 0.0, pgx = 0.0, pgy = 0.0;
          for (int p = 0; p < n0; ++p) {
            const Eigen::Index at = static_cast<Eigen::Index>(e) * n0 + p;
            q0u += qnu.interior(at) * basis[p];
            pgx += qgrad.x(at) * basis[p];
            pgy += qgrad.y(at) * basis[p];
          }
          const double defect = eval(u, x, y) - q0u;
          const double fx = eval(du.dx, x, y) - pgx;
          const double fy = eval(du.dy, x, y) - pgy;
          edge_ax[axis] += w * defect * defect;
          jump_ax[axis] += w * penalty * defect * defect;
          flux_ax[axis] += w * flux_w * (fx * fx + fy * fy);
        }
      }
    }
    study.volume.push_back(std::sqrt(volume));
    study.edge.push_back(std::sqrt(edge_ax[0]) + std::sqrt(edge_ax[1]));
    study.weighted_flux.push_back(std::sqrt(flux_ax[0]) +
                                  std::sqrt(flux_ax[1]));
    study.weighted_jump.push_back(std::sqrt(jump_ax[0]) +
                                  std::sqrt(jump_ax[1]));
  }

  study.volume_exponent = least_squares_exponent(n_values, study.volume);
  study.edge_exponent = least_squares_exponent(n_values, study.edge);
  study.flux_exponent =
      least_squares_exponent(n_values, study.weighted_flux);
  study.jump_exponent =
      least_squares_exponent(n_values, study.weighted_jump);
  return study;
}

}  // namespace wg
