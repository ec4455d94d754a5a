#include "wg/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace wg {

Mesh1D bakhvalov_nodes(int n, double eps, double sigma, double beta) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("bakhvalov_nodes: N must be even and >= 4");
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("bakhvalov_nodes: eps must be positive");
  }
  if (eps > 1.0 / n) {
    throw std::invalid_argument(
        "bakhvalov_nodes: eps must satisfy eps <= 1/N (grading bounds fail "
        "otherwise)");
  }
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("bakhvalov_nodes: sigma must be positive");
  }
  if (!(beta > 0.0)) {
    throw std::invalid_argument("bakhvalov_nodes: beta must be positive");
  }

  Mesh1D m;
  m.n = n;
  m.eps = eps;
  m.sigma = sigma;
  m.beta = beta;
  m.nodes.resize(n + 1);
  const double scale = sigma * eps / beta;
  for (int i = 0; i <= n / 2; ++i) {
    m.nodes[i] = -scale * std::log(1.0 - 2.0 * (1.0 - eps) * i / n);
  }
  const double transition = m.nodes[n / 2];
  for (int i = n / 2 + 1; i <= n; ++i) {
    m.nodes[i] = 1.0 - (1.0 - transition) * 2.0 * (n - i) / n;
  }
  for (int i = 1; i <= n; ++i) {
    if (!(m.nodes[i] > m.nodes[i - 1])) {
      throw std::invalid_argument(
          "bakhvalov_nodes: nodes not strictly increasing");
    }
  }
  return m;
}

const char* region_name(Region r) {
  switch (r) {
    case Region::outer: return "outer";
    case Region::xfine: return "xfine";
    case Region::yfine: return "yfine";
    case Region::corner: return "corner";
  }
  return "?";
}

TensorMesh build_tensor_mesh(const Mesh1D& mx, const Mesh1D& my) {
  if (mx.n != my.n) {
    throw std::invalid_argument("build_tensor_mesh: mismatched N");
  }
  const int n = mx.n;
  TensorMesh mesh;
  mesh.x = mx;
  mesh.y = my;

  // x-parallel edge (i, j): segment [x_i, x_{i+1}] at height y_j.
  const auto xedge = [n](int i, int j) { return j * n + i; };
  // y-parallel edge (i, j): segment [y_j, y_{j+1}] on the line x_i.
  const auto yedge = [n](int i, int j) { return (n + 1) * n + i * n + j; };

  mesh.edges.resize(2 * n * (n + 1));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i < n; ++i) {
      Edge& e = mesh.edges[xedge(i, j)];
      e.axis = EdgeAxis::x;
      e.lo = mx.nodes[i];
      e.hi = mx.nodes[i + 1];
      e.fixed = my.nodes[j];
      e.elem_neg = (j > 0) ? (j - 1) * n + i : -1;
      e.elem_pos = (j < n) ? j * n + i : -1;
      e.boundary = (j == 0 || j == n);
    }
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j < n; ++j) {
      Edge& e = mesh.edges[yedge(i, j)];
      e.axis = EdgeAxis::y;
      e.lo = my.nodes[j];
      e.hi = my.nodes[j + 1];
      e.fixed = mx.nodes[i];
      e.elem_neg = (i > 0) ? j * n + (i - 1) : -1;
      e.elem_pos = (i < n) ? j * n + i : -1;
      e.boundary = (i == 0 || i == n);
    }
  }

  mesh.elements.resize(static_cast<std::size_t>(n) * n);
  const int half = n / 2;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      ElementInfo& el = mesh.elements[iy * n + ix];
      el.ix = ix;
      el.iy = iy;
      el.cell = {mx.nodes[ix], mx.nodes[ix + 1], my.nodes[iy],
                 my.nodes[iy + 1]};
      const bool x_fine = ix <= half - 1;
      const bool y_fine = iy <= half - 1;
      el.region = x_fine ? (y_fine ? Region::corner : Region::xfine)
                         : (y_fine ? Region::yfine : Region::outer);
      el.edge = {xedge(ix, iy), yedge(ix + 1, iy), xedge(ix, iy + 1),
                 yedge(ix, iy)};
    }
  }
  return mesh;
}

TensorMesh make_layer_mesh(int n, double eps, double sigma, double beta1,
                           double beta2) {
  return build_tensor_mesh(bakhvalov_nodes(n, eps, sigma, beta1),
                           bakhvalov_nodes(n, eps, sigma, beta2));
}

MeshAudit audit_mesh(const Mesh1D& m) {
  MeshAudit a;
  const int n = m.n;
  const int half = n / 2;

  a.all_widths_positive = true;
  for (int i = 1; i <= n; ++i) {
    if (!(m.width(i) > 0.0)) a.all_widths_positive = false;
  }

  a.fine_widths_monotone = true;
  for (int i = 2; i <= half - 1; ++i) {
    if (m.width(i) < m.width(i - 1)) a.fine_widths_monotone = false;
  }

  const double se = m.sigma * m.eps;
  const double h_last_fine = m.width(half - 1);
  a.last_fine_width_bounded = (se / 4.0 <= h_last_fine) && (h_last_fine <= se);

  const double h_transition = m.width(half);
  a.transition_width_bounded =
      (se / 2.0 <= h_transition) && (h_transition <= 2.0 * m.sigma / n);

  a.coarse_widths_bounded = true;
  for (int i = half + 1; i <= n; ++i) {
    if (m.width(i) < 1.0 / n || m.width(i) > 2.0 / n) {
      a.coarse_widths_bounded = false;
    }
  }

  a.first_width_vs_eps_over_n = m.width(1) / (m.eps / n);
  const double transition_node = m.nodes[half];
  a.transition_vs_sigma_eps_log_n = transition_node / (se * std::log(n));
  a.transition_vs_sigma_eps_log_eps =
      transition_node / (se * std::abs(std::log(m.eps)));

  const int rho_max = static_cast<int>(std::floor(m.sigma));
  a.graded_decay_ratio.assign(rho_max + 1, 0.0);
  for (int rho = 0; rho <= rho_max; ++rho) {
    double worst = 0.0;
    for (int i = 1; i <= half - 1; ++i) {
      const double value = std::pow(m.width(i), rho) *
                           std::exp(-m.beta * m.nodes[i - 1] / m.eps);
      const double bound = std::pow(m.eps / n, rho);
      worst = std::max(worst, value / bound);
    }
    a.graded_decay_ratio[rho] = worst;
  }
  return a;
}

void print_audit(const MeshAudit& a, std::ostream& os) {
  const auto line = [&os](const char* what, bool ok) {
    os << "  " << what << ": " << (ok ? "pass" : "FAIL") << "\n";
  };
  line("fine widths monotone (h_1 <= ... <= h_{N/2-1})", a.fine_widths_monotone);
  line("last fine width in [sigma*eps/4, sigma*eps]", a.last_fine_width_bounded);
  line("transition width in [sigma*eps/2, 2*sigma/N]", a.transition_width_bounded);
  line("coarse widths in [1/N, 2/N]", a.coarse_widths_bounded);
  line("all widths positive", a.all_widths_positive);
  os << "  measured h_1 / (eps/N): " << a.first_width_vs_eps_over_n << "\n";
  os << "  measured x_{N/2} / (sigma*eps*ln N): "
     << a.transition_vs_sigma_eps_log_n << "\n";
  os << "  measured x_{N/2} / (sigma*eps*|ln eps|): "
     << a.transition_vs_sigma_eps_log_eps << "\n";
  for (std::size_t rho = 0; rho < a.graded_decay_ratio.size(); ++rho) {
    os << "  measured max h_i^" << rho << " e^{-beta x/eps} / (eps/N)^" << rho
       << ": " << a.graded_decay_ratio[rho] << "\n";
  }
}

void write_nodes(const Mesh1D& m, std::ostream& os) {
  char buf[64];
  for (const double x : m.nodes) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", x);
    os << buf;
  }
}

}  // namespace wg
