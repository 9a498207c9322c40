#include "fracneumann/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fracneumann/gauss.hpp"

namespace fracneumann {

namespace {

double pdiff(double d, double p) {
  if (d == 0.0) return 0.0;
  return std::pow(std::abs(d), p - 2.0) * d;
}

void check_size(const Mesh& mesh, const Eigen::VectorXd& u) {
  if (u.size() != mesh.node_count()) throw InputError("nodal vector does not match the mesh");
}

}  // namespace

double T_energy(const WNorm& norm, const Eigen::VectorXd& u) { return norm.pth_power(u) / norm.p(); }

double S_energy(const Mesh& mesh, const Nonlinearity& nl, const Eigen::VectorXd& u, int order) {
  check_size(mesh, u);
  const Rule1D& g = gauss_legendre(order);
  CompensatedSum sum;
  for (int k = 0; k < mesh.interior_element_count(); ++k) {
    const int e = mesh.first_interior_element() + k;
    const double h = mesh.element_size(e);
    for (int j = 0; j < g.size(); ++j) {
      const double t = g.nodes[j];
      const double x = mesh.element_left(e) + h * t;
      sum.add(h * g.weights[j] * primitive_H(nl, x, (1.0 - t) * u[e] + t * u[e + 1]));
    }
  }
  return sum.value();
}

Eigen::VectorXd gradient_T(const WNorm& norm, const Eigen::VectorXd& u) {
  if (norm.p() < 1.1) throw InputError("gradient of T requires p >= 1.1");
  return norm.pth_power_gradient(u);
}

Eigen::VectorXd gradient_S(const Mesh& mesh, const Nonlinearity& nl, const Eigen::VectorXd& u,
                           int order) {
  check_size(mesh, u);
  const Rule1D& g = gauss_legendre(order);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(u.size());
  for (int k = 0; k < mesh.interior_element_count(); ++k) {
    const int e = mesh.first_interior_element() + k;
    const double h = mesh.element_size(e);
    for (int j = 0; j < g.size(); ++j) {
      const double t = g.nodes[j];
      const double x = mesh.element_left(e) + h * t;
      const double c = h * g.weights[j] * nl.h(x, (1.0 - t) * u[e] + t * u[e + 1]);
      out[e] += c * (1.0 - t);
      out[e + 1] += c * t;
    }
  }
  return out;
}

EnergyFunctional::EnergyFunctional(const WNorm& norm, const Nonlinearity& nl, double lambda, int order)
    : norm_(&norm), nl_(&nl), lambda_(lambda), order_(order) {
  if (order < 1) throw InputError("Gauss order must be positive");
}

Eigen::VectorXd EnergyFunctional::gradient_J(const Eigen::VectorXd& u) const {
  return gradient_T(*norm_, u) - lambda_ * gradient_S(mesh(), *nl_, u, order_);
}

EnergyBreakdown EnergyFunctional::breakdown(const Eigen::VectorXd& u) const {
  EnergyBreakdown b;
  b.seminorm = norm_->seminorm(u);
  b.potential = norm_->potential(u);
  b.T = (b.seminorm + b.potential) / norm_->p();
  b.S = S(u);
  b.lambda = lambda_;
  b.J = b.T - lambda_ * b.S;
  return b;
}

double EnergyFunctional::residual(const Eigen::VectorXd& u) const {
  return norm_->dual_norm(gradient_J(u));
}

double weak_residual(const WNorm& norm, const Nonlinearity& nl, double lambda,
                     const Eigen::VectorXd& u, int order) {
  return EnergyFunctional(norm, nl, lambda, order).residual(u);
}

double frac_p_laplacian_at(const DiscreteFunction& u, int node, const FracParams& params, int order) {
  const Mesh& m = u.mesh();
  if (!m.is_interior_node(node)) throw InputError("pointwise operator needs an interior node");
  const double p = params.p;
  const double expo = params.kernel_exponent();
  const double x = m.node(node);
  const double ux = u.values()[node];
  const Interval box = m.box();

  std::vector<double> radii;
  radii.reserve(m.node_count() + 2);
  for (int i = 0; i < m.node_count(); ++i)
    if (i != node) radii.push_back(std::abs(m.node(i) - x));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  // Innermost shell: u is linear on both sides, so the paired integrand is
  // c r^{p-2-sp} with c = phi(g_left) - phi(g_right).
  const double r1 = radii.front();
  const double gl = (ux - u.values()[node - 1]) / m.element_size(node - 1);
  const double gr = (u.values()[node + 1] - ux) / m.element_size(node);
  const double c = pdiff(gl, p) - pdiff(gr, p);
  const double beta = p - 1.0 - params.sp();
  double inner = 0.0;
  if (c != 0.0) {
    if (beta <= 0.0) return c > 0.0 ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity();
    inner = c * std::pow(r1, beta) / beta;
  }

  const Rule1D& g = gauss_legendre(order);
  CompensatedSum sum;
  sum.add(inner);
  for (std::size_t k = 0; k + 1 < radii.size(); ++k) {
    const double lo = radii[k], hi = radii[k + 1];
    for (int j = 0; j < g.size(); ++j) {
      const double r = lo + (hi - lo) * g.nodes[j];
      const double w = (hi - lo) * g.weights[j] * std::pow(r, -expo);
      double f = 0.0;
      if (x + r <= box.hi) f += pdiff(ux - u(x + r), p);
      if (x - r >= box.lo) f += pdiff(ux - u(x - r), p);
      sum.add(w * f);
    }
  }
  return sum.value();
}

namespace {

double neumann_element(const DiscreteFunction& u, int e, double lo, double hi, double x, double ux,
                       const FracParams& params, const Rule1D& g, int depth) {
  const double dist = std::min(std::abs(x - lo), std::abs(x - hi));
  if (depth < 40 && dist < 2.0 * (hi - lo)) {
    const double mid = 0.5 * (lo + hi);
    return neumann_element(u, e, lo, mid, x, ux, params, g, depth + 1) +
           neumann_element(u, e, mid, hi, x, ux, params, g, depth + 1);
  }
  const Mesh& m = u.mesh();
  const double h = m.element_size(e);
  const double u0 = u.values()[e], u1 = u.values()[e + 1];
  double sum = 0.0;
  for (int j = 0; j < g.size(); ++j) {
    const double y = lo + (hi - lo) * g.nodes[j];
    const double t = (y - m.element_left(e)) / h;
    const double uy = (1.0 - t) * u0 + t * u1;
    sum += (hi - lo) * g.weights[j] * pdiff(ux - uy, params.p) *
           std::pow(std::abs(x - y), -params.kernel_exponent());
  }
  return sum;
}

}  // namespace

double neumann_derivative_at(const DiscreteFunction& u, double x, const FracParams& params, int order) {
  const Mesh& m = u.mesh();
  const Interval dom = m.domain();
  if (x >= dom.lo && x <= dom.hi) throw InputError("Neumann derivative needs a point outside the closed domain");
  const double ux = u(x);
  const Rule1D& g = gauss_legendre(order);
  CompensatedSum sum;
  for (int k = 0; k < m.interior_element_count(); ++k) {
    const int e = m.first_interior_element() + k;
    sum.add(neumann_element(u, e, m.element_left(e), m.element_right(e), x, ux, params, g, 0));
  }
  return sum.value();
}

MonotonicityGap monotonicity_gap(const WNorm& norm, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  MonotonicityGap out;
  const Eigen::VectorXd diff = u - v;
  out.gap = (gradient_T(norm, u) - gradient_T(norm, v)).dot(diff);
  const double d = norm.pth_power(diff);
  out.ratio = d > 0.0 ? out.gap / d : 0.0;
  return out;
}

}  // namespace fracneumann
