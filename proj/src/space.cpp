#include "fracneumann/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fracneumann/descent.hpp"
#include "fracneumann/gauss.hpp"

namespace fracneumann {

namespace {

constexpr int kLqOrder = 10;

// Sub-intervals of [0,1] on which the linear function (1-t) u0 + t u1 keeps its sign.
int sign_pieces(double u0, double u1, double cuts[3]) {
  cuts[0] = 0.0;
  if ((u0 < 0.0 && u1 > 0.0) || (u0 > 0.0 && u1 < 0.0)) {
    cuts[1] = u0 / (u0 - u1);
    cuts[2] = 1.0;
    return 2;
  }
  cuts[1] = 1.0;
  return 1;
}

// int_0^1 P(tau) v(tau)^r dtau with P = c0 + c1 tau + c2 tau^2 and
// v = va + (vb - va) tau >= 0.  Closed form in v unless v is nearly constant,
// where the integrand is smooth and Gauss is exact to rounding.
double piece_integral(double va, double vb, const double c[3], double r, int order) {
  const double d = vb - va;
  const double vmax = std::max(va, vb);
  if (vmax == 0.0) return 0.0;
  if (std::abs(d) < 0.25 * vmax) {
    const Rule1D& g = gauss_legendre(order);
    double sum = 0.0;
    for (int j = 0; j < g.size(); ++j) {
      const double tau = g.nodes[j];
      sum += g.weights[j] * (c[0] + tau * (c[1] + tau * c[2])) * std::pow(va + d * tau, r);
    }
    return sum;
  }
  // P((v - va)/d) = A0 + A1 v + A2 v^2
  const double A2 = c[2] / (d * d);
  const double A1 = c[1] / d - 2.0 * c[2] * va / (d * d);
  const double A0 = c[0] - c[1] * va / d + c[2] * va * va / (d * d);
  const double A[3] = {A0, A1, A2};
  double sum = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (A[k] == 0.0) continue;
    const double e = r + k + 1.0;
    sum += A[k] * (std::pow(vb, e) - std::pow(va, e)) / e;
  }
  return sum / d;
}

// Coefficients in tau of the linear function f0 + (f1 - f0) t on t = lo + (hi - lo) tau.
void linear_in_tau(double f0, double f1, double lo, double hi, double out[2]) {
  out[0] = f0 + (f1 - f0) * lo;
  out[1] = (f1 - f0) * (hi - lo);
}

// int_0^1 w((1-t)a0 + t a1) |u|^q dt for linear u, with a weight given at the ends.
double element_weighted_power(double u0, double u1, double a0, double a1, double q, int order) {
  double cuts[3];
  const int pieces = sign_pieces(u0, u1, cuts);
  double sum = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double lo = cuts[k], hi = cuts[k + 1];
    const double va = std::abs((1.0 - lo) * u0 + lo * u1), vb = std::abs((1.0 - hi) * u0 + hi * u1);
    double w[2];
    linear_in_tau(a0, a1, lo, hi, w);
    const double c[3] = {w[0], w[1], 0.0};
    sum += (hi - lo) * piece_integral(k == 1 && pieces == 2 ? 0.0 : va, k == 0 && pieces == 2 ? 0.0 : vb, c, q, order);
  }
  return sum;
}

// Derivatives of int_0^1 w |u|^q dt with respect to u0 and u1 (divided by q).
void element_weighted_power_grad(double u0, double u1, double a0, double a1, double q, int order,
                                 double& g0, double& g1) {
  double cuts[3];
  const int pieces = sign_pieces(u0, u1, cuts);
  g0 = g1 = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double lo = cuts[k], hi = cuts[k + 1];
    const double ua = (1.0 - lo) * u0 + lo * u1, ub = (1.0 - hi) * u0 + hi * u1;
    const double sign = (ua + ub) >= 0.0 ? 1.0 : -1.0;
    const double va = k == 1 && pieces == 2 ? 0.0 : std::abs(ua);
    const double vb = k == 0 && pieces == 2 ? 0.0 : std::abs(ub);
    double w[2], s[2], t[2];
    linear_in_tau(a0, a1, lo, hi, w);
    linear_in_tau(1.0, 0.0, lo, hi, s);
    linear_in_tau(0.0, 1.0, lo, hi, t);
    const double c0[3] = {w[0] * s[0], w[0] * s[1] + w[1] * s[0], w[1] * s[1]};
    const double c1[3] = {w[0] * t[0], w[0] * t[1] + w[1] * t[0], w[1] * t[1]};
    g0 += sign * (hi - lo) * piece_integral(va, vb, c0, q - 1.0, order);
    g1 += sign * (hi - lo) * piece_integral(va, vb, c1, q - 1.0, order);
  }
}

double element_lq_power(double u0, double u1, double h, double q) {
  if (q == 2.0) return h * (u0 * u0 + u0 * u1 + u1 * u1) / 3.0;
  if (q == 1.0) {
    if ((u0 >= 0.0 && u1 >= 0.0) || (u0 <= 0.0 && u1 <= 0.0)) return 0.5 * h * std::abs(u0 + u1);
    return 0.5 * h * (u0 * u0 + u1 * u1) / (std::abs(u0) + std::abs(u1));
  }
  return h * element_weighted_power(u0, u1, 1.0, 1.0, q, kLqOrder);
}

}  // namespace

DiscreteFunction::DiscreteFunction(std::shared_ptr<const Mesh> mesh, Eigen::VectorXd values)
    : mesh_(std::move(mesh)), values_(std::move(values)) {
  if (values_.size() != mesh_->node_count())
    throw InputError("discrete function needs one value per mesh node");
}

DiscreteFunction DiscreteFunction::constant(std::shared_ptr<const Mesh> mesh, double value) {
  const int n = mesh->node_count();
  return DiscreteFunction(std::move(mesh), Eigen::VectorXd::Constant(n, value));
}

DiscreteFunction DiscreteFunction::from_function(std::shared_ptr<const Mesh> mesh,
                                                 const std::function<double(double)>& f) {
  Eigen::VectorXd v(mesh->node_count());
  for (int i = 0; i < mesh->node_count(); ++i) v[i] = f(mesh->node(i));
  return DiscreteFunction(std::move(mesh), std::move(v));
}

double DiscreteFunction::operator()(double x) const {
  const int e = mesh_->locate(x);
  if (e < 0) throw InputError("point outside the computational box");
  const double t = (x - mesh_->element_left(e)) / mesh_->element_size(e);
  return (1.0 - t) * values_[e] + t * values_[e + 1];
}

WNorm::WNorm(const QuadratureTable& table, const Coefficient& a) : table_(&table), a_(&a) {
  if (table.mesh_ptr() != a.mesh_ptr()) throw InputError("coefficient and table live on different meshes");
  const Mesh& m = table.mesh();
  const int nn = m.node_count();
  mass_ = Eigen::MatrixXd::Zero(nn, nn);
  const Rule1D& g = gauss_legendre(4);
  for (int k = 0; k < m.interior_element_count(); ++k) {
    const int e = m.first_interior_element() + k;
    const double h = m.element_size(e);
    for (int j = 0; j < g.size(); ++j) {
      const double t = g.nodes[j];
      const double w = h * g.weights[j] * a.at(e, t);
      const double phi[2] = {1.0 - t, t};
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) mass_(e + r, e + c) += w * phi[r] * phi[c];
    }
  }
  diag_ = table.p2_matrix().diagonal() + mass_.diagonal();
  hat_norms_.resize(nn);
  for (int i = 0; i < nn; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(nn);
    e[i] = 1.0;
    hat_norms_[i] = norm(e);
  }
}

double WNorm::seminorm(const Eigen::VectorXd& u) const { return table_->seminorm(u); }

double WNorm::potential(const Eigen::VectorXd& u) const {
  if (u.size() != mesh().node_count()) throw InputError("nodal vector does not match the mesh");
  const double pp = p();
  if (pp == 2.0) return u.dot(mass_ * u);
  const Mesh& m = mesh();
  const int order = std::max(table_->options().order, 4);
  CompensatedSum sum;
  for (int k = 0; k < m.interior_element_count(); ++k) {
    const int e = m.first_interior_element() + k;
    sum.add(m.element_size(e) *
            element_weighted_power(u[e], u[e + 1], a_->at(e, 0.0), a_->at(e, 1.0), pp, order));
  }
  return sum.value();
}

Eigen::VectorXd WNorm::potential_gradient(const Eigen::VectorXd& u) const {
  if (u.size() != mesh().node_count()) throw InputError("nodal vector does not match the mesh");
  const double pp = p();
  if (pp == 2.0) return mass_ * u;
  const Mesh& m = mesh();
  const int order = std::max(table_->options().order, 4);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(u.size());
  for (int k = 0; k < m.interior_element_count(); ++k) {
    const int e = m.first_interior_element() + k;
    double g0, g1;
    element_weighted_power_grad(u[e], u[e + 1], a_->at(e, 0.0), a_->at(e, 1.0), pp, order, g0, g1);
    g[e] += m.element_size(e) * g0;
    g[e + 1] += m.element_size(e) * g1;
  }
  return g;
}

double WNorm::norm(const Eigen::VectorXd& u) const { return std::pow(pth_power(u), 1.0 / p()); }

Eigen::VectorXd WNorm::pth_power_gradient(const Eigen::VectorXd& u) const {
  return table_->seminorm_gradient(u) + potential_gradient(u);
}

Eigen::MatrixXd WNorm::p2_norm_matrix() const { return table_->p2_matrix() + mass_; }

double WNorm::dual_norm(const Eigen::VectorXd& g) const {
  double r = 0.0;
  for (int i = 0; i < g.size(); ++i) r = std::max(r, std::abs(g[i]) / hat_norms_[i]);
  return r;
}

double seminorm_p(const DiscreteFunction& u, const QuadratureTable& table) {
  if (u.mesh_ptr() != table.mesh_ptr()) throw InputError("function and table live on different meshes");
  return table.seminorm(u.values());
}

double norm_W(const DiscreteFunction& u, const Coefficient& a, const QuadratureTable& table) {
  if (u.mesh_ptr() != table.mesh_ptr()) throw InputError("function and table live on different meshes");
  WNorm w(table, a);
  return w.norm(u.values());
}

double lq_norm(const Mesh& mesh, const Eigen::VectorXd& u, double q) {
  if (!(q >= 1.0)) throw InputError("L^q norm requires q >= 1");
  CompensatedSum sum;
  for (int k = 0; k < mesh.interior_element_count(); ++k) {
    const int e = mesh.first_interior_element() + k;
    sum.add(element_lq_power(u[e], u[e + 1], mesh.element_size(e), q));
  }
  return std::pow(sum.value(), 1.0 / q);
}

double lq_norm(const DiscreteFunction& u, double q) { return lq_norm(u.mesh(), u.values(), q); }

Eigen::VectorXd lq_power_gradient(const Mesh& mesh, const Eigen::VectorXd& u, double q) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(u.size());
  for (int k = 0; k < mesh.interior_element_count(); ++k) {
    const int e = mesh.first_interior_element() + k;
    double g0, g1;
    element_weighted_power_grad(u[e], u[e + 1], 1.0, 1.0, q, kLqOrder, g0, g1);
    g[e] += q * mesh.element_size(e) * g0;
    g[e + 1] += q * mesh.element_size(e) * g1;
  }
  return g;
}

double sup_norm(const Mesh& mesh, const Eigen::VectorXd& u) {
  double m = 0.0;
  for (int k = 0; k < mesh.interior_node_count(); ++k)
    m = std::max(m, std::abs(u[mesh.first_interior_node() + k]));
  return m;
}

double sup_norm(const DiscreteFunction& u) { return sup_norm(u.mesh(), u.values()); }

ConstantEstimate estimate_c(const WNorm& norm, const AscentOptions& options) {
  const Mesh& m = norm.mesh();
  const int nn = m.node_count();
  const double pp = norm.p();
  ConstantEstimate best;
  best.converged = true;
  for (int k = 0; k < m.interior_node_count(); ++k) {
    const int i = m.first_interior_node() + k;
    DescentProblem prob;
    prob.value = [&](const Eigen::VectorXd& v) { return norm.pth_power(v) / pp; };
    prob.gradient = [&](const Eigen::VectorXd& v) {
      Eigen::VectorXd g = norm.pth_power_gradient(v);
      g[i] = 0.0;
      return g;
    };
    prob.retract = [i](Eigen::VectorXd& v) { v[i] = 1.0; };
    prob.residual = [&norm](const Eigen::VectorXd& g) { return norm.dual_norm(g); };
    Eigen::VectorXd u = Eigen::VectorXd::Ones(nn);
    const bool converged =
        preconditioned_descent(prob, norm.preconditioner(), u, {options.max_iterations, options.tolerance})
            .converged;
    const double w = norm.norm(u);
    const double value = 1.0 / w;
    best.converged = best.converged && converged;
    if (k == 0 || value > best.value * (1.0 + 1e-12)) {
      best.value = value;
      best.best_start = k;
      best.maximizer = u / w;
    }
  }
  return best;
}

ConstantEstimate estimate_cq(const WNorm& norm, double q, const AscentOptions& options) {
  if (!(q >= 1.0)) throw InputError("c_q requires q >= 1");
  if (options.starts < 1) throw InputError("c_q estimation needs at least one start");
  const Mesh& m = norm.mesh();
  const int nn = m.node_count();
  const double pp = norm.p();

  // Ascent of R = ||u||_q / ||u|| as descent of -R on the unit sphere.
  DescentProblem prob;
  prob.value = [&](const Eigen::VectorXd& u) { return -lq_norm(m, u, q) / norm.norm(u); };
  prob.gradient = [&](const Eigen::VectorXd& u) {
    const double lq = lq_norm(m, u, q);
    const double w = norm.norm(u);
    const Eigen::VectorXd glq = lq_power_gradient(m, u, q) * (std::pow(lq, 1.0 - q) / q);
    const Eigen::VectorXd gw = norm.pth_power_gradient(u) * std::pow(w, 1.0 - pp);
    return Eigen::VectorXd(-(lq / w) * (glq / lq - gw / w));
  };
  prob.retract = [&](Eigen::VectorXd& u) { u /= norm.norm(u); };
  prob.residual = [&norm](const Eigen::VectorXd& g) { return norm.dual_norm(g); };

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ConstantEstimate best;
  for (int start = 0; start < options.starts; ++start) {
    Eigen::VectorXd u(nn);
    if (start == 0) u.setOnes();
    else if (start % 2 == 1) for (int i = 0; i < nn; ++i) u[i] = 1.0 + 0.5 * normal(rng);
    else for (int i = 0; i < nn; ++i) u[i] = normal(rng);
    if (lq_norm(m, u, q) == 0.0) u.setOnes();
    const bool converged =
        preconditioned_descent(prob, norm.preconditioner(), u, {options.max_iterations, options.tolerance})
            .converged;
    const double r = -prob.value(u);
    if (start == 0 || r > best.value * (1.0 + 1e-12)) {
      best.value = r;
      best.best_start = start;
      best.converged = converged;
      best.maximizer = u;
    }
  }
  return best;
}

}  // namespace fracneumann
