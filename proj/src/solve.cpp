#include "fracneumann/solve.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "fracneumann/descent.hpp"

namespace fracneumann {

void SolveConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InputError("solve.lambda must be nonnegative");
  if (!(tolerance > 0.0)) throw InputError("solve.tol must be positive");
  if (max_iterations < 1) throw InputError("solve.max_iter must be positive");
  if (starts < 1) throw InputError("solve.starts must be positive");
  if (!(shift > 0.0)) throw InputError("solve.shift must be positive");
  if (!(distinct > 0.0)) throw InputError("solve.distinct must be positive");
  if (k_target < 1) throw InputError("solve.k_target must be at least 1");
  if (!(delta > 0.0) || !(epsilon > 0.0)) throw InputError("solve.delta and solve.epsilon must be positive");
  if (newton_iterations < 1 || minres_iterations < 1) throw InputError("Newton iteration caps must be positive");
}

Instance::Instance(std::shared_ptr<const Mesh> mesh, const FracParams& params, const QuadratureOptions& quad,
                   Coefficient a, Nonlinearity nl)
    : mesh_(std::move(mesh)), params_(params), quad_(quad), a_(std::move(a)), nl_(std::move(nl)) {
  if (a_.mesh_ptr() != mesh_) throw InputError("coefficient lives on a different mesh");
  table_ = std::make_unique<QuadratureTable>(QuadratureTable::assemble(mesh_, params_, quad_));
  norm_ = std::make_unique<WNorm>(*table_, a_);
}

const WNorm& Instance::fresh_norm() const {
  if (!fresh_norm_) {
    QuadratureOptions q = quad_;
    q.order *= 2;
    fresh_table_ = std::make_unique<QuadratureTable>(QuadratureTable::assemble(mesh_, params_, q));
    fresh_norm_ = std::make_unique<WNorm>(*fresh_table_, a_);
  }
  return *fresh_norm_;
}

DescentRecord descend(const Instance& inst, double lambda, const Eigen::VectorXd& u0, double tol,
                      int max_iterations) {
  const EnergyFunctional J(inst.norm(), inst.nonlinearity(), lambda, inst.s_order());
  DescentProblem prob;
  prob.value = [&J](const Eigen::VectorXd& u) { return J.J(u); };
  prob.gradient = [&J](const Eigen::VectorXd& u) { return J.gradient_J(u); };
  prob.residual = [&inst](const Eigen::VectorXd& g) { return inst.norm().dual_norm(g); };
  DescentRecord rec;
  rec.u = u0;
  const DescentOutcome out = preconditioned_descent(prob, inst.norm().preconditioner(), rec.u, {max_iterations, tol});
  rec.iterations = out.iterations;
  rec.monotone = out.monotone;
  // Re-verified independently of the descent's own bookkeeping.
  rec.residual = J.residual(rec.u);
  rec.converged = rec.residual <= tol;
  rec.J = J.J(rec.u);
  return rec;
}

Verification verify_point(const Instance& inst, double lambda, const Eigen::VectorXd& u) {
  Verification v;
  const EnergyFunctional J(inst.norm(), inst.nonlinearity(), lambda, inst.s_order());
  v.residual = J.residual(u);
  v.energy = J.breakdown(u);
  const EnergyFunctional fresh(inst.fresh_norm(), inst.nonlinearity(), lambda, 2 * inst.s_order());
  v.fresh_residual = fresh.residual(u);
  const Mesh& m = inst.mesh();
  const DiscreteFunction f(inst.mesh_ptr(), u);
  for (int i = 0; i < m.node_count(); ++i) {
    if (m.is_interior_node(i)) continue;
    v.neumann_max = std::max(v.neumann_max, std::abs(neumann_derivative_at(f, m.node(i), inst.params())));
  }
  return v;
}

namespace {

// Preconditioned MINRES for a symmetric (possibly indefinite) operator.
Eigen::VectorXd minres(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& op,
                       const Eigen::VectorXd& b, const Eigen::VectorXd& diag, double rtol, int max_iter) {
  const int n = static_cast<int>(b.size());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r1 = b;
  Eigen::VectorXd y = r1.cwiseQuotient(diag);
  double beta1 = r1.dot(y);
  if (!(beta1 > 0.0)) return x;
  beta1 = std::sqrt(beta1);
  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
  double cs = -1.0, sn = 0.0;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n), w2 = Eigen::VectorXd::Zero(n), r2 = r1;
  for (int it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd v = y / beta;
    y = op(v);
    if (it > 0) y -= (beta / oldb) * r1;
    const double alfa = v.dot(y);
    y -= (alfa / beta) * r2;
    r1 = r2;
    r2 = y;
    y = r2.cwiseQuotient(diag);
    oldb = beta;
    beta = std::sqrt(std::max(r2.dot(y), 0.0));
    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    const double gamma = std::max(std::hypot(gbar, beta), std::numeric_limits<double>::min());
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;
    const Eigen::VectorXd w1 = w2;
    w2 = w;
    w = (v - oldeps * w1 - delta * w2) / gamma;
    x += phi * w;
    if (phibar <= rtol * beta1 || beta == 0.0) break;
  }
  return x;
}

// Multiplicative deflation M(u) = prod_w (1 + shift / ||u - w||^power).
struct Deflation {
  const WNorm* norm;
  const std::vector<CriticalPoint>* found;
  double shift;
  double power;

  double log_factor(const Eigen::VectorXd& u) const {
    double s = 0.0;
    for (const CriticalPoint& w : *found) s += std::log1p(shift * std::pow(norm->norm(u - w.u), -power));
    return s;
  }

  Eigen::VectorXd log_gradient(const Eigen::VectorXd& u) const {
    const double p = norm->p();
    Eigen::VectorXd g = Eigen::VectorXd::Zero(u.size());
    for (const CriticalPoint& w : *found) {
      const Eigen::VectorXd diff = u - w.u;
      const double d = norm->norm(diff);
      const double dp = std::pow(d, -power);
      // d/du ||v|| = ||v||^{1-p} T'(v).
      const Eigen::VectorXd grad_d = norm->pth_power_gradient(diff) * std::pow(d, 1.0 - p);
      g += (-power * shift * dp / d / (1.0 + shift * dp)) * grad_d;
    }
    return g;
  }
};

// Deflated Newton iteration on the Euler-Lagrange residual, globalized by
// backtracking on the merit 1/2 M(u)^2 sum_i g_i^2 / D_i.
DescentRecord deflated_newton(const Instance& inst, double lambda, const Eigen::VectorXd& u0,
                              const std::vector<CriticalPoint>& found, const SolveConfig& cfg) {
  const EnergyFunctional J(inst.norm(), inst.nonlinearity(), lambda, inst.s_order());
  const WNorm& norm = inst.norm();
  const Eigen::VectorXd& diag = norm.preconditioner();
  const Deflation defl{&norm, &found, cfg.shift, cfg.power > 0.0 ? cfg.power : norm.p()};
  auto merit = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& g) {
    return std::exp(2.0 * defl.log_factor(u)) * 0.5 * g.dot(g.cwiseQuotient(diag));
  };

  DescentRecord rec;
  rec.u = u0;
  Eigen::VectorXd g = J.gradient_J(rec.u);
  double res = norm.dual_norm(g);
  for (int it = 0; it < cfg.newton_iterations && res > cfg.tolerance; ++it) {
    const Eigen::VectorXd u = rec.u;
    const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
    auto hess = [&](const Eigen::VectorXd& v) {
      const double vn = v.cwiseAbs().maxCoeff();
      if (vn == 0.0) return Eigen::VectorXd(Eigen::VectorXd::Zero(v.size()));
      const double h = 1e-6 * scale / vn;
      return Eigen::VectorXd((J.gradient_J(u + h * v) - J.gradient_J(u - h * v)) / (2.0 * h));
    };
    const Eigen::VectorXd step = minres(hess, -g, diag, 1e-10, cfg.minres_iterations);
    double factor = 1.0;
    if (!found.empty()) {
      const double beta = defl.log_gradient(u).dot(step);
      if (!(std::abs(1.0 - beta) > 1e-12)) break;
      factor = 1.0 / (1.0 - beta);
    }
    const Eigen::VectorXd x = factor * step;
    const double m0 = merit(u, g);
    bool accepted = false;
    double alpha = 1.0;
    for (int bt = 0; bt < 40; ++bt) {
      const Eigen::VectorXd trial = u + alpha * x;
      const Eigen::VectorXd gt = J.gradient_J(trial);
      if (merit(trial, gt) <= (1.0 - 1e-4 * alpha) * m0) {
        rec.u = trial;
        g = gt;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    res = norm.dual_norm(g);
    rec.iterations = it + 1;
  }
  rec.residual = J.residual(rec.u);
  rec.converged = rec.residual <= cfg.tolerance;
  rec.J = J.J(rec.u);
  return rec;
}

double sup_distance(const Mesh& m, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  return sup_norm(m, u - v);
}

}  // namespace

std::vector<std::pair<std::string, Eigen::VectorXd>> make_starts(const Instance& inst,
                                                                 const SolveConfig& cfg) {
  const Mesh& m = inst.mesh();
  const int nn = m.node_count();
  const double p = inst.params().p;
  const double t_delta = std::pow(cfg.delta, p) * inst.coefficient().l1_norm() / p;
  const double levels[3] = {cfg.epsilon, 0.5 * (cfg.epsilon + t_delta), 2.0 * t_delta};
  const Interval dom = m.domain();

  std::vector<std::pair<std::string, Eigen::VectorXd>> starts;
  starts.emplace_back("zero", Eigen::VectorXd::Zero(nn));
  starts.emplace_back("+u_delta", Eigen::VectorXd::Constant(nn, cfg.delta));
  starts.emplace_back("-u_delta", Eigen::VectorXd::Constant(nn, -cfg.delta));
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; static_cast<int>(starts.size()) < cfg.starts; ++k) {
    // Random smooth profile on Omega, extended by constants outside.
    double coeff[5];
    for (double& c : coeff) c = normal(rng);
    Eigen::VectorXd u(nn);
    for (int i = 0; i < nn; ++i) {
      const double x = std::clamp(m.node(i), dom.lo, dom.hi);
      double v = coeff[0];
      for (int j = 1; j < 5; ++j) v += coeff[j] * std::cos(j * std::numbers::pi * (x - dom.lo) / dom.length()) / j;
      u[i] = v;
    }
    const double n = inst.norm().norm(u);
    if (n > 0.0) u *= levels[k % 3] / n;
    starts.emplace_back("random-level" + std::to_string(k % 3), std::move(u));
  }
  starts.resize(cfg.starts);
  return starts;
}

SolveReport deflate_and_search(const Instance& inst, const SolveConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport report;
  report.lambda = cfg.lambda;
  report.k_target = cfg.k_target;
  const Mesh& m = inst.mesh();
  const auto starts = make_starts(inst, cfg);

  for (int s = 0; s < static_cast<int>(starts.size()); ++s) {
    if (static_cast<int>(report.points.size()) >= cfg.k_target) break;
    StartRecord sr;
    sr.index = s;
    sr.kind = starts[s].first;
    sr.initial_norm = inst.norm().norm(starts[s].second);

    DescentRecord rec;
    if (report.points.empty()) {
      rec = descend(inst, cfg.lambda, starts[s].second, cfg.tolerance, cfg.max_iterations);
      sr.method = "descent";
    } else {
      rec = deflated_newton(inst, cfg.lambda, starts[s].second, report.points, cfg);
      sr.method = "deflated-newton";
      if (!rec.converged) {
        rec = descend(inst, cfg.lambda, starts[s].second, cfg.tolerance, cfg.max_iterations);
        sr.method = "descent";
      }
    }
    if (rec.converged) {
      // Newton polish without deflation; kept only if the residual drops.
      SolveConfig polish = cfg;
      polish.tolerance = 1e-3 * cfg.tolerance;
      polish.newton_iterations = 8;
      static const std::vector<CriticalPoint> none;
      DescentRecord fine = deflated_newton(inst, cfg.lambda, rec.u, none, polish);
      if (fine.residual < rec.residual && sup_distance(m, fine.u, rec.u) < cfg.distinct) {
        fine.iterations += rec.iterations;
        fine.monotone = rec.monotone;
        fine.converged = true;
        rec = std::move(fine);
      }
    }
    sr.iterations = rec.iterations;
    sr.residual = rec.residual;
    sr.monotone = rec.monotone;
    if (!rec.converged) {
      sr.outcome = "not-converged";
      report.starts.push_back(sr);
      continue;
    }
    bool duplicate = false;
    for (const CriticalPoint& w : report.points)
      if (sup_distance(m, rec.u, w.u) < cfg.distinct) duplicate = true;
    if (duplicate) {
      sr.outcome = "duplicate";
      report.starts.push_back(sr);
      continue;
    }
    CriticalPoint cp;
    cp.u = rec.u;
    cp.start = s;
    cp.method = sr.method;
    cp.iterations = rec.iterations;
    cp.check = verify_point(inst, cfg.lambda, rec.u);
    if (!(cp.check.residual <= cfg.tolerance) || !(cp.check.fresh_residual <= 10.0 * cfg.tolerance)) {
      sr.outcome = "fresh-residual";
      report.starts.push_back(sr);
      continue;
    }
    sr.outcome = "accepted";
    report.starts.push_back(sr);
    report.points.push_back(std::move(cp));
  }

  const int k = static_cast<int>(report.points.size());
  report.distances.assign(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) report.distances[i][j] = sup_distance(m, report.points[i].u, report.points[j].u);
  report.shortfall = k < cfg.k_target;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace fracneumann
