#include "fracneumann/descent.hpp"

#include <algorithm>
#include <cmath>

namespace fracneumann {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kBand = 1e-12;

bool in_band(double trial, double current) { return std::abs(trial - current) <= kBand * std::abs(current); }

double bb_step(const Eigen::VectorXd& s, const Eigen::VectorXd& y, const Eigen::VectorXd& diag,
               double fallback) {
  const double sy = s.dot(y);
  const double sds = s.dot(diag.cwiseProduct(s));
  if (sy > 0.0 && sds > 0.0) return std::clamp(sds / sy, 1e-12, 1e12);
  return fallback;
}

}  // namespace

DescentOutcome preconditioned_descent(const DescentProblem& prob, const Eigen::VectorXd& diag,
                                      Eigen::VectorXd& u, const DescentOptions& options) {
  auto retract = [&](Eigen::VectorXd& v) {
    if (prob.retract) prob.retract(v);
  };
  DescentOutcome out;
  retract(u);
  double f = prob.value(u);
  Eigen::VectorXd g = prob.gradient(u);
  double res = prob.residual(g);
  double step = 1.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    if (res <= options.tolerance) break;
    const Eigen::VectorXd d = -g.cwiseQuotient(diag);
    const double slope = g.dot(d);
    double alpha = step;
    Eigen::VectorXd trial;
    double ft = f;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      trial = u + alpha * d;
      retract(trial);
      ft = prob.value(trial);
      if (ft <= f + kArmijo * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    // Decreases inside the rounding band of f carry no information.
    if (accepted && in_band(ft, f)) accepted = false;
    Eigen::VectorXd gt;
    if (accepted) {
      gt = prob.gradient(trial);
    } else {
      trial = u + step * d;
      retract(trial);
      gt = prob.gradient(trial);
      const double den = slope - gt.dot(d);
      if (!(den < 0.0)) break;
      alpha = step * slope / den;
      trial = u + alpha * d;
      retract(trial);
      ft = prob.value(trial);
      if (!(ft <= f + kBand * std::abs(f))) break;
      gt = prob.gradient(trial);
    }
    if (ft > f) out.monotone = out.monotone && in_band(ft, f);
    step = bb_step(trial - u, gt - g, diag, alpha);
    u = std::move(trial);
    g = std::move(gt);
    f = ft;
    res = prob.residual(g);
    out.iterations = it + 1;
  }
  out.value = f;
  out.residual = res;
  out.converged = res <= options.tolerance;
  return out;
}

}  // namespace fracneumann
