#pragma once

#include <Eigen/Dense>
#include <functional>

namespace fracneumann {

struct DescentProblem {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  /// Maps a trial point back onto the feasible set; identity when empty.
  std::function<void(Eigen::VectorXd&)> retract;
  /// Stopping measure of a gradient (a dual norm).
  std::function<double(const Eigen::VectorXd&)> residual;
};

struct DescentOptions {
  int max_iterations = 5000;
  double tolerance = 1e-9;
};

struct DescentOutcome {
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  double value = 0.0;
  /// Accepted values never increased beyond the rounding band of the objective.
  bool monotone = true;
};

/// Gradient descent preconditioned by diag, with a Barzilai-Borwein initial
/// step and Armijo backtracking.  When decreases drop below the rounding
/// level of the objective (1e-12 relative), a secant step on the directional
/// derivative is taken instead, accepted while the value stays in that band.
DescentOutcome preconditioned_descent(const DescentProblem& problem, const Eigen::VectorXd& diag,
                                      Eigen::VectorXd& u, const DescentOptions& options);

}  // namespace fracneumann
