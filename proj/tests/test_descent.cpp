#include <doctest.h>

#include <cmath>

#include "fracneumann/descent.hpp"

using namespace fracneumann;

TEST_CASE("descent minimizes an ill-conditioned quadratic") {
  const int n = 20;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = 2.0 * (1 + i * i);
    if (i > 0) A(i, i - 1) = A(i - 1, i) = -0.5;
  }
  const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(n, -1.0, 2.0);
  DescentProblem prob;
  prob.value = [&](const Eigen::VectorXd& u) { return 0.5 * u.dot(A * u) - b.dot(u); };
  prob.gradient = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd { return A * u - b; };
  prob.residual = [](const Eigen::VectorXd& g) { return g.cwiseAbs().maxCoeff(); };
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  const DescentOutcome out = preconditioned_descent(prob, A.diagonal(), u, {2000, 1e-11});
  CHECK(out.converged);
  CHECK(out.monotone);
  CHECK((u - A.ldlt().solve(b)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("descent with a retraction stays feasible") {
  // minimize sum (u_i - 3)^2 on the unit sphere: the answer is the normalized ones vector
  const int n = 5;
  DescentProblem prob;
  prob.value = [](const Eigen::VectorXd& u) { return (u.array() - 3.0).square().sum(); };
  prob.gradient = [](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    Eigen::VectorXd g = 2.0 * (u.array() - 3.0).matrix();
    return g - g.dot(u) * u;
  };
  prob.retract = [](Eigen::VectorXd& u) { u.normalize(); };
  prob.residual = [](const Eigen::VectorXd& g) { return g.norm(); };
  Eigen::VectorXd u = Eigen::VectorXd::Unit(n, 0);
  u[1] = 0.3;
  u.normalize();
  const DescentOutcome out = preconditioned_descent(prob, Eigen::VectorXd::Ones(n), u, {5000, 1e-10});
  CHECK(out.converged);
  CHECK(std::abs(u.norm() - 1.0) < 1e-14);
  CHECK((u - Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(5.0))).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("descent reports non-convergence within the iteration budget") {
  DescentProblem prob;
  prob.value = [](const Eigen::VectorXd& u) { return std::pow(u[0], 4) + 1e3 * u[1] * u[1]; };
  prob.gradient = [](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    return Eigen::Vector2d(4 * std::pow(u[0], 3), 2e3 * u[1]);
  };
  prob.residual = [](const Eigen::VectorXd& g) { return g.cwiseAbs().maxCoeff(); };
  Eigen::VectorXd u = Eigen::Vector2d(1.0, 1.0);
  const DescentOutcome out = preconditioned_descent(prob, Eigen::Vector2d(1.0, 1.0), u, {2, 1e-14});
  CHECK(!out.converged);
  CHECK(out.iterations == 2);
  CHECK(out.value < 1001.0);
}
