#pragma once

#include <Eigen/Dense>

#include "fracneumann/model.hpp"
#include "fracneumann/space.hpp"

namespace fracneumann {

struct EnergyBreakdown {
  double T = 0.0;
  double S = 0.0;
  double lambda = 0.0;
  double J = 0.0;          ///< T - lambda S
  double seminorm = 0.0;   ///< 1/2 int_{T(Omega)} |u(x)-u(y)|^p K
  double potential = 0.0;  ///< int_Omega a |u|^p
};

/// T(u) = ||u||^p / p.
double T_energy(const WNorm& norm, const Eigen::VectorXd& u);

/// S(u) = int_Omega H(x, u(x)) dx, Gauss rule with `order` points per
/// interior element.
double S_energy(const Mesh& mesh, const Nonlinearity& nl, const Eigen::VectorXd& u, int order = 6);

/// T'(u)(phi_i) for every node i.  Requires p >= 1.1.
Eigen::VectorXd gradient_T(const WNorm& norm, const Eigen::VectorXd& u);

/// S'(u)(phi_i) = int_Omega h(x, u) phi_i, with the same rule as S_energy.
Eigen::VectorXd gradient_S(const Mesh& mesh, const Nonlinearity& nl, const Eigen::VectorXd& u,
                           int order = 6);

/// J_lambda = T - lambda S on a fixed table, coefficient and nonlinearity.
class EnergyFunctional {
 public:
  EnergyFunctional(const WNorm& norm, const Nonlinearity& nl, double lambda, int order = 6);

  const WNorm& norm() const { return *norm_; }
  const Nonlinearity& nonlinearity() const { return *nl_; }
  const Mesh& mesh() const { return norm_->mesh(); }
  double lambda() const { return lambda_; }
  int order() const { return order_; }

  double T(const Eigen::VectorXd& u) const { return T_energy(*norm_, u); }
  double S(const Eigen::VectorXd& u) const { return S_energy(mesh(), *nl_, u, order_); }
  double J(const Eigen::VectorXd& u) const { return T(u) - lambda_ * S(u); }
  Eigen::VectorXd gradient_J(const Eigen::VectorXd& u) const;
  EnergyBreakdown breakdown(const Eigen::VectorXd& u) const;
  /// Dual norm of T'(u) - lambda S'(u).
  double residual(const Eigen::VectorXd& u) const;

 private:
  const WNorm* norm_;
  const Nonlinearity* nl_;
  double lambda_;
  int order_;
};

/// max_i |T'(u)(phi_i) - lambda S'(u)(phi_i)| / ||phi_i||.
double weak_residual(const WNorm& norm, const Nonlinearity& nl, double lambda,
                     const Eigen::VectorXd& u, int order = 6);

/// Principal value int |u(x)-u(y)|^{p-2}(u(x)-u(y)) |x-y|^{-(N+sp)} dy over
/// the computational box at the interior node `node`.  The two sides are
/// paired at equal distances; shells are split at node distances and use
/// `order` Gauss points.  Near r = 0 the paired integrand is c r^{p-2-sp}
/// and is integrated exactly; it diverges (returns +-inf) when p - 1 <= sp
/// and u has a kink at the node.
double frac_p_laplacian_at(const DiscreteFunction& u, int node, const FracParams& params,
                           int order = 8);

/// N_{s,p} u(x) = int_Omega |u(x)-u(y)|^{p-2}(u(x)-u(y)) |x-y|^{-(N+sp)} dy
/// for x in the box outside the closure of Omega.
double neumann_derivative_at(const DiscreteFunction& u, double x, const FracParams& params,
                             int order = 8);

struct MonotonicityGap {
  double gap = 0.0;    ///< (T'(u) - T'(v))(u - v)
  double ratio = 0.0;  ///< gap / ||u - v||^p (0 when u = v)
};

MonotonicityGap monotonicity_gap(const WNorm& norm, const Eigen::VectorXd& u,
                                 const Eigen::VectorXd& v);

}  // namespace fracneumann
