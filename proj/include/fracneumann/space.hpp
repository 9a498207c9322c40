#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "fracneumann/kernel.hpp"
#include "fracneumann/mesh.hpp"
#include "fracneumann/model.hpp"

namespace fracneumann {

/// Nodal values of a piecewise-linear function on all mesh nodes
/// (interior and exterior).
class DiscreteFunction {
 public:
  DiscreteFunction(std::shared_ptr<const Mesh> mesh, Eigen::VectorXd values);
  static DiscreteFunction constant(std::shared_ptr<const Mesh> mesh, double value);
  static DiscreteFunction from_function(std::shared_ptr<const Mesh> mesh,
                                        const std::function<double(double)>& f);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }
  /// Linear interpolation; x must lie in the computational box.
  double operator()(double x) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  Eigen::VectorXd values_;
};

/// The W^{s,p}_Omega norm
///   ||u||^p = int_Omega a |u|^p + 1/2 int_{T(Omega)} |u(x)-u(y)|^p K
/// on a fixed table and coefficient.  Works on raw nodal vectors.
class WNorm {
 public:
  WNorm(const QuadratureTable& table, const Coefficient& a);

  const QuadratureTable& table() const { return *table_; }
  const Coefficient& coefficient() const { return *a_; }
  const Mesh& mesh() const { return table_->mesh(); }
  double p() const { return table_->params().p; }

  double seminorm(const Eigen::VectorXd& u) const;
  double potential(const Eigen::VectorXd& u) const;
  /// ||u||^p.
  double pth_power(const Eigen::VectorXd& u) const { return seminorm(u) + potential(u); }
  double norm(const Eigen::VectorXd& u) const;

  /// Gradient of ||u||^p / p, i.e. T'(u) tested against every hat function.
  Eigen::VectorXd pth_power_gradient(const Eigen::VectorXd& u) const;
  Eigen::VectorXd potential_gradient(const Eigen::VectorXd& u) const;

  /// ||phi_i|| for every hat function.
  const Eigen::VectorXd& hat_norms() const { return hat_norms_; }
  /// Diagonal of the p = 2 norm matrix (seminorm matrix plus a-weighted mass).
  const Eigen::VectorXd& preconditioner() const { return diag_; }
  /// Dense p = 2 norm matrix: seminorm matrix plus a-weighted mass matrix.
  Eigen::MatrixXd p2_norm_matrix() const;

  /// max_i |g_i| / ||phi_i||: dual norm of a functional over the hat basis.
  double dual_norm(const Eigen::VectorXd& g) const;

 private:
  const QuadratureTable* table_;
  const Coefficient* a_;
  Eigen::MatrixXd mass_;  // a-weighted mass matrix (used by the p = 2 path)
  Eigen::VectorXd hat_norms_;
  Eigen::VectorXd diag_;
};

double seminorm_p(const DiscreteFunction& u, const QuadratureTable& table);
double norm_W(const DiscreteFunction& u, const Coefficient& a, const QuadratureTable& table);

/// ||u||_{L^q(Omega)} over interior elements only.
double lq_norm(const DiscreteFunction& u, double q);
double lq_norm(const Mesh& mesh, const Eigen::VectorXd& u, double q);
/// Gradient of ||u||_q^q with respect to the nodal values.
Eigen::VectorXd lq_power_gradient(const Mesh& mesh, const Eigen::VectorXd& u, double q);
/// max over interior nodes of |u|.
double sup_norm(const DiscreteFunction& u);
double sup_norm(const Mesh& mesh, const Eigen::VectorXd& u);

struct AscentOptions {
  int starts = 50;
  int max_iterations = 5000;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
};

struct ConstantEstimate {
  double value = 0.0;
  bool converged = false;
  int best_start = 0;
  Eigen::VectorXd maximizer;
};

/// Numerical lower bounds of the embedding constants on a given mesh.
struct EmbeddingConstants {
  std::optional<double> c;             ///< sup-norm constant (Case I)
  bool c_converged = true;
  std::map<double, double> cq;         ///< q -> c_q
  std::map<double, bool> cq_converged;
  int mesh_n = 0;
  double r_ext = 0.0;
};

/// c = sup ||u||_inf / ||u|| (Case I).  For each interior node i, minimizes
/// ||u|| subject to u_i = 1 by projected gradient descent (the constraint is
/// re-imposed after every step); c = max_i 1 / min ||u||.  Start u = 1.
ConstantEstimate estimate_c(const WNorm& norm, const AscentOptions& options = {});

/// c_q = sup ||u||_{L^q} / ||u||, by multistart gradient ascent of the
/// scale-invariant ratio with Armijo backtracking.
ConstantEstimate estimate_cq(const WNorm& norm, double q, const AscentOptions& options);

}  // namespace fracneumann
