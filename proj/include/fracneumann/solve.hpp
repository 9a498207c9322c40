#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fracneumann/energy.hpp"
#include "fracneumann/kernel.hpp"
#include "fracneumann/model.hpp"

namespace fracneumann {

struct SolveConfig {
  double lambda = 0.0;
  double tolerance = 1e-6;
  int max_iterations = 20000;
  int starts = 12;
  double shift = 1.0;
  double power = 0.0;  ///< <= 0 means p
  double distinct = 1e-3;
  int k_target = 3;
  std::uint64_t seed = 0;
  /// Levels used to build the starts: u_delta = delta, and norms epsilon,
  /// (epsilon + T(u_delta))/2, 2 T(u_delta).
  double delta = 1.0;
  double epsilon = 0.5;
  int newton_iterations = 60;
  int minres_iterations = 400;

  void validate() const;
};

/// Mesh, table, coefficient and nonlinearity of one discrete problem.
class Instance {
 public:
  Instance(std::shared_ptr<const Mesh> mesh, const FracParams& params, const QuadratureOptions& quad,
           Coefficient a, Nonlinearity nl);
  Instance(const Instance&) = delete;
  Instance& operator=(const Instance&) = delete;

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  const FracParams& params() const { return params_; }
  const QuadratureOptions& quadrature() const { return quad_; }
  const QuadratureTable& table() const { return *table_; }
  const Coefficient& coefficient() const { return a_; }
  const Nonlinearity& nonlinearity() const { return nl_; }
  const WNorm& norm() const { return *norm_; }
  /// Gauss points per element used for S.
  int s_order() const { return quad_.order; }
  /// Norm on a second table at doubled Gauss order, built on first use.
  const WNorm& fresh_norm() const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  FracParams params_;
  QuadratureOptions quad_;
  Coefficient a_;
  Nonlinearity nl_;
  std::unique_ptr<QuadratureTable> table_;
  std::unique_ptr<WNorm> norm_;
  mutable std::unique_ptr<QuadratureTable> fresh_table_;
  mutable std::unique_ptr<WNorm> fresh_norm_;
};

struct DescentRecord {
  Eigen::VectorXd u;
  bool converged = false;
  bool monotone = true;
  int iterations = 0;
  double residual = 0.0;
  double J = 0.0;
};

/// Preconditioned gradient descent on J_lambda with Armijo backtracking,
/// stopping at weak_residual <= tol or after max_iterations.
DescentRecord descend(const Instance& inst, double lambda, const Eigen::VectorXd& u0, double tol,
                      int max_iterations);

struct Verification {
  double residual = 0.0;        ///< on the instance's own table
  double fresh_residual = 0.0;  ///< fresh table at doubled Gauss order
  EnergyBreakdown energy;
  double neumann_max = 0.0;     ///< max over exterior nodes of |N_{s,p} u|
};

Verification verify_point(const Instance& inst, double lambda, const Eigen::VectorXd& u);

struct CriticalPoint {
  Eigen::VectorXd u;
  int start = 0;
  std::string method;  ///< "descent" or "deflated-newton"
  int iterations = 0;
  Verification check;
};

struct StartRecord {
  int index = 0;
  std::string kind;
  double initial_norm = 0.0;
  std::string method;
  std::string outcome;  ///< accepted, duplicate, not-converged, fresh-residual
  int iterations = 0;
  double residual = 0.0;
  bool monotone = true;
};

struct SolveReport {
  double lambda = 0.0;
  int k_target = 0;
  std::vector<CriticalPoint> points;
  std::vector<std::vector<double>> distances;  ///< pairwise sup-distances on interior nodes
  std::vector<StartRecord> starts;
  bool shortfall = false;
  double wall_seconds = 0.0;
};

/// Initial points: 0, +-u_delta, then random vectors scaled to the three
/// norm levels in turn.
std::vector<std::pair<std::string, Eigen::VectorXd>> make_starts(const Instance& inst,
                                                                 const SolveConfig& config);

/// Multistart search with deflation.  The first start runs plain descent;
/// later starts run deflated Newton on the residual, falling back to plain
/// descent.  A point is accepted when its original residual is <= tol, its
/// fresh-table residual is <= 10 tol and it lies at sup-distance >= distinct
/// from every accepted point.
SolveReport deflate_and_search(const Instance& inst, const SolveConfig& config);

}  // namespace fracneumann
