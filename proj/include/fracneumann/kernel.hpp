#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "fracneumann/mesh.hpp"
#include "fracneumann/params.hpp"

namespace fracneumann {

struct QuadratureOptions {
  int order = 6;  ///< Gauss points per direction and per cell.
  int depth = 8;  ///< dyadic levels toward the singularity of near pairs.
  double admissibility = 2.0;  ///< separated pairs need dist >= admissibility * size.
};

/// Sample of the double integral over an element pair.  The contribution of a
/// symmetric integrand F(x, y) is weight * kernel * F(x, y); the weight already
/// includes the multiplicity of the unordered pair (both orderings, or both
/// triangles of an identical pair).
struct QuadPoint {
  int x_node;      ///< left node of the element containing x
  int y_node;      ///< left node of the element containing y
  double x_local;  ///< barycentric coordinate of x in its element
  double y_local;
  double x;
  double y;
  double weight;
  double kernel;  ///< |x - y|^{-(N+sp)}
  double wk;      ///< weight * kernel
  /// u(x) - u(y) = sum_k coef[k] * u[node[k]] for piecewise-linear u.  The
  /// coefficients are formed from the rule coordinates, so they keep full
  /// relative accuracy near the diagonal and sum to zero.
  std::array<int, 4> node;
  std::array<double, 4> coef;

  template <class Vec>
  double difference(const Vec& u) const {
    return coef[0] * u[node[0]] + coef[1] * u[node[1]] + coef[2] * u[node[2]] + coef[3] * u[node[3]];
  }
};

struct PairRecord {
  int elem_a;
  int elem_b;
  bool near;  ///< identical or touching elements (graded rule)
  int levels;  ///< dyadic subdivision levels used (0 for separated pairs)
  int first_point;
  int point_count;
};

/// Quadrature for the singular kernel over the element pairs of T(Omega).
///
/// Unordered element pairs with at least one interior element are stored once
/// (a <= b), in lexicographic order.  Identical and touching pairs use
/// Duffy-type maps with power substitutions that absorb the radial
/// singularity; for piecewise-linear functions these rules integrate the
/// near-diagonal part of the Gagliardo integrand exactly.  Separated pairs use
/// tensor Gauss rules after bisection until admissible.
class QuadratureTable {
 public:
  static QuadratureTable assemble(std::shared_ptr<const Mesh> mesh, const FracParams& params,
                                  const QuadratureOptions& options = {});

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  const FracParams& params() const { return params_; }
  const QuadratureOptions& options() const { return options_; }
  const std::vector<PairRecord>& pairs() const { return pairs_; }
  const std::vector<QuadPoint>& points() const { return points_; }

  /// 1/2 * int_{T(Omega)} |u(x)-u(y)|^p |x-y|^{-(N+sp)}, fixed summation order.
  double seminorm(const Eigen::VectorXd& u) const;

  /// Entry i: 1/2 * int |du|^{p-2} du (phi_i(x) - phi_i(y)) K, du = u(x) - u(y).
  Eigen::VectorXd seminorm_gradient(const Eigen::VectorXd& u) const;

  /// 1/2 * int (u(x)-u(y)) (v(x)-v(y)) K, the p = 2 bilinear form.
  double bilinear(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

  /// Dense matrix of `bilinear` over hat functions, so that the p = 2
  /// seminorm equals u^T A u.  Assembled for every p (its diagonal is the
  /// descent preconditioner).
  const Eigen::MatrixXd& p2_matrix() const { return matrix_; }

  /// True when p == 2 and the dense fast path is used by `seminorm`.
  bool uses_matrix() const { return params_.p == 2.0; }

  /// Relative tail (h_min / W)^{sp} of the truncated kernel, W the shell width.
  double tail_relative() const;
  /// Upper bound on the seminorm mass lost by truncation for a function whose
  /// values oscillate by at most `oscillation` on the real line.
  double tail_bound(double oscillation) const;

  void write_csv(std::ostream& out) const;

 private:
  QuadratureTable() = default;

  void check(const Eigen::VectorXd& u) const;

  std::shared_ptr<const Mesh> mesh_;
  FracParams params_{};
  QuadratureOptions options_{};
  std::vector<PairRecord> pairs_;
  std::vector<QuadPoint> points_;
  Eigen::MatrixXd matrix_;
};

/// int_R^inf r^{-1-sp} dr = R^{-sp}/(sp): radial tail of the kernel.
double radial_tail(const FracParams& params, double r);

/// Smallest R = diameter * 1.1^k (k >= 1) such that the radial tail beyond the
/// shell width R - diameter, relative to the tail beyond h_min, is <= tol.
double tail_radius(const FracParams& params, double tol, double h_min, double diameter);

}  // namespace fracneumann
