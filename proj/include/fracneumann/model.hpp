#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fracneumann/mesh.hpp"
#include "fracneumann/params.hpp"

namespace fracneumann {

/// Coefficient a(x) given by nodal values on the interior nodes, interpolated
/// linearly.  ess-inf a > 0 is enforced at construction.
class Coefficient {
 public:
  Coefficient(std::shared_ptr<const Mesh> mesh, std::vector<double> interior_values);
  static Coefficient constant(std::shared_ptr<const Mesh> mesh, double value);
  static Coefficient from_function(std::shared_ptr<const Mesh> mesh,
                                   const std::function<double(double)>& a);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  /// Value at interior node i (global node index).
  double at_node(int i) const { return values_[i - mesh_->first_interior_node()]; }
  /// Value in interior element e at barycentric coordinate t.
  double at(int e, double t) const;
  const std::vector<double>& interior_values() const { return values_; }

  double ess_inf() const { return ess_inf_; }
  double l1_norm() const { return l1_; }
  double linf_norm() const { return linf_; }

  /// Same nodal values scaled by `factor`.
  Coefficient scaled(double factor) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  std::vector<double> values_;
  double ess_inf_ = 0.0;
  double l1_ = 0.0;
  double linf_ = 0.0;
};

/// Carathéodory nonlinearity h(x, t) with growth |h| <= a1 + a2 |t|^{q-1}.
struct Nonlinearity {
  std::string name;
  std::function<double(double, double)> h;
  /// Closed-form primitive H(x, xi) = int_0^xi h(x, t) dt; empty if unavailable.
  std::function<double(double, double)> primitive;
  double a1 = 0.0;
  double a2 = 0.0;
  double q = 2.0;
  bool autonomous = true;
};

/// h(t) = sum_k c_k t^k.  Growth data: q = degree + 1, a1 = sum_{k<d} |c_k|,
/// a2 = sum_{k>=1} |c_k| (valid since |t|^k <= 1 + |t|^d for k <= d).
Nonlinearity polynomial_nonlinearity(std::vector<double> coeffs);

/// h(t) = c + |t|^k, growth a1 = |c|, a2 = 1, q = k + 1.
Nonlinearity shifted_power_nonlinearity(double c, double k);

/// h(t) = cos t; no closed-form primitive is attached, so H is integrated
/// numerically.
Nonlinearity cosine_nonlinearity();

/// Piecewise-linear h through (t_k, h_k), constant beyond the end points.
/// Growth: a1 = max |h_k|, a2 = 0, q = 2.
Nonlinearity tabulated_nonlinearity(std::vector<double> t, std::vector<double> values);

/// psi of the reference example:
///   1 + |t|^{q-1}                              for t <= rho,
///   (1 + rho^2)(1 + rho^{q-1}) / (1 + t^2)     for t > rho.
double example31_psi(double t, double rho, double q);
/// Closed-form Psi(xi) = int_0^xi psi.
double example31_Psi(double xi, double rho, double q);

/// h(x, t) = phi * psi(t) with a1 = a2 = phi (phi a positive constant).
Nonlinearity example31_nonlinearity(double rho, double q, double phi = 1.0);

/// H(x, xi): closed form when available, otherwise adaptive Simpson with
/// tolerance 1e-10 (H(x, xi) = -int_xi^0 h for xi < 0).
double primitive_H(const Nonlinearity& nl, double x, double xi);

struct GrowthReport {
  double worst_ratio = 0.0;
  double worst_x = 0.0;
  double worst_t = 0.0;
  bool pass = true;
};

/// Worst |h(x,t)| / (a1 + a2 |t|^{q-1}) over xs x ts; pass iff <= 1 + 1e-12.
GrowthReport growth_check(const Nonlinearity& nl, const std::vector<double>& xs,
                          const std::vector<double>& ts);

/// Uniform sample grid of [-t_max, t_max] with `count` points (odd counts hit 0).
std::vector<double> symmetric_grid(double t_max, int count);

/// max{kappa, (q (L1 + L2) / |Omega|)^{1/(q-p)}}.
double rho_lower_bound(double kappa, double q, double p, double l1, double l2, double measure);

/// Parameters of the built-in reference instance.
struct Example31Setup {
  FracParams params{1, 0.5, 2.0};
  double q = 4.0;
  double rho = 0.0;  ///< <= 0 means "lower bound + rho_margin"
  double rho_margin = 0.1;
  double phi = 1.0;

  /// Throws InputError unless N >= sp and q lies in (p, Np/(N-ps)) (q > p when N = ps).
  void validate() const;
};

}  // namespace fracneumann
