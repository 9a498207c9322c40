#include "fracneumann/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracneumann {

Coefficient::Coefficient(std::shared_ptr<const Mesh> mesh, std::vector<double> interior_values)
    : mesh_(std::move(mesh)), values_(std::move(interior_values)) {
  if (static_cast<int>(values_.size()) != mesh_->interior_node_count())
    throw InputError("coefficient needs one value per interior node");
  ess_inf_ = *std::min_element(values_.begin(), values_.end());
  if (!(ess_inf_ > 0.0)) throw InputError("coefficient violates essinf a > 0");
  linf_ = 0.0;
  for (double v : values_) linf_ = std::max(linf_, std::abs(v));
  const int first = mesh_->first_interior_element();
  double l1 = 0.0;
  for (int k = 0; k < mesh_->interior_element_count(); ++k)
    l1 += 0.5 * mesh_->element_size(first + k) * (values_[k] + values_[k + 1]);
  l1_ = l1;
}

Coefficient Coefficient::constant(std::shared_ptr<const Mesh> mesh, double value) {
  const int n = mesh->interior_node_count();
  return Coefficient(std::move(mesh), std::vector<double>(n, value));
}

Coefficient Coefficient::from_function(std::shared_ptr<const Mesh> mesh,
                                       const std::function<double(double)>& a) {
  std::vector<double> v;
  const int first = mesh->first_interior_node();
  for (int k = 0; k < mesh->interior_node_count(); ++k) v.push_back(a(mesh->node(first + k)));
  return Coefficient(std::move(mesh), std::move(v));
}

double Coefficient::at(int e, double t) const {
  const int k = e - mesh_->first_interior_element();
  return (1.0 - t) * values_[k] + t * values_[k + 1];
}

Coefficient Coefficient::scaled(double factor) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= factor;
  return Coefficient(mesh_, std::move(v));
}

Nonlinearity polynomial_nonlinearity(std::vector<double> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) coeffs.push_back(0.0);
  Nonlinearity nl;
  nl.name = "polynomial";
  nl.h = [coeffs](double, double t) {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
    return v;
  };
  nl.primitive = [coeffs](double, double xi) {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * xi + coeffs[k] / (k + 1.0);
    return v * xi;
  };
  const std::size_t d = coeffs.size() - 1;
  if (d == 0) {
    nl.a1 = std::abs(coeffs[0]);
    nl.a2 = 0.0;
    nl.q = 2.0;
  } else {
    for (std::size_t k = 0; k < d; ++k) nl.a1 += std::abs(coeffs[k]);
    for (std::size_t k = 1; k <= d; ++k) nl.a2 += std::abs(coeffs[k]);
    nl.q = d + 1.0;
  }
  return nl;
}

Nonlinearity shifted_power_nonlinearity(double c, double k) {
  if (!(k > 0.0)) throw InputError("shifted power exponent must be positive");
  Nonlinearity nl;
  nl.name = "shifted_power";
  nl.h = [c, k](double, double t) { return c + std::pow(std::abs(t), k); };
  nl.primitive = [c, k](double, double xi) {
    return c * xi + std::pow(std::abs(xi), k) * xi / (k + 1.0);
  };
  nl.a1 = std::abs(c);
  nl.a2 = 1.0;
  nl.q = k + 1.0;
  return nl;
}

Nonlinearity cosine_nonlinearity() {
  Nonlinearity nl;
  nl.name = "cosine";
  nl.h = [](double, double t) { return std::cos(t); };
  nl.a1 = 1.0;
  nl.a2 = 0.0;
  nl.q = 2.0;
  return nl;
}

Nonlinearity tabulated_nonlinearity(std::vector<double> t, std::vector<double> values) {
  if (t.size() != values.size() || t.size() < 2)
    throw InputError("tabulated nonlinearity needs at least two (t, h) pairs");
  for (std::size_t k = 1; k < t.size(); ++k)
    if (!(t[k] > t[k - 1])) throw InputError("tabulated abscissae must increase strictly");
  auto eval = [t, values](double x) {
    if (x <= t.front()) return values.front();
    if (x >= t.back()) return values.back();
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - t.begin()) - 1;
    const double w = (x - t[k]) / (t[k + 1] - t[k]);
    return (1.0 - w) * values[k] + w * values[k + 1];
  };
  // Antiderivative G with G(t.front()) = 0, exact for the piecewise-linear h.
  auto antiderivative = [t, values, eval](double x) {
    double g = 0.0;
    if (x <= t.front()) return values.front() * (x - t.front());
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
      if (x <= t[k]) break;
      const double b = std::min(x, t[k + 1]);
      g += 0.5 * (b - t[k]) * (values[k] + eval(b));
    }
    if (x > t.back()) g += values.back() * (x - t.back());
    return g;
  };
  Nonlinearity nl;
  nl.name = "tabulated";
  nl.h = [eval](double, double x) { return eval(x); };
  nl.primitive = [antiderivative](double, double xi) { return antiderivative(xi) - antiderivative(0.0); };
  for (double v : values) nl.a1 = std::max(nl.a1, std::abs(v));
  nl.a2 = 0.0;
  nl.q = 2.0;
  return nl;
}

double example31_psi(double t, double rho, double q) {
  if (t <= rho) return 1.0 + std::pow(std::abs(t), q - 1.0);
  return (1.0 + rho * rho) * (1.0 + std::pow(rho, q - 1.0)) / (1.0 + t * t);
}

double example31_Psi(double xi, double rho, double q) {
  auto left = [q](double x) { return x + std::pow(std::abs(x), q - 1.0) * x / q; };
  if (xi <= rho) return left(xi);
  const double c = (1.0 + rho * rho) * (1.0 + std::pow(rho, q - 1.0));
  return left(rho) + c * (std::atan(xi) - std::atan(rho));
}

Nonlinearity example31_nonlinearity(double rho, double q, double phi) {
  if (!(rho > 0.0)) throw InputError("example rho must be positive");
  if (!(phi > 0.0)) throw InputError("phi must be positive");
  Nonlinearity nl;
  nl.name = "example31";
  nl.h = [rho, q, phi](double, double t) { return phi * example31_psi(t, rho, q); };
  nl.primitive = [rho, q, phi](double, double xi) { return phi * example31_Psi(xi, rho, q); };
  nl.a1 = phi;
  nl.a2 = phi;
  nl.q = q;
  return nl;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw std::runtime_error("adaptive Simpson failed to converge for the primitive of h");
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

}  // namespace

double primitive_H(const Nonlinearity& nl, double x, double xi) {
  if (xi == 0.0) return 0.0;
  if (nl.primitive) return nl.primitive(x, xi);
  auto f = [&](double t) { return nl.h(x, t); };
  if (xi > 0.0) return adaptive_simpson(f, 0.0, xi, 1e-10);
  return -adaptive_simpson(f, xi, 0.0, 1e-10);
}

GrowthReport growth_check(const Nonlinearity& nl, const std::vector<double>& xs,
                          const std::vector<double>& ts) {
  GrowthReport report;
  for (double x : xs) {
    for (double t : ts) {
      const double bound = nl.a1 + nl.a2 * std::pow(std::abs(t), nl.q - 1.0);
      const double v = std::abs(nl.h(x, t));
      double ratio;
      if (bound > 0.0) ratio = v / bound;
      else ratio = v == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      if (ratio > report.worst_ratio) {
        report.worst_ratio = ratio;
        report.worst_x = x;
        report.worst_t = t;
      }
    }
  }
  report.pass = report.worst_ratio <= 1.0 + 1e-12;
  return report;
}

std::vector<double> symmetric_grid(double t_max, int count) {
  if (count < 2) throw InputError("sample grid needs at least two points");
  std::vector<double> ts(count);
  for (int k = 0; k < count; ++k) ts[k] = -t_max + 2.0 * t_max * k / (count - 1);
  if (count % 2 == 1) ts[count / 2] = 0.0;
  return ts;
}

double rho_lower_bound(double kappa, double q, double p, double l1, double l2, double measure) {
  if (!(q > p)) throw InputError("rho bound requires q > p");
  if (!(kappa > 0.0 && l1 + l2 > 0.0 && measure > 0.0))
    throw InputError("rho bound requires positive constants");
  return std::max(kappa, std::pow(q * (l1 + l2) / measure, 1.0 / (q - p)));
}

void Example31Setup::validate() const {
  params.validate();
  if (case_tag(params) != CaseTag::CaseII) throw InputError("reference example requires N >= sp >= 1");
  if (!(q > params.p)) throw InputError("reference example requires q > p");
  if (!(q < critical_exponent(params))) throw InputError("reference example requires q < Np/(N-ps)");
  if (!(phi > 0.0)) throw InputError("phi must be positive");
}

}  // namespace fracneumann
