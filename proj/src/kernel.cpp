#include "fracneumann/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "fracneumann/gauss.hpp"

namespace fracneumann {

namespace {

// p-difference |d|^{p-2} d, defined as 0 at d = 0.
inline double pdiff(double d, double p) {
  if (d == 0.0) return 0.0;
  if (p == 2.0) return d;
  return std::pow(std::abs(d), p - 2.0) * d;
}

inline double pabs(double d, double p) {
  if (p == 2.0) return d * d;
  return std::pow(std::abs(d), p);
}

// Dyadic cells [2^{-k-1}, 2^{-k}] for k < levels and the innermost [0, 2^{-levels}].
std::vector<std::pair<double, double>> dyadic_cells(int levels) {
  std::vector<std::pair<double, double>> cells;
  double hi = 1.0;
  for (int k = 0; k < levels; ++k) {
    cells.emplace_back(0.5 * hi, hi);
    hi *= 0.5;
  }
  cells.emplace_back(0.0, hi);
  return cells;
}

class Assembler {
 public:
  Assembler(const Mesh& mesh, const FracParams& params, const QuadratureOptions& options,
            std::vector<QuadPoint>& points)
      : mesh_(mesh), params_(params), options_(options), points_(points) {
    alpha_ = params.p - 1.0 - params.sp();
    // Radial rules on the dyadic cells, shared by every near pair.
    for (auto [lo, hi] : dyadic_cells(options.depth)) {
      self_radial_.push_back(power_rule(alpha_ + 1.0, lo, hi, options.order));
      touch_radial_.push_back(power_rule(alpha_ + 1.0, lo, hi, options.order));
    }
    self_angular_ = power_rule(alpha_, 0.0, 1.0, options.order);
    const Rule1D& g = gauss_legendre(options.order);
    for (auto [lo, hi] : dyadic_cells(kTouchAngularLevels)) {
      for (int k = 0; k < g.size(); ++k) {
        touch_angular_.nodes.push_back(lo + (hi - lo) * g.nodes[k]);
        touch_angular_.weights.push_back((hi - lo) * g.weights[k]);
      }
    }
  }

  // Identical element e: Duffy map of the triangle y < x,
  // x = a + h u, y = a + h u (1 - w); the weight doubles for the mirror triangle.
  void identical(int e) {
    const double h = mesh_.element_size(e);
    for (const Rule1D& ur : self_radial_) {
      for (int i = 0; i < ur.size(); ++i) {
        const double u = ur.nodes[i];
        for (int j = 0; j < self_angular_.size(); ++j) {
          const double w = self_angular_.nodes[j];
          const double xl = u;
          const double yl = u * (1.0 - w);
          // Jacobian h^2 u, divided by the absorbed factor u^{alpha+1} w^alpha.
          const double jac = h * h * u / (std::pow(u, alpha_ + 1.0) * std::pow(w, alpha_));
          const double d = u * w;  // xl - yl
          push(e, xl, e, yl, 2.0 * ur.weights[i] * self_angular_.weights[j] * jac, h * d,
               {e, e + 1, e, e + 1}, {-d, d, 0.0, 0.0});
        }
      }
    }
  }

  // Touching elements a = [z - ha, z], b = [z, z + hb]:
  // x = z - ha s, y = z + hb r with (s, r) = (rho, rho t) or (rho t, rho).
  void touching(int ea, int eb) {
    const double ha = mesh_.element_size(ea);
    const double hb = mesh_.element_size(eb);
    for (int tri = 0; tri < 2; ++tri) {
      for (const Rule1D& rr : touch_radial_) {
        for (int i = 0; i < rr.size(); ++i) {
          const double rho = rr.nodes[i];
          for (int j = 0; j < touch_angular_.size(); ++j) {
            const double t = touch_angular_.nodes[j];
            const double s = tri == 0 ? rho : rho * t;
            const double r = tri == 0 ? rho * t : rho;
            const double jac = ha * hb * rho / std::pow(rho, alpha_ + 1.0);
            push(ea, 1.0 - s, eb, r, 2.0 * rr.weights[i] * touch_angular_.weights[j] * jac,
                 ha * s + hb * r, {ea, eb, eb + 1, eb}, {s, r - s, -r, 0.0});
          }
        }
      }
    }
  }

  // Separated elements: bisect until admissible, then tensor Gauss.
  void separated(int ea, double a0, double a1, int eb, double b0, double b1, int level) {
    const double la = a1 - a0;
    const double lb = b1 - b0;
    const double dist = b0 >= a1 ? b0 - a1 : a0 - b1;
    if (dist >= options_.admissibility * std::max(la, lb) || level >= 40) {
      const Rule1D& g = gauss_legendre(options_.order);
      const double ea0 = mesh_.element_left(ea), eha = mesh_.element_size(ea);
      const double eb0 = mesh_.element_left(eb), ehb = mesh_.element_size(eb);
      for (int i = 0; i < g.size(); ++i) {
        const double x = a0 + la * g.nodes[i];
        for (int j = 0; j < g.size(); ++j) {
          const double y = b0 + lb * g.nodes[j];
          const double xl = (x - ea0) / eha;
          const double yl = (y - eb0) / ehb;
          push(ea, xl, eb, yl, 2.0 * la * lb * g.weights[i] * g.weights[j], std::abs(y - x),
               {ea, ea + 1, eb, eb + 1}, {1.0 - xl, xl, -(1.0 - yl), -yl});
        }
      }
      max_level_ = std::max(max_level_, level);
      return;
    }
    if (la >= lb) {
      const double m = 0.5 * (a0 + a1);
      separated(ea, a0, m, eb, b0, b1, level + 1);
      separated(ea, m, a1, eb, b0, b1, level + 1);
    } else {
      const double m = 0.5 * (b0 + b1);
      separated(ea, a0, a1, eb, b0, m, level + 1);
      separated(ea, a0, a1, eb, m, b1, level + 1);
    }
  }

  int take_max_level() {
    const int l = max_level_;
    max_level_ = 0;
    return l;
  }

 private:
  static constexpr int kTouchAngularLevels = 3;

  // `dist` is |x - y| computed from the rule's own coordinates, which keeps
  // full relative accuracy near the diagonal.
  void push(int ex, double xl, int ey, double yl, double weight, double dist,
            const std::array<int, 4>& nodes, const std::array<double, 4>& coefs) {
    QuadPoint q;
    q.node = nodes;
    q.coef = coefs;
    q.x_node = ex;
    q.y_node = ey;
    q.x_local = xl;
    q.y_local = yl;
    q.x = mesh_.element_left(ex) + xl * mesh_.element_size(ex);
    q.y = mesh_.element_left(ey) + yl * mesh_.element_size(ey);
    if (!(dist > 0.0)) throw std::logic_error("quadrature sample collides with the diagonal");
    q.weight = weight;
    q.kernel = std::pow(dist, -params_.kernel_exponent());
    q.wk = q.weight * q.kernel;
    if (!std::isfinite(q.wk) || q.weight < 0.0)
      throw std::logic_error("non-finite or negative quadrature weight");
    points_.push_back(q);
  }

  const Mesh& mesh_;
  const FracParams& params_;
  const QuadratureOptions& options_;
  std::vector<QuadPoint>& points_;
  double alpha_ = 0.0;
  std::vector<Rule1D> self_radial_;
  std::vector<Rule1D> touch_radial_;
  Rule1D self_angular_;
  Rule1D touch_angular_;
  int max_level_ = 0;
};

}  // namespace

QuadratureTable QuadratureTable::assemble(std::shared_ptr<const Mesh> mesh, const FracParams& params,
                                          const QuadratureOptions& options) {
  params.validate();
  if (params.dim != 1) throw InputError("quadrature tables are implemented for N = 1 meshes");
  if (options.order < 2) throw InputError("Gauss order must be at least 2");
  if (options.depth < 2) throw InputError("subdivision depth must be at least 2");
  if (!(options.admissibility > 0.0)) throw InputError("admissibility must be positive");

  QuadratureTable table;
  table.mesh_ = std::move(mesh);
  table.params_ = params;
  table.options_ = options;
  const Mesh& m = *table.mesh_;
  Assembler assembler(m, table.params_, table.options_, table.points_);

  const int ne = m.element_count();
  for (int a = 0; a < ne; ++a) {
    for (int b = a; b < ne; ++b) {
      if (!m.is_interior_element(a) && !m.is_interior_element(b)) continue;
      PairRecord rec{a, b, false, 0, static_cast<int>(table.points_.size()), 0};
      if (a == b) {
        rec.near = true;
        rec.levels = options.depth;
        assembler.identical(a);
      } else if (b == a + 1) {
        rec.near = true;
        rec.levels = options.depth;
        assembler.touching(a, b);
      } else {
        assembler.separated(a, m.element_left(a), m.element_right(a), b, m.element_left(b),
                            m.element_right(b), 0);
        rec.levels = assembler.take_max_level();
      }
      rec.point_count = static_cast<int>(table.points_.size()) - rec.first_point;
      table.pairs_.push_back(rec);
    }
  }

  const int nn = m.node_count();
  table.matrix_ = Eigen::MatrixXd::Zero(nn, nn);
  for (const QuadPoint& q : table.points_) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) table.matrix_(q.node[i], q.node[j]) += 0.5 * q.wk * q.coef[i] * q.coef[j];
  }
  // Constants lie in the kernel of the form: rebuild the diagonal from the
  // off-diagonal row sums so that this holds to rounding.
  for (int i = 0; i < nn; ++i) {
    CompensatedSum off;
    for (int j = 0; j < nn; ++j)
      if (j != i) off.add(table.matrix_(i, j));
    table.matrix_(i, i) = -off.value();
  }
  return table;
}

void QuadratureTable::check(const Eigen::VectorXd& u) const {
  if (u.size() != mesh_->node_count())
    throw InputError("nodal vector does not match the quadrature table's mesh");
}

double QuadratureTable::seminorm(const Eigen::VectorXd& u) const {
  check(u);
  if (uses_matrix()) return std::max(0.0, u.dot(matrix_ * u));
  const double p = params_.p;
  CompensatedSum sum;
  for (const QuadPoint& q : points_) {
    sum.add(q.wk * pabs(q.difference(u), p));
  }
  return 0.5 * sum.value();
}

Eigen::VectorXd QuadratureTable::seminorm_gradient(const Eigen::VectorXd& u) const {
  check(u);
  if (uses_matrix()) return matrix_ * u;
  const double p = params_.p;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(u.size());
  for (const QuadPoint& q : points_) {
    const double c = 0.5 * q.wk * pdiff(q.difference(u), p);
    for (int k = 0; k < 4; ++k) g[q.node[k]] += c * q.coef[k];
  }
  return g;
}

double QuadratureTable::bilinear(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  check(u);
  check(v);
  CompensatedSum sum;
  for (const QuadPoint& q : points_) {
    sum.add(q.wk * q.difference(u) * q.difference(v));
  }
  return 0.5 * sum.value();
}

double QuadratureTable::tail_relative() const {
  return std::pow(mesh_->h_min() / mesh_->shell_width(), params_.sp());
}

double QuadratureTable::tail_bound(double oscillation) const {
  // Each x in Omega loses at most 2 * radial_tail(W) of kernel mass (both sides).
  return mesh_->measure() * std::pow(oscillation, params_.p) * 2.0 *
         radial_tail(params_, mesh_->shell_width());
}

void QuadratureTable::write_csv(std::ostream& out) const {
  out << "elem_a,elem_b,near,levels,points,weight_kernel_sum\n";
  char buf[64];
  for (const PairRecord& r : pairs_) {
    CompensatedSum s;
    for (int k = 0; k < r.point_count; ++k) s.add(points_[r.first_point + k].wk);
    std::snprintf(buf, sizeof buf, "%.17g", s.value());
    out << r.elem_a << ',' << r.elem_b << ',' << (r.near ? 1 : 0) << ',' << r.levels << ','
        << r.point_count << ',' << buf << '\n';
  }
}

double radial_tail(const FracParams& params, double r) {
  return std::pow(r, -params.sp()) / params.sp();
}

double tail_radius(const FracParams& params, double tol, double h_min, double diameter) {
  params.validate();
  if (!(tol > 0.0 && tol < 1.0)) throw InputError("tail tolerance must lie in (0,1)");
  if (!(h_min > 0.0) || !(diameter > 0.0)) throw InputError("tail_radius needs positive h_min and diameter");
  const double reference = radial_tail(params, h_min);
  double r = diameter;
  for (int k = 1; k < 100000; ++k) {
    r *= 1.1;
    if (radial_tail(params, r - diameter) / reference <= tol) return r;
  }
  throw InputError("tail radius scan did not terminate");
}

}  // namespace fracneumann
