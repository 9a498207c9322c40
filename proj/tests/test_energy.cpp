#include <doctest.h>

#include <cmath>
#include <random>

#include "fracneumann/energy.hpp"
#include "support.hpp"

using namespace fracneumann;
using testing::rel;

namespace {

struct Fixture {
  std::shared_ptr<const Mesh> mesh;
  QuadratureTable table;
  Coefficient a;
  WNorm norm;
  Fixture(FracParams fp, int n, double R, std::function<double(double)> af)
      : mesh(testing::unit_mesh(n, R)),
        table(QuadratureTable::assemble(mesh, fp)),
        a(Coefficient::from_function(mesh, af)),
        norm(table, a) {}
};

double directional_fd(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& u,
                      const Eigen::VectorXd& d, double h) {
  return (f(u + h * d) - f(u - h * d)) / (2 * h);
}

}  // namespace

TEST_CASE("T of constants") {
  Fixture f({1, 0.5, 3.0}, 8, 4.0, [](double x) { return 1 + x; });
  for (double delta : {0.5, 2.0, 7.0}) {
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(f.mesh->node_count(), delta);
    CHECK(rel(T_energy(f.norm, u), std::pow(delta, 3.0) * 1.5 / 3.0) < 1e-12);
  }
}

TEST_CASE("S of constants with a polynomial nonlinearity") {
  const auto mesh = testing::unit_mesh(8, 4.0);
  const Nonlinearity nl = polynomial_nonlinearity({1.0, 0.0, 3.0});
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(mesh->node_count(), 2.0);
  CHECK(rel(S_energy(*mesh, nl, u), 2.0 + 8.0) < 1e-14);
}

TEST_CASE("gradients match central differences") {
  for (FracParams fp : {FracParams{1, 0.5, 2.0}, FracParams{1, 0.5, 3.0}, FracParams{1, 0.7, 1.6}}) {
    Fixture f(fp, 8, 4.0, [](double x) { return 1 + 0.5 * x; });
    const Nonlinearity nl = example31_nonlinearity(1.3, 4.0);
    const EnergyFunctional J(f.norm, nl, 0.37);
    std::mt19937_64 rng(17);
    const double h = fp.p < 2.0 ? 1e-7 : 1e-5;
    for (int k = 0; k < 3; ++k) {
      const Eigen::VectorXd u = testing::random_vector(*f.mesh, rng);
      const Eigen::VectorXd d = testing::random_vector(*f.mesh, rng);
      CAPTURE(fp.p);
      CHECK(rel(gradient_T(f.norm, u).dot(d), directional_fd([&](const Eigen::VectorXd& v) { return J.T(v); }, u, d, h)) < 1e-6);
      CHECK(rel(gradient_S(*f.mesh, nl, u).dot(d), directional_fd([&](const Eigen::VectorXd& v) { return J.S(v); }, u, d, h)) < 1e-6);
      CHECK(rel(J.gradient_J(u).dot(d), directional_fd([&](const Eigen::VectorXd& v) { return J.J(v); }, u, d, h)) < 1e-6);
    }
  }
}

TEST_CASE("gradient_T rejects p close to 1") {
  Fixture f({1, 0.5, 1.05}, 4, 3.0, [](double) { return 1.0; });
  CHECK_THROWS_AS(gradient_T(f.norm, Eigen::VectorXd::Ones(f.mesh->node_count())), InputError);
}

TEST_CASE("breakdown is consistent") {
  Fixture f({1, 0.5, 2.0}, 8, 4.0, [](double) { return 1.0; });
  const Nonlinearity nl = polynomial_nonlinearity({0.0, 1.0});
  const EnergyFunctional J(f.norm, nl, 2.0);
  std::mt19937_64 rng(1);
  const Eigen::VectorXd u = testing::random_vector(*f.mesh, rng);
  const EnergyBreakdown b = J.breakdown(u);
  CHECK(rel(b.J, b.T - 2.0 * b.S) < 1e-14);
  CHECK(rel(b.T, (b.seminorm + b.potential) / 2.0) < 1e-14);
  CHECK(rel(J.residual(u), weak_residual(f.norm, nl, 2.0, u)) < 1e-14);
}

TEST_CASE("fractional p-Laplacian and Neumann derivative of constants vanish") {
  const auto mesh = testing::unit_mesh(8, 4.0);
  for (FracParams fp : {FracParams{1, 0.5, 2.0}, FracParams{1, 0.5, 3.0}}) {
    const auto u = DiscreteFunction::constant(mesh, 1.7);
    for (int k = 0; k < mesh->interior_node_count(); ++k)
      CHECK(std::abs(frac_p_laplacian_at(u, mesh->first_interior_node() + k, fp)) <= 1e-12);
    for (int i = 0; i < mesh->node_count(); ++i)
      if (!mesh->is_interior_node(i)) CHECK(std::abs(neumann_derivative_at(u, mesh->node(i), fp)) <= 1e-12);
  }
}

TEST_CASE("Neumann derivative of the identity for p = 2") {
  // N u(x) = int_0^1 (x - y) |x - y|^{-2} dy = log(x / (x - 1)) for x > 1
  const FracParams fp{1, 0.5, 2.0};
  const auto mesh = testing::unit_mesh(8, 4.0);
  const auto u = DiscreteFunction::from_function(mesh, [](double x) { return x; });
  for (double x : {1.01, 1.5, 2.0, 3.5}) CHECK(rel(neumann_derivative_at(u, x, fp), std::log(x / (x - 1.0))) < 1e-8);
  CHECK(rel(neumann_derivative_at(u, -0.5, fp), -std::log(1.5 / 0.5)) < 1e-8);
  CHECK_THROWS_AS(neumann_derivative_at(u, 0.5, fp), InputError);
}

TEST_CASE("fractional Laplacian of the identity is odd about the centre") {
  const FracParams fp{1, 0.5, 3.0};
  const auto mesh = testing::unit_mesh(8, 4.0);
  const auto u = DiscreteFunction::from_function(mesh, [](double x) { return x; });
  const int mid = mesh->first_interior_node() + 4;
  CHECK(std::abs(frac_p_laplacian_at(u, mid, fp)) < 1e-12);
  const double left = frac_p_laplacian_at(u, mid - 2, fp), right = frac_p_laplacian_at(u, mid + 2, fp);
  CHECK(rel(left, -right) < 1e-10);
}

TEST_CASE("monotonicity gap") {
  Fixture f2({1, 0.5, 2.0}, 8, 4.0, [](double x) { return 1 + x; });
  Fixture f3({1, 0.5, 3.0}, 8, 4.0, [](double x) { return 1 + x; });
  std::mt19937_64 rng(23);
  for (int k = 0; k < 10; ++k) {
    const Eigen::VectorXd u = testing::random_vector(*f2.mesh, rng), v = testing::random_vector(*f2.mesh, rng);
    const MonotonicityGap g2 = monotonicity_gap(f2.norm, u, v);
    CHECK(rel(g2.gap, std::pow(f2.norm.norm(u - v), 2.0)) < 1e-10);
    CHECK(monotonicity_gap(f3.norm, u, v).ratio > 0.0);
  }
  const Eigen::VectorXd u = Eigen::VectorXd::Ones(f2.mesh->node_count());
  CHECK(monotonicity_gap(f2.norm, u, u).ratio == 0.0);
}
