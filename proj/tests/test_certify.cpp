#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "fracneumann/certify.hpp"
#include "support.hpp"

using namespace fracneumann;
using testing::rel;

TEST_CASE("Case II constants") {
  const Case2Constants k = case2_constants(1.0, 1.0, 1.0, 4.0, 2.0);
  CHECK(rel(k.kappa, std::sqrt(2.0)) < 1e-15);
  CHECK(rel(k.L1, 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(rel(k.L2, 0.5) < 1e-15);
  const Case2Constants k3 = case2_constants(2.0, 1.2, 1.5, 3.5, 3.0);
  CHECK(rel(k3.kappa, std::cbrt(1.5)) < 1e-15);
  CHECK(rel(k3.L1, 1.2 * 2.0 / std::pow(3.0, 2.0 / 3.0)) < 1e-15);
  CHECK(rel(k3.L2, std::pow(1.5, 3.5) * 2.0 / (3.5 * std::pow(3.0, -0.5 / 3.0))) < 1e-14);
}

TEST_CASE("Gamma and int H") {
  const auto mesh = testing::unit_mesh(8, 3.0);
  const Nonlinearity cubic = polynomial_nonlinearity({0.0, 0.0, 0.0, 1.0});
  CHECK(rel(big_gamma(cubic, 1.5, *mesh), std::pow(1.5, 4) / 4) < 1e-14);
  CHECK(rel(integral_H(cubic, 2.0, *mesh), 4.0) < 1e-14);
  // interior maximum: H = xi - xi^3/3 peaks at xi = 1 with value 2/3
  const Nonlinearity bump = polynomial_nonlinearity({1.0, 0.0, -1.0});
  CHECK(rel(big_gamma(bump, 1.7, *mesh), 2.0 / 3.0) < 1e-12);
  CHECK_THROWS_AS(big_gamma(bump, 0.0, *mesh), InputError);
}

TEST_CASE("growth and decay checks") {
  const Nonlinearity lin = polynomial_nonlinearity({1.0, 1.0});
  const auto xs = std::vector<double>{0.0, 0.5};
  CHECK(check_growth_bound("g", lin, [](double) { return 1.0; }, 1.9, 2.0, xs, default_sample_grid()).pass == false);
  CHECK(check_growth_bound("g", lin, [](double) { return 2.0; }, 1.99, 2.0, xs, symmetric_grid(10.0, 101)).pass);
  const Nonlinearity cosine = cosine_nonlinearity();
  const auto h = check_growth_bound("g", cosine, [](double) { return 1.0; }, 1.0, 2.0, xs, symmetric_grid(10.0, 41));
  CHECK(h.pass);
  CHECK(h.margin >= 0.0);
  CHECK_THROWS_AS(check_growth_bound("g", lin, [](double) { return 1.0; }, 2.0, 2.0, xs, xs), InputError);
  const auto grid = symmetric_grid(10.0, 201);
  const double b = fit_growth_constant(lin, 1.5, xs, grid);
  CHECK(check_growth_bound("g", lin, [b](double) { return b; }, 1.5, 2.0, xs, grid).pass);
  CHECK(!check_growth_bound("g", lin, [b](double) { return 0.99 * b; }, 1.5, 2.0, xs, grid).pass);
  CHECK(check_decay("d", [](double t) { return 1.0 / (1.0 + t * t); }, 0.5).pass);
  CHECK(!check_decay("d", [](double t) { return std::sqrt(t); }, 0.4).pass);
}

TEST_CASE("Case I certificate") {
  const FracParams fp{1, 0.8, 2.0};
  const auto mesh = testing::unit_mesh(8, 4.0);
  const Coefficient a = Coefficient::constant(mesh, 2.0);
  const Nonlinearity cubic = polynomial_nonlinearity({0.0, 0.0, 0.0, 1.0});
  CaseIInputs in;
  in.gamma = 1.0;
  in.eta = 8.0;
  const double c = 1.1;
  const Certificate cert = interval_case1(in, c, a, cubic, fp, {8, 4.0});
  CHECK(cert.kind == "case1");
  CHECK(cert.interval.has_value());
  CHECK(cert.find("Ah2")->pass);
  CHECK(!cert.find("Ah2_sufficient_form")->gating);
  CHECK(!cert.disclaimers.empty());
  CHECK(cert.mesh.n == 8);
  CHECK_THROWS_AS(interval_case1(in, c, a, cubic, {1, 0.5, 2.0}, {}), InputError);
  in.eta = 0.5;
  CHECK_THROWS_AS(interval_case1(in, c, a, cubic, fp, {}), InputError);
}

TEST_CASE("Case I with a degenerate Gamma is not certified") {
  const FracParams fp{1, 0.8, 2.0};
  const auto mesh = testing::unit_mesh(4, 4.0);
  const Coefficient a = Coefficient::constant(mesh, 1.0);
  const Nonlinearity neg = polynomial_nonlinearity({0.0, -1.0});
  CaseIInputs in;
  in.gamma = 1.0;
  in.eta = 2.0;
  const Certificate cert = interval_case1(in, 1.1, a, neg, fp, {});
  CHECK(!cert.interval.has_value());
  CHECK(!cert.find("Gamma_positive")->pass);
  CHECK(std::isnan(cert.candidate.lower));
}

TEST_CASE("Case I growth hypothesis") {
  const FracParams fp{1, 0.8, 3.0};
  const auto mesh = testing::unit_mesh(4, 4.0);
  const Coefficient a = Coefficient::constant(mesh, 1.0);
  CaseIInputs in;
  in.gamma = 1.0;
  in.eta = 3.0;
  in.mu = [](double) { return 1.0; };
  in.t = 2.0;
  const Certificate cert = interval_case1(in, 1.1, a, polynomial_nonlinearity({0.0, 2.0}), fp, {});
  REQUIRE(cert.find("Ah1") != nullptr);
  CHECK(cert.find("Ah1")->pass);
}

TEST_CASE("Case II rejects delta <= epsilon kappa") {
  const FracParams fp{1, 0.5, 2.0};
  const auto mesh = testing::unit_mesh(4, 4.0);
  const Coefficient a = Coefficient::constant(mesh, 1.0);
  CaseIIInputs in;
  in.epsilon = 1.0;
  in.delta = 1.0;
  try {
    interval_case2(in, 1.0, 1.0, a, polynomial_nonlinearity({1.0, 0.0, 0.0, 1.0}), fp, {});
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("δ > εκ") != std::string::npos);
  }
}

TEST_CASE("Case II certificate and Bh1") {
  const FracParams fp{1, 0.5, 2.0};
  const auto mesh = testing::unit_mesh(8, 4.0);
  const Coefficient a = Coefficient::constant(mesh, 1.0);
  CaseIIInputs in;
  in.epsilon = 0.5;
  in.delta = 3.0;
  const Certificate cert = interval_case2(in, 1.1, 1.3, a, polynomial_nonlinearity({1.0, 0.0, 0.0, 1.0}), fp, {});
  CHECK(cert.interval.has_value());
  CHECK(cert.find("Bh2")->pass);
  in.b = 1.0;
  in.t = 1.0;
  const Certificate bad = interval_case2(in, 1.1, 1.3, a, polynomial_nonlinearity({1.0, 0.0, 0.0, 1.0}), fp, {});
  CHECK(!bad.find("Bh1")->pass);
  CHECK(!bad.interval.has_value());
}

TEST_CASE("corollary hypotheses") {
  const FracParams fp{1, 0.5, 2.0};
  const auto mesh = testing::unit_mesh(8, 4.0);
  const Coefficient a = Coefficient::constant(mesh, 1.0);
  CorollaryInputs in;
  in.phi = [](double) { return 1.0; };
  in.psi = [](double t) { return 1 + std::abs(t); };
  in.a1 = 1.0;
  in.a2 = 1.0;
  in.q = 2.0;
  in.delta = 3.0;
  in.beta = 0.5;
  const Certificate cert = corollary31(in, 1.0, 1.0, a, fp, {});
  CHECK(!cert.find("phi3")->pass);
  CHECK(!cert.interval.has_value());
  in.psi = [](double) { return 0.0; };
  CHECK_THROWS_AS(corollary31(in, 1.0, 1.0, a, fp, {}), InputError);
}

TEST_CASE("reference example with unit constants") {
  const auto mesh = testing::unit_mesh(8, 4.0);
  const Coefficient a = Coefficient::constant(mesh, 1.0);
  double rho = 0.0;
  const Certificate cert = certify_example31({}, 1.0, 1.0, a, {8, 4.0}, &rho);
  const double bound = std::sqrt(4.0 * (1 / std::sqrt(2.0) + 0.5));
  CHECK(rel(cert.constants.at("rho_bound"), bound) < 1e-15);
  CHECK(rel(rho, bound + 0.1) < 1e-15);
  REQUIRE(cert.interval.has_value());
  CHECK(cert.find("rho_chain")->pass);
  const double Psi = rho + std::pow(rho, 4) / 4, psi = 1 + std::pow(rho, 3);
  CHECK(rel(cert.interval->lower, rho * rho / (2 * Psi)) < 1e-14);
  CHECK(rel(cert.interval->upper, 1 / (2 * (1 / std::sqrt(2.0) + 0.5))) < 1e-14);
  REQUIRE(cert.verbatim_interval.has_value());
  CHECK(rel(cert.verbatim_interval->lower, rho * rho / (2 * psi)) < 1e-14);
  // frozen
  CHECK(rel(bound, 2.19736822693562) < 1e-13);
  CHECK(rel(cert.interval->lower, 0.284939921459335) < 1e-13);
  CHECK(rel(cert.interval->upper, 0.414213562373099) < 1e-13);
  CHECK(rel(cert.verbatim_interval->lower, 0.201058573729316) < 1e-13);
  Example31Setup setup;
  setup.rho = 1.0;
  CHECK_THROWS_AS(certify_example31(setup, 1.0, 1.0, a, {}), InputError);
}

TEST_CASE("passing certificates have lower < upper") {
  const FracParams fp{1, 0.5, 2.0};
  const auto mesh = testing::unit_mesh(4, 4.0);
  const Coefficient a = Coefficient::constant(mesh, 1.0);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int certified = 0;
  for (int k = 0; k < 200; ++k) {
    CaseIIInputs in;
    in.epsilon = 0.05 + U(rng);
    in.delta = in.epsilon * std::sqrt(2.0) * (1.01 + 4 * U(rng));
    const Certificate cert = interval_case2(in, 0.5 + U(rng), 0.5 + U(rng), a,
                                            polynomial_nonlinearity({U(rng), 0.0, 0.0, U(rng)}), fp, {});
    if (cert.interval) {
      ++certified;
      CHECK(cert.interval->lower < cert.interval->upper);
    }
  }
  CHECK(certified > 0);
}
