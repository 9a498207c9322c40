#include "fracneumann/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracneumann/gauss.hpp"

namespace fracneumann {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kGammaGrid = 501;

const char* kMeshDisclaimer =
    "numerical, mesh-dependent: embedding constants are discrete lower estimates, so hypothesis "
    "checks that use them are optimistic";

HypothesisResult inequality(const std::string& name, double lhs, double rhs, bool gating = true) {
  HypothesisResult h;
  h.name = name;
  h.margin = lhs - rhs;
  h.pass = std::isfinite(h.margin) && h.margin > 0.0;
  h.gating = gating;
  return h;
}

// Gauss points of the interior elements, for sampling x.
std::vector<std::pair<double, double>> interior_rule(const Mesh& mesh, int order) {
  const Rule1D& g = gauss_legendre(order);
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k < mesh.interior_element_count(); ++k) {
    const int e = mesh.first_interior_element() + k;
    const double h = mesh.element_size(e);
    for (int j = 0; j < g.size(); ++j) pts.emplace_back(mesh.element_left(e) + h * g.nodes[j], h * g.weights[j]);
  }
  return pts;
}

std::vector<double> sample_points(const Mesh& mesh, int order) {
  std::vector<double> xs;
  for (int k = 0; k < mesh.interior_node_count(); ++k) xs.push_back(mesh.node(mesh.first_interior_node() + k));
  for (const auto& [x, w] : interior_rule(mesh, order)) xs.push_back(x);
  return xs;
}

double sup_H(const Nonlinearity& nl, double x, double gamma) {
  std::vector<double> grid(kGammaGrid);
  int best = 0;
  for (int k = 0; k < kGammaGrid; ++k) {
    const double xi = -gamma + 2.0 * gamma * k / (kGammaGrid - 1);
    grid[k] = primitive_H(nl, x, xi);
    if (grid[k] > grid[best]) best = k;
  }
  double value = grid[best];
  const double step = 2.0 * gamma / (kGammaGrid - 1);
  double lo = -gamma + step * std::max(best - 1, 0);
  double hi = -gamma + step * std::min(best + 1, kGammaGrid - 1);
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  double f1 = primitive_H(nl, x, x1), f2 = primitive_H(nl, x, x2);
  for (int it = 0; it < 80 && hi - lo > 1e-15 * std::max(1.0, gamma); ++it) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = primitive_H(nl, x, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = primitive_H(nl, x, x2);
    }
  }
  return std::max({value, f1, f2});
}

double l1_of(const std::function<double(double)>& f, const Mesh& mesh, int order) {
  CompensatedSum sum;
  for (const auto& [x, w] : interior_rule(mesh, order)) sum.add(w * std::abs(f(x)));
  return sum.value();
}

double linf_of(const std::function<double(double)>& f, const Mesh& mesh, int order) {
  double m = 0.0;
  for (double x : sample_points(mesh, order)) m = std::max(m, std::abs(f(x)));
  return m;
}

void finish(Certificate& cert) {
  cert.disclaimers.push_back(kMeshDisclaimer);
  if (cert.all_gating_pass() && cert.candidate.nonempty()) cert.interval = cert.candidate;
}

}  // namespace

bool Certificate::all_gating_pass() const {
  return std::all_of(hypotheses.begin(), hypotheses.end(),
                     [](const HypothesisResult& h) { return !h.gating || h.pass; });
}

const HypothesisResult* Certificate::find(const std::string& name) const {
  for (const HypothesisResult& h : hypotheses)
    if (h.name == name) return &h;
  return nullptr;
}

double big_gamma(const Nonlinearity& nl, double gamma, const Mesh& mesh, int order) {
  if (!(gamma > 0.0)) throw InputError("Gamma requires gamma > 0");
  CompensatedSum sum;
  double cached = kNaN;
  for (const auto& [x, w] : interior_rule(mesh, order)) {
    if (!nl.autonomous || std::isnan(cached)) cached = sup_H(nl, x, gamma);
    sum.add(w * cached);
  }
  return sum.value();
}

double integral_H(const Nonlinearity& nl, double xi, const Mesh& mesh, int order) {
  CompensatedSum sum;
  double cached = kNaN;
  for (const auto& [x, w] : interior_rule(mesh, order)) {
    if (!nl.autonomous || std::isnan(cached)) cached = primitive_H(nl, x, xi);
    sum.add(w * cached);
  }
  return sum.value();
}

Case2Constants case2_constants(double a_l1, double c1, double cq, double q, double p) {
  if (!(a_l1 > 0.0 && c1 > 0.0 && cq > 0.0 && q > 0.0 && p > 0.0))
    throw InputError("Case II constants need positive inputs");
  Case2Constants k;
  k.kappa = std::pow(p / a_l1, 1.0 / p);
  k.L1 = c1 / std::pow(p, (p - 1.0) / p) * a_l1;
  k.L2 = std::pow(cq, q) / (q * std::pow(p, (p - q) / p)) * a_l1;
  return k;
}

std::vector<double> default_sample_grid() {
  std::vector<double> xs = symmetric_grid(10.0, 2001);
  for (int k = 0; k <= 200; ++k) {
    const double t = std::pow(10.0, -3.0 + 9.0 * k / 200.0);
    xs.push_back(t);
    xs.push_back(-t);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

HypothesisResult check_growth_bound(const std::string& name, const Nonlinearity& nl,
                                    const std::function<double(double)>& mu, double t, double p,
                                    const std::vector<double>& xs, const std::vector<double>& xis) {
  if (!(t < p)) throw InputError(name + " requires t < p");
  HypothesisResult h;
  h.name = name;
  h.pass = true;
  h.margin = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    const double m = mu(x);
    for (double xi : xis) {
      const double H = primitive_H(nl, x, xi);
      const double bound = m * (1.0 + std::pow(std::abs(xi), t));
      if (H > bound + 1e-12 * std::abs(bound)) h.pass = false;
      if (bound > 0.0) h.margin = std::min(h.margin, 1.0 - H / bound);
      else if (H > 0.0) h.margin = -std::numeric_limits<double>::infinity();
    }
  }
  return h;
}

double fit_growth_constant(const Nonlinearity& nl, double t, const std::vector<double>& xs,
                           const std::vector<double>& xis) {
  double b = 0.0;
  for (double x : xs)
    for (double xi : xis) b = std::max(b, primitive_H(nl, x, xi) / (1.0 + std::pow(std::abs(xi), t)));
  return b;
}

HypothesisResult check_decay(const std::string& name, const std::function<double(double)>& f,
                             double beta) {
  HypothesisResult h;
  h.name = name;
  const double ratio = std::abs(f(1e6)) / std::pow(1e6, beta);
  h.margin = 1e-6 - ratio;
  h.pass = ratio <= 1e-6;
  return h;
}

Certificate interval_case1(const CaseIInputs& in, double c, const Coefficient& a,
                           const Nonlinearity& nl, const FracParams& params, MeshTag tag, int order) {
  if (case_tag(params) != CaseTag::CaseI) throw InputError("Case I certificate requires N < sp and p >= 2");
  if (!(in.gamma > 0.0)) throw InputError("Case I requires gamma > 0");
  if (!(in.eta > in.gamma)) throw InputError("Case I requires eta > gamma");
  if (!(c > 0.0)) throw InputError("Case I requires a positive embedding constant c");
  const Mesh& mesh = a.mesh();
  const double p = params.p;
  const double al1 = a.l1_norm();

  Certificate cert;
  cert.kind = "case1";
  cert.case_tag = CaseTag::CaseI;
  cert.mesh = tag;

  if (in.mu) {
    const std::vector<double> xis = in.sample_xi.empty() ? default_sample_grid() : in.sample_xi;
    cert.hypotheses.push_back(check_growth_bound("Ah1", nl, in.mu, in.t, p, sample_points(mesh, order), xis));
  }

  const double gamma_big = big_gamma(nl, in.gamma, mesh, order);
  const double ih = integral_H(nl, in.eta, mesh, order);
  const double cpa = std::pow(c, p) * al1;
  cert.constants = {{"c", c},         {"Gamma", gamma_big}, {"int_H_eta", ih},  {"a_l1", al1},
                    {"gamma", in.gamma}, {"eta", in.eta},   {"c_p_a_l1", cpa}};

  HypothesisResult g;
  g.name = "Gamma_positive";
  g.margin = gamma_big;
  g.pass = gamma_big > 0.0;
  cert.hypotheses.push_back(g);

  if (g.pass) {
    cert.hypotheses.push_back(inequality("Ah2", ih / std::pow(in.eta, p), (1.0 + cpa) / gamma_big));
    cert.hypotheses.push_back(inequality("Ah2_sufficient_form", ih / std::pow(in.eta, p),
                                         (1.0 + cpa) * gamma_big / std::pow(in.gamma, p), false));
    cert.candidate.lower = std::pow(in.eta, p) * al1 / (p * ih - p * gamma_big);
    cert.candidate.upper = std::pow(in.gamma, p) / (p * std::pow(c, p) * gamma_big);
  } else {
    HypothesisResult ah2;
    ah2.name = "Ah2";
    ah2.margin = kNaN;
    cert.hypotheses.push_back(ah2);
    cert.candidate = {kNaN, kNaN};
    cert.disclaimers.push_back("degenerate Gamma: sup of H near zero is not positive");
  }
  cert.hypotheses.push_back(inequality("int_H_eta_exceeds_Gamma", ih, gamma_big));
  cert.hypotheses.push_back(inequality("lower_below_upper", cert.candidate.upper, cert.candidate.lower));
  finish(cert);
  return cert;
}

Certificate interval_case2(const CaseIIInputs& in, double c1, double cq, const Coefficient& a,
                           const Nonlinearity& nl, const FracParams& params, MeshTag tag, int order) {
  if (case_tag(params) != CaseTag::CaseII) throw InputError("Case II certificate requires N >= sp >= 1");
  if (!(in.epsilon > 0.0 && in.delta > 0.0)) throw InputError("Case II requires epsilon > 0 and delta > 0");
  const Mesh& mesh = a.mesh();
  const double p = params.p;
  const double q = nl.q;
  const double al1 = a.l1_norm();
  const Case2Constants k = case2_constants(al1, c1, cq, q, p);
  if (!(in.delta > in.epsilon * k.kappa))
    throw InputError("violated hypothesis δ > εκ");

  Certificate cert;
  cert.kind = "case2";
  cert.case_tag = CaseTag::CaseII;
  cert.mesh = tag;

  if (in.b > 0.0) {
    const std::vector<double> xis = in.sample_xi.empty() ? default_sample_grid() : in.sample_xi;
    cert.hypotheses.push_back(check_growth_bound("Bh1", nl, [b = in.b](double) { return b; }, in.t, p,
                                                 sample_points(mesh, order), xis));
  }
  const double ih = integral_H(nl, in.delta, mesh, order);
  const double g = nl.a1 * k.L1 / std::pow(in.epsilon, p - 1.0) + nl.a2 * k.L2 * std::pow(in.epsilon, q - p);
  const double t_delta = std::pow(in.delta, p) * al1 / p;
  cert.constants = {{"c1", c1},         {"cq", cq},       {"q", q},         {"kappa", k.kappa},
                    {"L1", k.L1},       {"L2", k.L2},     {"a1", nl.a1},    {"a2", nl.a2},
                    {"a_l1", al1},      {"epsilon", in.epsilon}, {"delta", in.delta},
                    {"int_H_delta", ih}, {"T_u_delta", t_delta}};

  cert.hypotheses.push_back(inequality("int_H_delta_positive", ih, 0.0));
  cert.hypotheses.push_back(inequality("Bh2", ih / std::pow(in.delta, p), g));
  cert.hypotheses.push_back(inequality("epsilon_p_below_T_u_delta", t_delta, std::pow(in.epsilon, p)));
  cert.candidate.lower = std::pow(in.delta, p) * al1 / (p * ih);
  cert.candidate.upper = al1 / (p * g);
  cert.hypotheses.push_back(inequality("lower_below_upper", cert.candidate.upper, cert.candidate.lower));
  finish(cert);
  return cert;
}

Certificate corollary31(const CorollaryInputs& in, double c1, double cq, const Coefficient& a,
                        const FracParams& params, MeshTag tag, int order) {
  if (case_tag(params) != CaseTag::CaseII) throw InputError("the corollary requires N >= sp >= 1");
  if (!in.phi || !in.psi) throw InputError("the corollary needs phi and psi");
  if (in.psi(0.0) == 0.0) throw InputError("the corollary requires psi(0) != 0");
  if (!(in.beta >= 0.0 && in.beta < params.p - 1.0)) throw InputError("(phi3) requires 0 <= beta < p - 1");
  if (!(in.delta > 0.0)) throw InputError("the corollary requires delta > 0");
  const Mesh& mesh = a.mesh();
  for (double x : sample_points(mesh, order))
    if (in.phi(x) < 0.0) throw InputError("phi must be nonnegative");
  const double phi1 = l1_of(in.phi, mesh, order);
  const double phiinf = linf_of(in.phi, mesh, order);
  if (!(phi1 > 0.0)) throw InputError("phi must not vanish identically");

  const double p = params.p;
  const double al1 = a.l1_norm();
  const Case2Constants k = case2_constants(al1, c1, cq, in.q, p);

  Nonlinearity psi_nl;
  psi_nl.name = "psi";
  psi_nl.h = [f = in.psi](double, double t) { return f(t); };
  if (in.Psi) psi_nl.primitive = [F = in.Psi](double, double xi) { return F(xi); };
  const double Psi_delta = primitive_H(psi_nl, 0.0, in.delta);

  Certificate cert;
  cert.kind = "corollary";
  cert.case_tag = CaseTag::CaseII;
  cert.mesh = tag;

  const std::vector<double> ts = in.sample_t.empty() ? default_sample_grid() : in.sample_t;
  HypothesisResult nonneg;
  nonneg.name = "psi_nonnegative";
  nonneg.pass = true;
  nonneg.margin = std::numeric_limits<double>::infinity();
  HypothesisResult phi1h;
  phi1h.name = "phi1";
  phi1h.pass = true;
  phi1h.margin = std::numeric_limits<double>::infinity();
  for (double t : ts) {
    const double v = in.psi(t);
    nonneg.margin = std::min(nonneg.margin, v);
    if (v < 0.0) nonneg.pass = false;
    const double bound = in.a1 + in.a2 * std::pow(std::abs(t), in.q - 1.0);
    if (v > bound + 1e-12 * std::abs(bound)) phi1h.pass = false;
    if (bound > 0.0) phi1h.margin = std::min(phi1h.margin, 1.0 - v / bound);
  }
  cert.hypotheses.push_back(nonneg);
  cert.hypotheses.push_back(phi1h);

  const double g = in.a1 * k.L1 + in.a2 * k.L2;
  cert.hypotheses.push_back(inequality("delta_above_kappa", in.delta, k.kappa));
  cert.hypotheses.push_back(inequality("phi2", Psi_delta / std::pow(in.delta, p), phiinf / phi1 * g));
  cert.hypotheses.push_back(check_decay("phi3", in.psi, in.beta));

  cert.constants = {{"c1", c1},     {"cq", cq},         {"q", in.q},          {"kappa", k.kappa},
                    {"L1", k.L1},   {"L2", k.L2},       {"a1", in.a1},        {"a2", in.a2},
                    {"a_l1", al1},  {"phi_l1", phi1},   {"phi_linf", phiinf}, {"delta", in.delta},
                    {"beta", in.beta}, {"Psi_delta", Psi_delta}};
  cert.candidate.lower = std::pow(in.delta, p) * al1 / (p * phi1 * Psi_delta);
  cert.candidate.upper = al1 / (p * phiinf * g);
  cert.hypotheses.push_back(inequality("lower_below_upper", cert.candidate.upper, cert.candidate.lower));
  finish(cert);
  return cert;
}

Certificate certify_example31(const Example31Setup& setup, double c1, double cq, const Coefficient& a,
                              MeshTag tag, double* rho_used, int order) {
  setup.validate();
  const FracParams& params = setup.params;
  const double p = params.p;
  const double q = setup.q;
  const Mesh& mesh = a.mesh();
  const double measure = mesh.measure();
  const double al1 = a.l1_norm();
  const Case2Constants k = case2_constants(al1, c1, cq, q, p);
  const double bound = rho_lower_bound(k.kappa, q, p, k.L1, k.L2, measure);
  const double rho = setup.rho > 0.0 ? setup.rho : bound + setup.rho_margin;
  if (!(rho > bound)) throw InputError("rho must exceed its lower bound max{kappa, (q(L1+L2)/|Omega|)^(1/(q-p))}");
  if (rho_used) *rho_used = rho;

  CorollaryInputs in;
  const double phi = setup.phi;
  in.phi = [phi](double) { return phi; };
  in.psi = [rho, q](double t) { return example31_psi(t, rho, q); };
  in.Psi = [rho, q](double xi) { return example31_Psi(xi, rho, q); };
  in.a1 = 1.0;
  in.a2 = 1.0;
  in.q = q;
  in.delta = rho;
  in.beta = 0.5 * (p - 1.0);
  Certificate cert = corollary31(in, c1, cq, a, params, tag, order);
  cert.kind = "example31";
  cert.disclaimers.clear();
  cert.interval.reset();

  cert.constants["rho"] = rho;
  cert.constants["rho_bound"] = bound;
  cert.constants["phi"] = phi;
  cert.constants["psi_rho"] = example31_psi(rho, rho, q);
  cert.constants["measure"] = measure;
  cert.hypotheses.push_back(inequality("rho_chain", std::pow(rho, q - p) / q, (k.L1 + k.L2) / measure));

  LambdaInterval verbatim;
  verbatim.lower = std::pow(rho, p) * al1 / (p * measure * phi * example31_psi(rho, rho, q));
  verbatim.upper = al1 / (p * phi * (k.L1 + k.L2));
  cert.verbatim_interval = verbatim;
  cert.constants["lower_discrepancy"] = verbatim.lower - cert.candidate.lower;
  cert.hypotheses.push_back(inequality("verbatim_lower_below_upper", verbatim.upper, verbatim.lower, false));
  finish(cert);
  return cert;
}

}  // namespace fracneumann
