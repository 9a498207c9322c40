#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracneumann/mesh.hpp"
#include "fracneumann/model.hpp"
#include "fracneumann/params.hpp"

namespace fracneumann {

struct HypothesisResult {
  std::string name;
  bool pass = false;
  double margin = 0.0;  ///< lhs - rhs of the checked inequality (positive when it holds)
  bool gating = true;   ///< false for diagnostics that do not affect certification
};

struct LambdaInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool nonempty() const { return lower < upper; }
};

/// Mesh the embedding constants were computed on.
struct MeshTag {
  int n = 0;
  double r_ext = 0.0;
};

struct Certificate {
  std::string kind;  ///< case1, case2, corollary, example31
  CaseTag case_tag = CaseTag::Neither;
  std::map<std::string, double> constants;
  MeshTag mesh;
  std::vector<HypothesisResult> hypotheses;
  /// Endpoints as computed, whether or not the hypotheses hold.
  LambdaInterval candidate;
  /// Present only when every gating hypothesis passes and lower < upper.
  std::optional<LambdaInterval> interval;
  /// Interval of the worked example with psi(rho) in the lower endpoint.
  std::optional<LambdaInterval> verbatim_interval;
  std::vector<std::string> disclaimers;

  bool all_gating_pass() const;
  const HypothesisResult* find(const std::string& name) const;
};

/// int_Omega sup_{|xi| <= gamma} H(x, xi) dx.  The sup uses a 501-point grid
/// on [-gamma, gamma] refined by golden-section search around the best node;
/// the outer integral uses `order` Gauss points per interior element.
double big_gamma(const Nonlinearity& nl, double gamma, const Mesh& mesh, int order = 6);

/// int_Omega H(x, xi) dx for a constant xi.
double integral_H(const Nonlinearity& nl, double xi, const Mesh& mesh, int order = 6);

struct Case2Constants {
  double kappa = 0.0;
  double L1 = 0.0;
  double L2 = 0.0;
};

/// kappa = (p/||a||_1)^{1/p}, L1 = c1 ||a||_1 / p^{(p-1)/p},
/// L2 = c_q^q ||a||_1 / (q p^{(p-q)/p}).
Case2Constants case2_constants(double a_l1, double c1, double cq, double q, double p);

/// Sampled check of H(x, xi) <= mu(x) (1 + |xi|^t) with t < p over xs x xis;
/// pass iff no violation beyond 1e-12 relative.  margin = min of
/// 1 - H / (mu (1 + |xi|^t)) over sampled points with positive bound.
HypothesisResult check_growth_bound(const std::string& name, const Nonlinearity& nl,
                                    const std::function<double(double)>& mu, double t, double p,
                                    const std::vector<double>& xs, const std::vector<double>& xis);

/// Default xi sample: a fine uniform grid on [-10, 10] plus logarithmically
/// spaced points out to +-1e6.
std::vector<double> default_sample_grid();

/// Smallest b with H(x, xi) <= b (1 + |xi|^t) on the sample grid.
double fit_growth_constant(const Nonlinearity& nl, double t, const std::vector<double>& xs,
                           const std::vector<double>& xis);

/// lim_{t -> inf} f(t) / t^beta = 0, sampled at t = 1e2, 1e4, 1e6; pass iff
/// the ratio at 1e6 is <= 1e-6.  margin = 1e-6 - ratio(1e6).
HypothesisResult check_decay(const std::string& name, const std::function<double(double)>& f,
                             double beta);

struct CaseIInputs {
  double gamma = 0.0;
  double eta = 0.0;
  /// (Ah1) data; the check is skipped when mu is empty.
  std::function<double(double)> mu;
  double t = 0.0;
  std::vector<double> sample_xi;  ///< xi grid for (Ah1); default symmetric grid up to 1e6
};

/// Theorem for N < sp, p >= 2: checks (Ah1) and (Ah2) as stated and returns
/// (eta^p ||a||_1 / (p int H(eta) - p Gamma), gamma^p / (p c^p Gamma)).
/// The sufficient form int H(eta)/eta^p > (1 + c^p ||a||_1) Gamma / gamma^p
/// used by the ordering argument is reported as a diagnostic.
Certificate interval_case1(const CaseIInputs& in, double c, const Coefficient& a,
                           const Nonlinearity& nl, const FracParams& params, MeshTag tag,
                           int order = 6);

struct CaseIIInputs {
  double epsilon = 0.0;
  double delta = 0.0;
  /// (Bh1) data; skipped when b <= 0.
  double b = 0.0;
  double t = 0.0;
  std::vector<double> sample_xi;
};

/// Theorem for N >= sp >= 1.  Throws InputError when delta <= epsilon kappa.
Certificate interval_case2(const CaseIIInputs& in, double c1, double cq, const Coefficient& a,
                           const Nonlinearity& nl, const FracParams& params, MeshTag tag,
                           int order = 6);

struct CorollaryInputs {
  std::function<double(double)> phi;  ///< phi(x) on Omega, nonnegative and not identically 0
  std::function<double(double)> psi;
  std::function<double(double)> Psi;  ///< primitive of psi; integrated numerically when empty
  double a1 = 0.0;
  double a2 = 0.0;
  double q = 2.0;
  double delta = 0.0;
  double beta = 0.0;
  std::vector<double> sample_t;  ///< grid for (phi1); default symmetric grid up to 1e6
};

/// Corollary for h(x, t) = phi(x) psi(t): checks (phi1)-(phi3) and returns
/// (delta^p ||a||_1 / (p ||phi||_1 Psi(delta)),
///  ||a||_1 / (p ||phi||_inf (a1 L1 + a2 L2))).
Certificate corollary31(const CorollaryInputs& in, double c1, double cq, const Coefficient& a,
                        const FracParams& params, MeshTag tag, int order = 6);

/// Worked example with the reference psi and constant phi, delta = rho.
/// The corollary interval (with Psi(rho)) gives `candidate`/`interval`; the
/// example's own formula (with psi(rho)) gives `verbatim_interval`.  Throws
/// InputError when rho does not exceed its lower bound.  `rho_used`
/// receives the rho actually used.
Certificate certify_example31(const Example31Setup& setup, double c1, double cq, const Coefficient& a,
                              MeshTag tag, double* rho_used = nullptr, int order = 6);

}  // namespace fracneumann
