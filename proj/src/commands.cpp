#include "fracneumann/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fracneumann/energy.hpp"
#include "fracneumann/space.hpp"

namespace fracneumann {

namespace {

using json = nlohmann::json;

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json interval_json(const LambdaInterval& i) { return {{"lower", i.lower}, {"upper", i.upper}}; }

json estimate_json(const ConstantEstimate& e) {
  return {{"value", e.value}, {"converged", e.converged}, {"best_start", e.best_start}};
}

AscentOptions ascent_from(const Config& cfg, bool randomized) {
  AscentOptions o;
  o.starts = cfg.integer("constants.starts");
  o.max_iterations = cfg.integer("constants.max_iter");
  o.tolerance = cfg.num("constants.tol");
  if (o.starts < 1 || o.max_iterations < 1 || !(o.tolerance > 0.0))
    throw InputError("constants.starts, constants.max_iter and constants.tol must be positive");
  if (randomized) o.seed = cfg.seed();
  return o;
}

void check_q(const FracParams& params, double q) {
  if (!(q >= 1.0)) throw InputError("c_q requires q >= 1");
  const double crit = critical_exponent(params);
  if (std::isfinite(crit) && !(q < crit))
    throw InputError("q = " + format_number(q) + " is not below the critical exponent " + format_number(crit));
}

struct Estimates {
  json report = json::object();
  double get(const Config& cfg, const std::string& key, const std::string& label,
             const std::function<ConstantEstimate()>& estimate) {
    if (!cfg.is_auto(key)) {
      const double v = cfg.num(key);
      if (!(v > 0.0)) throw InputError(key + " must be positive");
      report[label] = {{"value", v}, {"source", "config"}};
      return v;
    }
    const ConstantEstimate e = estimate();
    json j = estimate_json(e);
    j["source"] = "estimate";
    report[label] = j;
    return e.value;
  }
};

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

std::filesystem::path output_dir(const Config& cfg) {
  std::filesystem::path dir(cfg.str("output.dir"));
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string());
  return dir;
}

json base_report(const std::string& command, const Config& cfg) {
  json j;
  j["command"] = command;
  j["config"] = cfg.effective();
  return j;
}

MeshTag tag_of(const Mesh& m) { return {m.interior_element_count(), m.r_ext()}; }

struct CertifyOutcome {
  Certificate cert;
  json estimates;
  double rho = 0.0;        ///< resolved example31 rho (0 otherwise)
  double kappa = 0.0;
  double epsilon = 0.0;    ///< case2 epsilon (0 otherwise)
};

Example31Setup example31_setup(const Config& cfg) {
  Example31Setup setup;
  setup.params = params_from(cfg);
  setup.q = cfg.num("nonlinearity.q");
  setup.rho = cfg.is_auto("nonlinearity.rho") ? 0.0 : cfg.num("nonlinearity.rho");
  if (!cfg.is_auto("nonlinearity.rho") && !(setup.rho > 0.0)) throw InputError("nonlinearity.rho must be positive");
  setup.rho_margin = cfg.num("example31.rho_margin");
  if (!(setup.rho_margin > 0.0)) throw InputError("example31.rho_margin must be positive");
  setup.phi = cfg.num("nonlinearity.phi");
  setup.validate();
  return setup;
}

CertifyOutcome certify_case(const Config& cfg, const std::string& which, const WNorm& norm,
                            const Coefficient& a, const FracParams& params) {
  const Mesh& mesh = norm.mesh();
  CertifyOutcome out;
  Estimates est;
  auto cq_of = [&](double q) {
    check_q(params, q);
    return est.get(cfg, q == 1.0 ? "constants.c1" : "constants.cq", q == 1.0 ? "c1" : "cq",
                   [&] { return estimate_cq(norm, q, ascent_from(cfg, true)); });
  };
  if (which == "case1") {
    const double c = est.get(cfg, "constants.c", "c", [&] { return estimate_c(norm, ascent_from(cfg, false)); });
    CaseIInputs in;
    in.gamma = cfg.num("certify.gamma");
    in.eta = cfg.num("certify.eta");
    const double mu = cfg.num("certify.mu");
    if (mu > 0.0) {
      in.mu = [mu](double) { return mu; };
      in.t = cfg.num("certify.t");
    }
    out.cert = interval_case1(in, c, a, nonlinearity_from(cfg), params, tag_of(mesh));
  } else if (which == "case2") {
    const Nonlinearity nl = nonlinearity_from(cfg);
    const double c1 = cq_of(1.0);
    const double cq = nl.q == 1.0 ? c1 : cq_of(nl.q);
    CaseIIInputs in;
    in.delta = cfg.num("certify.delta");
    const Case2Constants k = case2_constants(a.l1_norm(), c1, cq, nl.q, params.p);
    in.epsilon = cfg.is_auto("certify.epsilon") ? in.delta / (2.0 * k.kappa) : cfg.num("certify.epsilon");
    in.b = cfg.num("certify.b");
    in.t = cfg.num("certify.t");
    out.cert = interval_case2(in, c1, cq, a, nl, params, tag_of(mesh));
    out.kappa = k.kappa;
    out.epsilon = in.epsilon;
  } else if (which == "corollary") {
    const Nonlinearity nl = nonlinearity_from(cfg);
    if (!nl.autonomous) throw InputError("the corollary needs an autonomous psi");
    const double c1 = cq_of(1.0);
    const double cq = nl.q == 1.0 ? c1 : cq_of(nl.q);
    CorollaryInputs in;
    const double phi = cfg.num("certify.phi");
    in.phi = [phi](double) { return phi; };
    in.psi = [h = nl.h](double t) { return h(0.0, t); };
    if (nl.primitive) in.Psi = [H = nl.primitive](double xi) { return H(0.0, xi); };
    in.a1 = nl.a1;
    in.a2 = nl.a2;
    in.q = nl.q;
    in.delta = cfg.num("certify.delta");
    in.beta = cfg.num("certify.beta");
    out.cert = corollary31(in, c1, cq, a, params, tag_of(mesh));
    out.kappa = out.cert.constants.at("kappa");
  } else if (which == "example31") {
    const Example31Setup setup = example31_setup(cfg);
    const double c1 = cq_of(1.0);
    const double cq = cq_of(setup.q);
    out.cert = certify_example31(setup, c1, cq, a, tag_of(mesh), &out.rho);
    out.kappa = out.cert.constants.at("kappa");
  } else {
    throw InputError("certify.case must be case1, case2, corollary or example31");
  }
  out.estimates = est.report;
  return out;
}

void write_solutions(const std::filesystem::path& dir, const std::string& prefix, const Mesh& m,
                     const SolveReport& report) {
  for (std::size_t k = 0; k < report.points.size(); ++k) {
    std::ofstream out(dir / (prefix + std::to_string(k) + ".csv"));
    if (!out) throw InputError("cannot write solution CSV");
    out << "index,x,interior,u\n";
    char buf[128];
    for (int i = 0; i < m.node_count(); ++i) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%d,%.17g\n", i, m.node(i), m.is_interior_node(i) ? 1 : 0,
                    report.points[k].u[i]);
      out << buf;
    }
  }
}

void write_mesh_csv(const std::filesystem::path& path, const Mesh& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  m.write_csv(out);
}

json certificate_report(const std::string& command, const Config& cfg, const CertifyOutcome& c) {
  json j = base_report(command, cfg);
  j["certificate"] = to_json(c.cert);
  j["estimates"] = c.estimates;
  return j;
}

// Solve stage shared by `solve` and `example31`.
SolveReport solve_stage(const Config& cfg, const std::shared_ptr<const Mesh>& mesh, const FracParams& params,
                        const Coefficient& a, const Nonlinearity& nl, const CertifyOutcome* cert, json& info) {
  SolveConfig sc;
  if (cfg.is_auto("solve.lambda")) {
    if (!cert) throw InputError("solve.lambda = auto needs a certificate");
    const LambdaInterval& i = *cert->cert.interval;
    sc.lambda = std::sqrt(i.lower * i.upper);
    info["lambda_source"] = "geometric mean of the certified interval";
  } else {
    sc.lambda = cfg.num("solve.lambda");
    info["lambda_source"] = "config";
  }
  sc.tolerance = cfg.num("solve.tol");
  sc.max_iterations = cfg.integer("solve.max_iter");
  sc.starts = cfg.integer("solve.starts");
  sc.shift = cfg.num("solve.shift");
  sc.power = cfg.is_auto("solve.power") ? params.p : cfg.num("solve.power");
  sc.distinct = cfg.num("solve.distinct");
  sc.k_target = cfg.integer("solve.k_target");
  sc.seed = cfg.seed();
  if (cfg.is_auto("solve.delta")) {
    sc.delta = 1.0;
    if (cert) {
      const auto& k = cert->cert.constants;
      if (k.count("delta")) sc.delta = k.at("delta");
    }
  } else {
    sc.delta = cfg.num("solve.delta");
  }
  if (cfg.is_auto("solve.epsilon")) {
    if (cert && cert->epsilon > 0.0) sc.epsilon = cert->epsilon;
    else if (cert && cert->kappa > 0.0) sc.epsilon = sc.delta / (2.0 * cert->kappa);
    else sc.epsilon = 0.5 * sc.delta;
  } else {
    sc.epsilon = cfg.num("solve.epsilon");
  }
  sc.validate();
  info["lambda"] = sc.lambda;
  info["delta"] = sc.delta;
  info["epsilon"] = sc.epsilon;
  info["power"] = sc.power;
  const Instance inst(mesh, params, quadrature_from(cfg), a, nl);
  return deflate_and_search(inst, sc);
}

void log_certificate(std::ostream& log, const Certificate& c) {
  log << c.kind << ": " << (c.interval ? "certified" : "not certified") << ", candidate interval ("
      << format_number(c.candidate.lower) << ", " << format_number(c.candidate.upper) << ")\n";
  for (const HypothesisResult& h : c.hypotheses)
    log << "  " << h.name << ": " << (h.pass ? "pass" : "fail") << (h.gating ? "" : " (diagnostic)") << "\n";
}

void log_solve(std::ostream& log, const SolveReport& r) {
  log << "solve: lambda " << format_number(r.lambda) << ", " << r.points.size() << " verified point(s)"
      << (r.shortfall ? " (shortfall)" : "") << "\n";
  for (const CriticalPoint& p : r.points)
    log << "  start " << p.start << ": J = " << format_number(p.check.energy.J)
        << ", residual " << format_number(p.check.residual) << "\n";
}

int cmd_assemble(const Config& cfg, std::ostream& log) {
  const FracParams params = params_from(cfg);
  const auto mesh = mesh_from(cfg, params);
  const QuadratureTable table = QuadratureTable::assemble(mesh, params, quadrature_from(cfg));
  const Mesh& m = *mesh;
  int near = 0, max_levels = 0;
  for (const PairRecord& r : table.pairs()) {
    near += r.near ? 1 : 0;
    if (!r.near) max_levels = std::max(max_levels, r.levels);
  }
  Eigen::VectorXd one = Eigen::VectorXd::Ones(m.node_count()), x(m.node_count());
  for (int i = 0; i < m.node_count(); ++i) x[i] = m.node(i);
  json j = base_report("assemble", cfg);
  j["case"] = to_string(case_tag(params));
  const double crit = critical_exponent(params);
  j["critical_exponent"] = std::isfinite(crit) ? json(crit) : json("inf");
  j["mesh"] = {{"n", m.interior_element_count()},
               {"nodes", m.node_count()},
               {"elements", m.element_count()},
               {"exterior_elements", m.element_count() - m.interior_element_count()},
               {"r_ext", m.r_ext()},
               {"shell_width", m.shell_width()},
               {"box", {m.box().lo, m.box().hi}},
               {"h_min", m.h_min()}};
  j["quadrature"] = {{"order", table.options().order},
                     {"depth", table.options().depth},
                     {"pairs", table.pairs().size()},
                     {"near_pairs", near},
                     {"points", table.points().size()},
                     {"max_separated_levels", max_levels},
                     {"tail_relative", table.tail_relative()},
                     {"tail_bound_unit_oscillation", table.tail_bound(1.0)}};
  j["checks"] = {{"seminorm_constant", table.seminorm(one)}, {"seminorm_identity", table.seminorm(x)}};
  const auto dir = output_dir(cfg);
  write_json(dir / "assemble.json", j);
  if (cfg.boolean("output.csv")) write_mesh_csv(dir / "mesh.csv", m);
  log << "assemble: " << m.node_count() << " nodes, " << table.points().size() << " quadrature points\n";
  return kExitOk;
}

json constants_json(const Config& cfg, const WNorm& norm, const FracParams& params) {
  json j = base_report("constants", cfg);
  const Mesh& m = norm.mesh();
  j["case"] = to_string(case_tag(params));
  j["mesh_n"] = m.interior_element_count();
  j["r_ext"] = m.r_ext();
  j["qualifier"] = "numerical lower bounds on the reported mesh";
  if (case_tag(params) == CaseTag::CaseI) {
    const ConstantEstimate c = estimate_c(norm, ascent_from(cfg, false));
    j["c"] = c.value;
    j["c_converged"] = c.converged;
  }
  json cq = json::object(), conv = json::object();
  for (double q : cfg.list("constants.q")) {
    check_q(params, q);
    const ConstantEstimate e = estimate_cq(norm, q, ascent_from(cfg, true));
    cq[format_number(q)] = e.value;
    conv[format_number(q)] = e.converged;
  }
  j["cq"] = cq;
  j["cq_converged"] = conv;
  return j;
}

int cmd_constants(const Config& cfg, std::ostream& log) {
  const FracParams params = params_from(cfg);
  cfg.seed();
  const auto mesh = mesh_from(cfg, params);
  const QuadratureTable table = QuadratureTable::assemble(mesh, params, quadrature_from(cfg));
  const Coefficient a = coefficient_from(cfg, mesh);
  const WNorm norm(table, a);
  const json j = constants_json(cfg, norm, params);
  write_json(output_dir(cfg) / "constants.json", j);
  log << "constants: " << j["cq"].dump() << (j.contains("c") ? ", c = " + format_number(j["c"].get<double>()) : "")
      << "\n";
  return kExitOk;
}

int cmd_certify(const Config& cfg, std::ostream& log) {
  const FracParams params = params_from(cfg);
  const auto mesh = mesh_from(cfg, params);
  const QuadratureTable table = QuadratureTable::assemble(mesh, params, quadrature_from(cfg));
  const Coefficient a = coefficient_from(cfg, mesh);
  const WNorm norm(table, a);
  const CertifyOutcome c = certify_case(cfg, cfg.str("certify.case"), norm, a, params);
  write_json(output_dir(cfg) / "certificate.json", certificate_report("certify", cfg, c));
  log_certificate(log, c.cert);
  return c.cert.interval ? kExitOk : kExitHypothesis;
}

int cmd_solve(const Config& cfg, std::ostream& log) {
  const FracParams params = params_from(cfg);
  cfg.seed();
  const auto mesh = mesh_from(cfg, params);
  const Coefficient a = coefficient_from(cfg, mesh);
  const bool example = cfg.str("nonlinearity.type") == "example31";
  const bool need_cert = cfg.is_auto("solve.lambda") || (example && cfg.is_auto("nonlinearity.rho"));
  std::optional<CertifyOutcome> cert;
  json j = base_report("solve", cfg);
  const auto dir = output_dir(cfg);
  if (need_cert) {
    const QuadratureTable table = QuadratureTable::assemble(mesh, params, quadrature_from(cfg));
    const WNorm norm(table, a);
    cert = certify_case(cfg, cfg.str("certify.case"), norm, a, params);
    j["certificate"] = to_json(cert->cert);
    j["estimates"] = cert->estimates;
    if (cfg.is_auto("solve.lambda") && !cert->cert.interval) {
      write_json(dir / "solve.json", j);
      log_certificate(log, cert->cert);
      return kExitHypothesis;
    }
  }
  double rho = 0.0;
  if (example) {
    if (cfg.is_auto("nonlinearity.rho")) {
      if (cert->rho <= 0.0) throw InputError("nonlinearity.rho = auto needs certify.case = example31");
      rho = cert->rho;
    } else {
      rho = cfg.num("nonlinearity.rho");
    }
  }
  const Nonlinearity nl = nonlinearity_from(cfg, rho);
  json info;
  const SolveReport r = solve_stage(cfg, mesh, params, a, nl, cert ? &*cert : nullptr, info);
  j["solve"] = to_json(r, cfg.boolean("report.timing"));
  j["solve"]["setup"] = info;
  write_json(dir / "solve.json", j);
  if (cfg.boolean("output.csv")) write_solutions(dir, "solution_", *mesh, r);
  log_solve(log, r);
  return kExitOk;
}

int cmd_example31(const Config& cfg, std::ostream& log) {
  if (cfg.str("nonlinearity.type") != "example31") throw InputError("example31 requires nonlinearity.type = example31");
  const FracParams params = params_from(cfg);
  cfg.seed();
  const auto mesh = mesh_from(cfg, params);
  const Coefficient a = coefficient_from(cfg, mesh);
  const auto dir = output_dir(cfg);
  CertifyOutcome cert;
  {
    const QuadratureTable table = QuadratureTable::assemble(mesh, params, quadrature_from(cfg));
    const WNorm norm(table, a);
    json cj = constants_json(cfg, norm, params);
    cj["command"] = "example31";
    write_json(dir / "example31_constants.json", cj);
    cert = certify_case(cfg, "example31", norm, a, params);
  }
  write_json(dir / "example31_certificate.json", certificate_report("example31", cfg, cert));
  log_certificate(log, cert.cert);
  if (!cert.cert.interval) return kExitHypothesis;
  const Nonlinearity nl = nonlinearity_from(cfg, cert.rho);
  json info;
  const SolveReport r = solve_stage(cfg, mesh, params, a, nl, &cert, info);
  json j = base_report("example31", cfg);
  j["solve"] = to_json(r, cfg.boolean("report.timing"));
  j["solve"]["setup"] = info;
  write_json(dir / "example31_solve.json", j);
  if (cfg.boolean("output.csv")) {
    write_mesh_csv(dir / "mesh.csv", *mesh);
    write_solutions(dir, "example31_solution_", *mesh, r);
  }
  log_solve(log, r);
  return kExitOk;
}

}  // namespace

FracParams params_from(const Config& cfg) {
  FracParams p;
  p.dim = cfg.integer("params.dim");
  p.s = cfg.num("params.s");
  p.p = cfg.num("params.p");
  p.validate();
  if (p.dim != 1) throw InputError("only params.dim = 1 is implemented");
  return p;
}

QuadratureOptions quadrature_from(const Config& cfg) {
  QuadratureOptions q;
  q.order = cfg.integer("quad.order");
  q.depth = cfg.integer("quad.depth");
  q.admissibility = cfg.num("quad.admissibility");
  return q;
}

std::shared_ptr<const Mesh> mesh_from(const Config& cfg, const FracParams& params) {
  const std::vector<double> dom = cfg.list("mesh.domain");
  if (dom.size() != 2) throw InputError("mesh.domain must be lo,hi");
  const Interval omega{dom[0], dom[1]};
  if (!(omega.hi > omega.lo)) throw InputError("mesh.domain needs lo < hi");
  const int n = cfg.integer("mesh.n");
  if (n < 2) throw InputError("mesh.n must be at least 2");
  double r_ext;
  if (cfg.is_auto("mesh.r_ext")) {
    const double tol = cfg.num("mesh.tail_tol");
    if (!(tol > 0.0 && tol < 1.0)) throw InputError("mesh.tail_tol must lie in (0, 1)");
    r_ext = tail_radius(params, tol, omega.length() / n, omega.length());
  } else {
    r_ext = cfg.num("mesh.r_ext");
  }
  return std::make_shared<const Mesh>(Mesh::build(omega, n, r_ext));
}

Coefficient coefficient_from(const Config& cfg, std::shared_ptr<const Mesh> mesh) {
  const std::string type = cfg.str("coefficient.type");
  const double value = cfg.num("coefficient.value");
  if (type == "constant") return Coefficient::constant(std::move(mesh), value);
  if (type == "affine") {
    const double slope = cfg.num("coefficient.slope");
    return Coefficient::from_function(std::move(mesh), [value, slope](double x) { return value + slope * x; });
  }
  throw InputError("coefficient.type must be constant or affine");
}

Nonlinearity nonlinearity_from(const Config& cfg, double rho) {
  const std::string type = cfg.str("nonlinearity.type");
  if (type == "example31") {
    if (!(rho > 0.0)) {
      if (cfg.is_auto("nonlinearity.rho")) throw InputError("nonlinearity.rho = auto is resolved by the example31 certificate");
      rho = cfg.num("nonlinearity.rho");
    }
    return example31_nonlinearity(rho, cfg.num("nonlinearity.q"), cfg.num("nonlinearity.phi"));
  }
  if (type == "polynomial") return polynomial_nonlinearity(cfg.list("nonlinearity.coeffs"));
  if (type == "shifted_power") return shifted_power_nonlinearity(cfg.num("nonlinearity.c"), cfg.num("nonlinearity.k"));
  if (type == "cosine") return cosine_nonlinearity();
  if (type == "table") return tabulated_nonlinearity(cfg.list("nonlinearity.t"), cfg.list("nonlinearity.values"));
  throw InputError("unknown nonlinearity.type '" + type + "'");
}

json to_json(const Certificate& c) {
  json j;
  j["case"] = c.kind;
  j["case_tag"] = to_string(c.case_tag);
  j["constants"] = c.constants;
  j["mesh"] = {{"n", c.mesh.n}, {"r_ext", c.mesh.r_ext}};
  json hyp = json::object();
  for (const HypothesisResult& h : c.hypotheses)
    hyp[h.name] = {{"pass", h.pass}, {"margin", h.margin}, {"gating", h.gating}};
  j["hypotheses"] = hyp;
  j["candidate"] = interval_json(c.candidate);
  j["interval"] = c.interval ? interval_json(*c.interval) : json(nullptr);
  if (c.verbatim_interval) j["verbatim_interval"] = interval_json(*c.verbatim_interval);
  j["certified"] = c.interval.has_value();
  j["disclaimers"] = c.disclaimers;
  return j;
}

json to_json(const EnergyBreakdown& e) {
  return {{"T", e.T}, {"S", e.S}, {"lambda", e.lambda}, {"J", e.J}, {"seminorm", e.seminorm}, {"potential", e.potential}};
}

json to_json(const SolveReport& r, bool timing) {
  json j;
  j["lambda"] = r.lambda;
  j["k_target"] = r.k_target;
  j["found"] = r.points.size();
  j["shortfall"] = r.shortfall;
  json pts = json::array();
  for (const CriticalPoint& p : r.points) {
    pts.push_back({{"start", p.start},
                   {"method", p.method},
                   {"iterations", p.iterations},
                   {"residual", p.check.residual},
                   {"fresh_residual", p.check.fresh_residual},
                   {"neumann_max", p.check.neumann_max},
                   {"energy", to_json(p.check.energy)},
                   {"values", std::vector<double>(p.u.data(), p.u.data() + p.u.size())}});
  }
  j["points"] = pts;
  j["distances"] = r.distances;
  json starts = json::array();
  for (const StartRecord& s : r.starts)
    starts.push_back({{"index", s.index},
                      {"kind", s.kind},
                      {"initial_norm", s.initial_norm},
                      {"method", s.method},
                      {"outcome", s.outcome},
                      {"iterations", s.iterations},
                      {"residual", s.residual},
                      {"monotone", s.monotone}});
  j["starts"] = starts;
  if (timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

int run_command(const std::string& command, const Config& cfg, std::ostream& log) {
  if (command == "assemble") return cmd_assemble(cfg, log);
  if (command == "constants") return cmd_constants(cfg, log);
  if (command == "certify") return cmd_certify(cfg, log);
  if (command == "solve") return cmd_solve(cfg, log);
  if (command == "example31") return cmd_example31(cfg, log);
  throw InputError("unknown command '" + command + "' (assemble, constants, certify, solve, example31)");
}

int run(const std::string& command, const std::string& config_path, std::ostream& log, std::ostream& err) {
  try {
    return run_command(command, Config::load(config_path), log);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace fracneumann
