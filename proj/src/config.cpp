#include "fracneumann/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fracneumann/params.hpp"

namespace fracneumann {

const std::vector<ConfigKey>& config_schema() {
  static const std::vector<ConfigKey> schema = {
      {"mesh.domain", "0,1", "interval lo,hi of Omega"},
      {"mesh.n", "64", "interior elements"},
      {"mesh.r_ext", "auto", "extension radius, or auto to pick it from mesh.tail_tol"},
      {"mesh.tail_tol", "1e-8", "relative kernel tail tolerance used when mesh.r_ext = auto"},
      {"params.dim", "1", "spatial dimension N (only 1 is implemented)"},
      {"params.s", "0.5", "fractional order s in (0,1)"},
      {"params.p", "2", "exponent p > 1"},
      {"quad.order", "6", "Gauss points per direction and cell"},
      {"quad.depth", "8", "dyadic levels toward the kernel singularity"},
      {"quad.admissibility", "2", "separated pairs need dist >= admissibility * size"},
      {"coefficient.type", "constant", "constant | affine"},
      {"coefficient.value", "1", "a(x) = value + slope * x"},
      {"coefficient.slope", "0", "slope of the affine coefficient"},
      {"nonlinearity.type", "example31", "example31 | polynomial | shifted_power | cosine | table"},
      {"nonlinearity.coeffs", "0,1", "polynomial coefficients c0,c1,..."},
      {"nonlinearity.c", "1", "shifted_power: h = c + |t|^k"},
      {"nonlinearity.k", "1", "shifted_power exponent"},
      {"nonlinearity.t", "-1,1", "table abscissae"},
      {"nonlinearity.values", "1,1", "table values"},
      {"nonlinearity.q", "4", "example31 exponent q"},
      {"nonlinearity.rho", "auto", "example31 rho, or auto for the lower bound plus example31.rho_margin"},
      {"nonlinearity.phi", "1", "example31 constant factor phi"},
      {"certify.case", "example31", "case1 | case2 | corollary | example31"},
      {"certify.gamma", "1", "case1 gamma"},
      {"certify.eta", "2", "case1 eta > gamma"},
      {"certify.mu", "0", "constant mu of (Ah1); 0 skips the check"},
      {"certify.t", "1", "growth exponent t < p of (Ah1)/(Bh1)"},
      {"certify.epsilon", "auto", "case2 epsilon, or auto = delta / (2 kappa)"},
      {"certify.delta", "1", "case2 and corollary delta"},
      {"certify.b", "0", "constant b of (Bh1); 0 skips the check"},
      {"certify.beta", "0.5", "corollary decay exponent beta in [0, p-1)"},
      {"certify.phi", "1", "corollary constant phi"},
      {"constants.q", "4", "comma-separated q values for c_q"},
      {"constants.starts", "50", "multistart count for c_q"},
      {"constants.max_iter", "5000", "iterations per start"},
      {"constants.tol", "1e-9", "dual gradient tolerance"},
      {"constants.c", "auto", "override for c (Case I)"},
      {"constants.c1", "auto", "override for c_1 (Case II)"},
      {"constants.cq", "auto", "override for c_q (Case II)"},
      {"solve.lambda", "auto", "lambda, or auto = geometric mean of the certified interval"},
      {"solve.tol", "1e-6", "weak residual tolerance"},
      {"solve.max_iter", "20000", "descent iterations per start"},
      {"solve.starts", "12", "number of starts"},
      {"solve.shift", "1", "deflation shift"},
      {"solve.power", "auto", "deflation power, auto = p"},
      {"solve.distinct", "1e-3", "sup-norm distinctness threshold"},
      {"solve.k_target", "3", "number of solutions sought"},
      {"solve.delta", "auto", "constant start level u_delta, auto = certificate delta (or 1)"},
      {"solve.epsilon", "auto", "start norm level epsilon, auto = certificate epsilon (or delta / 2)"},
      {"example31.rho_margin", "0.1", "margin added to the rho lower bound"},
      {"seed", "", "random seed, required by randomized commands"},
      {"output.dir", ".", "directory for reports and CSV files"},
      {"output.csv", "true", "write mesh and solution CSV files"},
      {"report.timing", "false", "include wall time in reports"},
  };
  return schema;
}

namespace {

const ConfigKey* find_key(const std::string& key) {
  for (const ConfigKey& k : config_schema())
    if (k.key == key) return &k;
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
    throw InputError("config key " + key + ": not a number: '" + text + "'");
  return v;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(source + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!find_key(key)) throw InputError(source + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (cfg.values_.count(key))
      throw InputError(source + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path + ": invalid JSON: " + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object()) throw InputError(path + ": report has no config object");
    std::map<std::string, std::string> values;
    for (const auto& [k, v] : j["config"].items()) {
      if (!v.is_string()) throw InputError(path + ": config value for " + k + " must be a string");
      values[k] = v.get<std::string>();
    }
    return from_map(values);
  }
  std::istringstream s(text);
  return parse(s, path);
}

Config Config::from_map(const std::map<std::string, std::string>& values) {
  Config cfg;
  for (const auto& [k, v] : values) {
    if (!find_key(k)) throw InputError("unknown key '" + k + "'");
    if (k == "seed" && v.empty()) continue;
    cfg.values_[k] = v;
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::str(const std::string& key) const {
  const auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  const ConfigKey* k = find_key(key);
  if (!k) throw std::logic_error("config key not in schema: " + key);
  return k->default_value;
}

double Config::num(const std::string& key) const { return parse_double(key, str(key)); }

int Config::integer(const std::string& key) const {
  const double v = num(key);
  if (v != static_cast<double>(static_cast<int>(v))) throw InputError("config key " + key + " must be an integer");
  return static_cast<int>(v);
}

bool Config::boolean(const std::string& key) const {
  const std::string v = str(key);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw InputError("config key " + key + " must be true or false");
}

std::vector<double> Config::list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(str(key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
  if (out.empty()) throw InputError("config key " + key + " must be a non-empty list");
  return out;
}

std::uint64_t Config::seed() const {
  if (!has("seed") || trim(str("seed")).empty()) throw InputError("the seed key is required for randomized commands");
  const std::string t = trim(str("seed"));
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size() || errno == ERANGE || t[0] == '-')
    throw InputError("seed must be a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

std::map<std::string, std::string> Config::effective() const {
  std::map<std::string, std::string> out;
  for (const ConfigKey& k : config_schema()) {
    const std::string v = str(k.key);
    if (k.key == "seed" && v.empty()) continue;
    out[k.key] = v;
  }
  return out;
}

void Config::set(const std::string& key, const std::string& value) {
  if (!find_key(key)) throw InputError("unknown key '" + key + "'");
  values_[key] = value;
}

}  // namespace fracneumann
