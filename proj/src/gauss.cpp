#include "fracneumann/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace fracneumann {

namespace {

Rule1D compute_gauss_legendre(int n) {
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) { p1 = x; p0 = 1.0; }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1,1] -> [0,1]; node i is the largest, store ascending.
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.weights[n - 1 - i] = 0.5 * w;
    rule.weights[i] = 0.5 * w;
  }
  return rule;
}

}  // namespace

const Rule1D& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("Gauss order must be positive");
  static std::mutex mutex;
  static std::map<int, Rule1D> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
  return it->second;
}

Rule1D power_rule(double beta, double lo, double hi, int order) {
  if (!(beta > -1.0)) throw std::invalid_argument("power_rule requires beta > -1");
  const Rule1D& g = gauss_legendre(order);
  const double e = beta + 1.0;
  const double s_lo = std::pow(lo, e);
  const double s_hi = std::pow(hi, e);
  Rule1D rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int k = 0; k < order; ++k) {
    const double sigma = s_lo + (s_hi - s_lo) * g.nodes[k];
    rule.nodes[k] = std::pow(sigma, 1.0 / e);
    rule.weights[k] = g.weights[k] * (s_hi - s_lo) / e;
  }
  return rule;
}

}  // namespace fracneumann
