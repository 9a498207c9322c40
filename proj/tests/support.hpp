#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <string>

#include "fracneumann/kernel.hpp"
#include "fracneumann/mesh.hpp"
#include "fracneumann/model.hpp"
#include "fracneumann/space.hpp"

namespace testing {

using fracneumann::FracParams;
using fracneumann::Interval;
using fracneumann::Mesh;

inline std::shared_ptr<const Mesh> unit_mesh(int n, double r_ext) {
  return std::make_shared<const Mesh>(Mesh::build({0.0, 1.0}, n, r_ext));
}

inline std::shared_ptr<const Mesh> auto_mesh(const FracParams& params, int n, double tol = 1e-8) {
  return unit_mesh(n, fracneumann::tail_radius(params, tol, 1.0 / n, 1.0));
}

/// Smooth random nodal vector: a few cosine modes plus small noise.
inline Eigen::VectorXd random_vector(const Mesh& m, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double c0 = g(rng), c1 = g(rng), c2 = g(rng);
  Eigen::VectorXd u(m.node_count());
  for (int i = 0; i < m.node_count(); ++i) {
    const double x = std::clamp(m.node(i), -1.0, 2.0);
    u[i] = scale * (c0 + c1 * std::cos(3.14159 * x) + 0.5 * c2 * std::sin(6.2832 * x) + 0.1 * g(rng));
  }
  return u;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("fracneumann_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing
