#include "fracneumann/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "fracneumann/params.hpp"

namespace fracneumann {

namespace {

// Distances from the boundary of the exterior nodes: h, h + 1.5h, ...
// clipped so that the last one is exactly `width`.
std::vector<double> graded_offsets(double h, double width) {
  std::vector<double> offsets;
  double size = h;
  double d = 0.0;
  while (true) {
    const double next = d + size;
    if (next >= width) {
      // Merge a sliver into the previous element rather than leave it tiny.
      if (!offsets.empty() && width - d < 0.5 * size / Mesh::kGradingRatio) offsets.back() = width;
      else offsets.push_back(width);
      break;
    }
    offsets.push_back(next);
    d = next;
    size *= Mesh::kGradingRatio;
  }
  return offsets;
}

}  // namespace

Mesh Mesh::build(Interval domain, int n, double r_ext) {
  if (!(domain.length() > 0.0) || !std::isfinite(domain.length()))
    throw InputError("degenerate domain: zero measure");
  if (n < 2) throw InputError("interior resolution n must be at least 2");
  if (!(r_ext > domain.length()))
    throw InputError("truncation radius R_ext must exceed the diameter of Omega");

  Mesh mesh;
  mesh.domain_ = domain;
  mesh.r_ext_ = r_ext;
  mesh.interior_elements_ = n;

  const double h = domain.length() / n;
  const std::vector<double> offsets = graded_offsets(h, r_ext - domain.length());

  mesh.nodes_.reserve(offsets.size() * 2 + n + 1);
  for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) mesh.nodes_.push_back(domain.lo - *it);
  mesh.first_interior_ = static_cast<int>(offsets.size());
  for (int k = 0; k <= n; ++k) {
    mesh.nodes_.push_back(k == n ? domain.hi : domain.lo + k * h);
  }
  for (double d : offsets) mesh.nodes_.push_back(domain.hi + d);
  return mesh;
}

Mesh Mesh::refined() const {
  Mesh fine;
  fine.domain_ = domain_;
  fine.r_ext_ = r_ext_;
  fine.interior_elements_ = 2 * interior_elements_;
  fine.first_interior_ = 2 * first_interior_;
  fine.nodes_.reserve(2 * nodes_.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    fine.nodes_.push_back(nodes_[i]);
    fine.nodes_.push_back(0.5 * (nodes_[i] + nodes_[i + 1]));
  }
  fine.nodes_.push_back(nodes_.back());
  return fine;
}

double Mesh::h_min() const {
  double h = element_size(first_interior_);
  for (int e = first_interior_; e < first_interior_ + interior_elements_; ++e)
    h = std::min(h, element_size(e));
  return h;
}

int Mesh::locate(double x) const {
  if (x < nodes_.front() || x > nodes_.back()) return -1;
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
  int idx = static_cast<int>(it - nodes_.begin());
  return std::clamp(idx - 1, 0, element_count() - 1);
}

std::vector<ElementPair> Mesh::element_pairs() const {
  std::vector<ElementPair> pairs;
  const int m = element_count();
  for (int e = 0; e < m; ++e) {
    const bool ie = is_interior_element(e);
    for (int f = 0; f < m; ++f) {
      const bool jf = is_interior_element(f);
      if (ie && jf) pairs.push_back({e, f, PairClass::InteriorInterior});
      else if (ie) pairs.push_back({e, f, PairClass::InteriorExterior});
      else if (jf) pairs.push_back({e, f, PairClass::ExteriorInterior});
    }
  }
  return pairs;
}

void Mesh::write_csv(std::ostream& out) const {
  out << "index,x,interior\n";
  char buf[64];
  for (int i = 0; i < node_count(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", nodes_[i]);
    out << i << ',' << buf << ',' << (is_interior_node(i) ? 1 : 0) << '\n';
  }
}

}  // namespace fracneumann
