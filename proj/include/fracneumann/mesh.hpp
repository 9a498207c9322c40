#pragma once

#include <iosfwd>
#include <vector>

namespace fracneumann {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
};

enum class PairClass { InteriorInterior, InteriorExterior, ExteriorInterior };

/// Ordered pair of elements (e, f) contributing to the cross-shaped set
/// T(Omega): at least one of the two elements lies in Omega.
struct ElementPair {
  int first;
  int second;
  PairClass cls;
};

/// One-dimensional mesh of Omega = (lo, hi) with a geometrically graded
/// exterior layer on both sides.
///
/// Nodes are stored in ascending order: left exterior nodes, the n + 1
/// interior nodes (including the two boundary points), right exterior nodes.
/// Element e spans [node e, node e + 1].  The computational box is the set of
/// points within distance R_ext of every point of Omega, i.e.
/// [hi - R_ext, lo + R_ext], so the exterior layer has width R_ext - |Omega|.
class Mesh {
 public:
  static constexpr double kGradingRatio = 1.5;

  /// Uniform interior grid with n elements.  Requires n >= 2 and
  /// R_ext > diameter(Omega).
  static Mesh build(Interval domain, int n, double r_ext);

  /// Bisects every element.  Domain, box and R_ext are unchanged, and every
  /// node of this mesh is a node of the refined one.
  Mesh refined() const;

  const std::vector<double>& nodes() const { return nodes_; }
  double node(int i) const { return nodes_[i]; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int element_count() const { return node_count() - 1; }

  int first_interior_node() const { return first_interior_; }
  int interior_node_count() const { return interior_elements_ + 1; }
  int first_interior_element() const { return first_interior_; }
  int interior_element_count() const { return interior_elements_; }
  int interior_resolution() const { return interior_elements_; }

  bool is_interior_node(int i) const {
    return i >= first_interior_ && i <= first_interior_ + interior_elements_;
  }
  bool is_interior_element(int e) const {
    return e >= first_interior_ && e < first_interior_ + interior_elements_;
  }

  double element_left(int e) const { return nodes_[e]; }
  double element_right(int e) const { return nodes_[e + 1]; }
  double element_size(int e) const { return nodes_[e + 1] - nodes_[e]; }

  Interval domain() const { return domain_; }
  double measure() const { return domain_.length(); }
  double r_ext() const { return r_ext_; }
  /// Distance from the boundary of Omega to the edge of the box.
  double shell_width() const { return r_ext_ - domain_.length(); }
  Interval box() const { return {nodes_.front(), nodes_.back()}; }
  /// Smallest interior element size.
  double h_min() const;

  /// Element containing x (the left one at shared nodes); -1 outside the box.
  int locate(double x) const;

  /// All ordered element pairs with at least one interior element, in
  /// lexicographic order.  (ext, ext) pairs are never produced.
  std::vector<ElementPair> element_pairs() const;

  /// CSV with columns index,x,interior.
  void write_csv(std::ostream& out) const;

 private:
  Mesh() = default;

  std::vector<double> nodes_;
  Interval domain_{};
  double r_ext_ = 0.0;
  int first_interior_ = 0;
  int interior_elements_ = 0;
};

}  // namespace fracneumann
