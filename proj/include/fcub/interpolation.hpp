#pragma once

#include <vector>

#include "fcub/ifs.hpp"

namespace fcub {

struct Chebyshev1d {
  std::vector<double> nodes;    // ascending, strictly inside (a, b)
  std::vector<double> weights;  // barycentric weights paired with the nodes
};

/// N+1 Chebyshev points of the first kind mapped to [a, b], with the
/// closed-form barycentric weights (any common scaling of the weights leaves
/// the barycentric formula unchanged).
Chebyshev1d chebyshev_nodes(double a, double b, int degree);

/// Tensor-product interpolation grid for the space Q_N on a box: per-axis 1D
/// nodes with barycentric weights, flattened row-major with the first axis
/// slowest. Lagrange basis evaluation uses the second barycentric form, which
/// is valid at arbitrary points, inside the box or not.
class TensorGrid {
 public:
  static TensorGrid chebyshev(const BoundingBox& box, int degree);
  /// Arbitrary per-axis nodes (all axes the same count); barycentric weights
  /// are computed from the node differences. Used for alternative unisolvent
  /// grids; nodes may touch the box boundary.
  static TensorGrid from_axis_nodes(const BoundingBox& box,
                                    std::vector<std::vector<double>> axis_nodes);

  int dim() const { return box_.dim(); }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(points_.size()); }
  const BoundingBox& box() const { return box_; }
  const std::vector<Vector>& points() const { return points_; }
  const std::vector<double>& axis_nodes(int axis) const { return nodes_.at(axis); }
  const std::vector<double>& axis_weights(int axis) const { return weights_.at(axis); }

  /// Values of all M Lagrange basis polynomials at x (unit vector when x
  /// coincides with a grid point).
  Vector lagrange_eval_all(const Vector& x) const;

  /// Max of sum_i |L_i(x)| over a deterministic low-discrepancy sample of the
  /// box; a lower bound on the Lebesgue constant, for diagnostics.
  double lebesgue_estimate(int sample_count) const;

 private:
  TensorGrid(BoundingBox box, int degree, std::vector<std::vector<double>> nodes,
             std::vector<std::vector<double>> weights);

  void eval_axis(int axis, double x, std::vector<double>& out) const;

  BoundingBox box_;
  int degree_;
  std::vector<std::vector<double>> nodes_;
  std::vector<std::vector<double>> weights_;
  std::vector<Vector> points_;
};

}  // namespace fcub
