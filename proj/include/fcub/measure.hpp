#pragma once

#include <vector>

#include "fcub/ifs.hpp"

namespace fcub {

/// Probability vector defining the invariant measure of an IFS. Weights are
/// strictly positive and sum to 1 (renormalized on construction when the
/// input drifts by at most 1e-6, rejected otherwise).
class MeasureSpec {
 public:
  enum class Origin { explicit_weights, hausdorff };

  static MeasureSpec from_weights(Vector weights);

  const Vector& weights() const { return weights_; }
  int size() const { return static_cast<int>(weights_.size()); }
  double weight(int ell) const { return weights_[ell]; }
  Origin origin() const { return origin_; }

  /// Dimension d used when the weights came from the Hausdorff choice
  /// mu_l = rho_l^d; NaN for explicit weights.
  double hausdorff_dim() const { return hausdorff_dim_; }

 private:
  friend MeasureSpec hausdorff_weights(const Ifs& ifs);
  MeasureSpec(Vector weights, Origin origin, double d);

  Vector weights_;
  Origin origin_;
  double hausdorff_dim_;
};

/// Unique d solving sum_l rho_l^d = 1, by bisection on the strictly
/// decreasing map d -> sum rho_l^d (upper end found by doubling from 1).
double hausdorff_dimension(const std::vector<double>& rhos);

/// mu_l = rho_l^d with d = hausdorff_dimension of the map contractions.
/// For similar IFS satisfying the open set condition this is the normalized
/// Hausdorff measure; for general affine maps it is a formal choice.
MeasureSpec hausdorff_weights(const Ifs& ifs);

}  // namespace fcub
