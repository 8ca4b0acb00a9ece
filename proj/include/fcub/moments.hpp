#pragma once

#include <map>
#include <vector>

#include "fcub/polynomial.hpp"

namespace fcub {

/// Exact (in exact arithmetic) monomial moments m_alpha = integral of
/// x^alpha against the invariant measure, for all |alpha|_1 <= max_degree.
/// Ground truth for every cubature test in this project.
class MomentTable {
 public:
  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }

  double moment(const MultiIndex& alpha) const;
  const std::map<MultiIndex, double, GradedLexLess>& values() const { return values_; }
  /// Solve residual of the degree-d system, index d-1.
  const std::vector<double>& residuals() const { return residuals_; }

 private:
  friend MomentTable compute_moments(const Ifs& ifs, const MeasureSpec& mu, int k);
  MomentTable(int dim, int max_degree) : dim_(dim), max_degree_(max_degree) {}

  int dim_;
  int max_degree_;
  std::map<MultiIndex, double, GradedLexLess> values_;
  std::vector<double> residuals_;
};

/// Degree-by-degree moment recursion: for each d the unknowns of degree d
/// satisfy (I - F_d^T) M_d = R_d, where F_d is the homogeneous Ruelle block
/// and R_d pairs the lower-degree part of the expanded monomial images with
/// already-known moments. Every solve is residual-checked.
MomentTable compute_moments(const Ifs& ifs, const MeasureSpec& mu, int k);

/// Linear pairing of coefficients with moments; requires deg p <= table degree.
double integrate_polynomial(const Polynomial& p, const MomentTable& table);

}  // namespace fcub
