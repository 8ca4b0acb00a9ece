#pragma once

#include <string>

#include "fcub/interpolation.hpp"
#include "fcub/measure.hpp"
#include "fcub/moments.hpp"
#include "fcub/polynomial.hpp"

namespace fcub {

/// The M x M matrix S_{i,j} = sum_l mu_l L_j(S_l(x_i)). Row sums equal 1
/// because the Lagrange basis is a partition of unity and the measure weights
/// sum to 1; this is validated at assembly.
struct SMatrix {
  Matrix s;
  std::string provenance;
  double max_row_sum_deviation = 0.0;
};

SMatrix assemble_s(const Ifs& ifs, const MeasureSpec& mu, const TensorGrid& grid);

struct SolverConfig {
  double tolerance = 1e-13;        // on ||S^T v - v||_inf per unit sup norm
  long max_iterations = 100000;
  double ones_guard = 1e-8;        // |v . 1| below this triggers the dense path
  int dense_max_size = 4096;
  double simple_window = 1e-8;     // eigenvalues this close to 1 must be unique
  double gap_warn_threshold = 1e-6;
};

struct SolveInfo {
  Vector w;
  double residual = 0.0;       // ||S^T w - w||_inf of the returned vector
  long iterations = 0;
  bool used_dense_fallback = false;
  double lambda2 = 0.0;        // |second eigenvalue| estimate
  double spectral_gap = 0.0;   // 1 - lambda2
  bool gap_warning = false;    // lambda2 within gap_warn_threshold of 1
};

/// Solves S^T w = w with w . 1 = 1. Power iteration from the all-ones vector
/// (sup-norm normalized); a dense eigendecomposition takes over when the
/// iteration exceeds its budget or the iterate is nearly orthogonal to the
/// ones vector. Fails when the eigenvalue 1 is not numerically simple.
SolveInfo solve_weights(const SMatrix& s, const SolverConfig& config = {});

/// Interpolatory cubature rule: the grid points plus the weight eigenvector.
/// Weights are real and may be negative; they always sum to 1.
struct CubatureRule {
  std::vector<Vector> points;
  Vector weights;
  double residual = 0.0;
  double spectral_gap = 0.0;
  bool gap_warning = false;
  SpaceSpec space{SpaceSpec::Kind::tensor, 1, 0, {}};

  int size() const { return static_cast<int>(points.size()); }
  double weight_l1() const { return weights.lpNorm<1>(); }
};

CubatureRule build_rule(const Ifs& ifs, const MeasureSpec& mu, const TensorGrid& grid,
                        const SolverConfig& config = {});

struct ExactnessReport {
  double max_error = 0.0;
  MultiIndex worst_monomial;
};

/// Max over the basis monomials of the given space of |Q[x^alpha] - m_alpha|.
/// Check a tensor rule against Q_N in the IFS-invariant case, against the
/// total-degree space P_N otherwise.
ExactnessReport verify_exactness(const CubatureRule& rule, const MomentTable& table,
                                 const SpaceSpec& space);

}  // namespace fcub
