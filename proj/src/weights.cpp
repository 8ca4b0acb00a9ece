#include "fcub/weights.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "fcub/errors.hpp"

namespace fcub {

SMatrix assemble_s(const Ifs& ifs, const MeasureSpec& mu, const TensorGrid& grid) {
  if (ifs.dim() != grid.dim()) {
    throw ValidationError("assemble_s: grid dimension does not match the system");
  }
  if (mu.size() != ifs.map_count()) {
    throw ValidationError("assemble_s: measure does not match the system");
  }
  const int size = grid.size();
  SMatrix out;
  out.s = Matrix::Zero(size, size);
  std::ostringstream tag;
  tag << "L=" << ifs.map_count() << " n=" << ifs.dim() << " Q" << grid.degree()
      << " M=" << size;
  out.provenance = tag.str();

  for (int i = 0; i < size; ++i) {
    for (int ell = 0; ell < ifs.map_count(); ++ell) {
      out.s.row(i) +=
          mu.weight(ell) * grid.lagrange_eval_all(ifs.map(ell)(grid.points()[i]));
    }
    const double deviation = std::abs(out.s.row(i).sum() - 1.0);
    out.max_row_sum_deviation = std::max(out.max_row_sum_deviation, deviation);
    if (deviation > 1e-8) {
      std::ostringstream os;
      os << "assemble_s: row " << i << " sums to 1 " << (out.s.row(i).sum() - 1.0 > 0 ? "+" : "-")
         << " " << deviation << "; interpolation is unstable at this degree";
      throw NumericalError(os.str());
    }
  }
  return out;
}

namespace {

// |lambda_2| from the invariant complement of the converged eigenvector: the
// row sums of S are 1, so {u : u . 1 = 0} is invariant under S^T and the
// iteration stays there up to roundoff, which the projection removes.
double deflated_lambda2(const Matrix& st, const Vector& w) {
  const Eigen::Index size = st.rows();
  if (size < 2) return 0.0;
  std::mt19937_64 rng(0x2545f4914f6cdd1dULL);
  Vector u(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    u[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  }
  u -= w * u.sum();
  double norm = u.norm();
  if (norm == 0.0) return 0.0;
  u /= norm;

  double ratio = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vector v = st * u;
    v -= w * v.sum();
    norm = v.norm();
    if (norm == 0.0) return 0.0;
    const double next = norm;
    u = v / norm;
    if (it > 10 && std::abs(next - ratio) <= 1e-4 * std::max(next, 1e-300)) {
      return next;
    }
    ratio = next;
  }
  return ratio;
}

SolveInfo dense_solve(const Matrix& st, const SolverConfig& config) {
  const Eigen::Index size = st.rows();
  if (size > config.dense_max_size) {
    throw NumericalError(
        "solve_weights: power iteration stalled and the matrix exceeds the dense "
        "fallback size");
  }
  Eigen::EigenSolver<Matrix> es(st);
  if (es.info() != Eigen::Success) {
    throw NumericalError("solve_weights: dense eigendecomposition failed");
  }
  const auto values = es.eigenvalues();

  int near_one = -1;
  int near_one_count = 0;
  for (Eigen::Index j = 0; j < size; ++j) {
    if (std::abs(values[j] - std::complex<double>(1.0, 0.0)) <= config.simple_window) {
      ++near_one_count;
      near_one = static_cast<int>(j);
    }
  }
  if (near_one_count == 0) {
    throw NumericalError("solve_weights: no eigenvalue of S^T lies near 1");
  }
  if (near_one_count > 1) {
    throw NumericalError(
        "solve_weights: eigenvalue 1 not numerically simple (multiple eigenvalues "
        "within the window); the non-invariant case carries no guarantee here");
  }

  Eigen::VectorXcd vc = es.eigenvectors().col(near_one);
  Eigen::Index pivot = 0;
  vc.cwiseAbs().maxCoeff(&pivot);
  vc /= vc[pivot];  // phase-normalize so the vector is essentially real
  Vector v = vc.real();

  const double pairing = v.sum();
  if (std::abs(pairing) < config.ones_guard) {
    throw NumericalError(
        "solve_weights: eigenvector of S^T nearly orthogonal to the ones vector");
  }

  SolveInfo info;
  info.used_dense_fallback = true;
  info.w = v / pairing;
  info.residual = (st * info.w - info.w).lpNorm<Eigen::Infinity>();

  double second = 0.0;
  for (Eigen::Index j = 0; j < size; ++j) {
    if (j == near_one) continue;
    second = std::max(second, std::abs(values[j]));
  }
  info.lambda2 = second;
  return info;
}

}  // namespace

SolveInfo solve_weights(const SMatrix& sm, const SolverConfig& config) {
  const Matrix st = sm.s.transpose();
  const Eigen::Index size = st.rows();

  SolveInfo info;
  bool converged = false;
  Vector v = Vector::Ones(size);  // sup norm already 1
  for (info.iterations = 0; info.iterations < config.max_iterations; ++info.iterations) {
    const Vector y = st * v;
    const double residual = (y - v).lpNorm<Eigen::Infinity>();
    if (residual <= config.tolerance * v.lpNorm<Eigen::Infinity>()) {
      converged = true;
      break;
    }
    const double norm = y.lpNorm<Eigen::Infinity>();
    if (norm == 0.0) break;
    v = y / norm;
  }

  const double pairing = v.sum();
  if (!converged || std::abs(pairing) < config.ones_guard) {
    SolveInfo dense = dense_solve(st, config);
    dense.iterations = info.iterations;
    dense.spectral_gap = 1.0 - dense.lambda2;
    dense.gap_warning = dense.lambda2 > 1.0 - config.gap_warn_threshold;
    return dense;
  }

  info.w = v / pairing;
  info.residual = (st * info.w - info.w).lpNorm<Eigen::Infinity>();
  // The pairing division can cost a digit; a few more multiplications restore
  // it (w . 1 stays 1 because the row sums of S are 1).
  for (int polish = 0; polish < 2000 && info.residual > config.tolerance; ++polish) {
    info.w = st * info.w;
    info.w /= info.w.sum();
    info.residual = (st * info.w - info.w).lpNorm<Eigen::Infinity>();
  }

  info.lambda2 = deflated_lambda2(st, info.w);
  info.spectral_gap = 1.0 - info.lambda2;
  info.gap_warning = info.lambda2 > 1.0 - config.gap_warn_threshold;
  return info;
}

CubatureRule build_rule(const Ifs& ifs, const MeasureSpec& mu, const TensorGrid& grid,
                        const SolverConfig& config) {
  const SMatrix sm = assemble_s(ifs, mu, grid);
  const SolveInfo info = solve_weights(sm, config);
  CubatureRule rule;
  rule.points = grid.points();
  rule.weights = info.w;
  rule.residual = info.residual;
  rule.spectral_gap = info.spectral_gap;
  rule.gap_warning = info.gap_warning;
  rule.space = SpaceSpec::tensor(grid.dim(), grid.degree());
  return rule;
}

ExactnessReport verify_exactness(const CubatureRule& rule, const MomentTable& table,
                                 const SpaceSpec& space) {
  if (table.dim() != space.dim) {
    throw ValidationError("verify_exactness: dimension mismatch");
  }
  if (table.max_degree() < space.degree * (space.kind == SpaceSpec::Kind::tensor
                                               ? space.dim
                                               : 1)) {
    // Tensor monomials reach total degree n*N.
    throw ValidationError("verify_exactness: moment table degree too small");
  }
  ExactnessReport report;
  report.worst_monomial = MultiIndex{std::vector<int>(space.dim, 0)};
  for (const MultiIndex& alpha : space.basis) {
    double quad = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
      double value = rule.weights[i];
      for (int axis = 0; axis < space.dim; ++axis) {
        for (int e = 0; e < alpha.exponents[axis]; ++e) value *= rule.points[i][axis];
      }
      quad += value;
    }
    const double error = std::abs(quad - table.moment(alpha));
    if (error > report.max_error) {
      report.max_error = error;
      report.worst_monomial = alpha;
    }
  }
  return report;
}

}  // namespace fcub
