#include "fcub/moments.hpp"

#include <sstream>
#include <stdexcept>

#include "fcub/errors.hpp"

namespace fcub {

double MomentTable::moment(const MultiIndex& alpha) const {
  if (alpha.dim() != dim_ || alpha.total_degree() > max_degree_) {
    throw std::invalid_argument("MomentTable::moment: index outside the table");
  }
  const auto it = values_.find(alpha);
  return it == values_.end() ? 0.0 : it->second;
}

MomentTable compute_moments(const Ifs& ifs, const MeasureSpec& mu, int k) {
  if (k < 0) {
    throw std::invalid_argument("compute_moments: requires k >= 0");
  }
  if (mu.size() != ifs.map_count()) {
    throw ValidationError("compute_moments: measure does not match the system");
  }
  const int n = ifs.dim();
  MomentTable table(n, k);
  table.values_.emplace(MultiIndex{std::vector<int>(n, 0)}, 1.0);

  for (int d = 1; d <= k; ++d) {
    const std::vector<MultiIndex> basis = homogeneous_basis(n, d);
    const int size = static_cast<int>(basis.size());
    std::map<MultiIndex, int, GradedLexLess> row_of;
    for (int i = 0; i < size; ++i) row_of.emplace(basis[i], i);

    // m_alpha = sum_{|beta|=d} F(beta,alpha) m_beta + r_alpha, with r_alpha the
    // lower-degree part of F[x^alpha] integrated against known moments.
    Matrix block = Matrix::Zero(size, size);
    Vector rhs = Vector::Zero(size);
    for (int a = 0; a < size; ++a) {
      const Polynomial image = ruelle_apply(Polynomial::monomial(basis[a]), ifs, mu);
      for (const auto& [beta, c] : image.terms()) {
        if (beta.total_degree() == d) {
          block(row_of.at(beta), a) += c;
        } else {
          rhs[a] += c * table.values_.at(beta);
        }
      }
    }

    const Matrix system = Matrix::Identity(size, size) - block.transpose();
    Eigen::PartialPivLU<Matrix> lu(system);
    const Vector m = lu.solve(rhs);
    const double residual = (system * m - rhs).lpNorm<Eigen::Infinity>();
    if (!(residual <= 1e-12 * (1.0 + rhs.lpNorm<Eigen::Infinity>()))) {
      std::ostringstream os;
      os << "compute_moments: degree " << d << " solve residual " << residual
         << " exceeds tolerance (near-singular moment system)";
      throw NumericalError(os.str());
    }
    table.residuals_.push_back(residual);
    for (int a = 0; a < size; ++a) table.values_.emplace(basis[a], m[a]);
  }
  return table;
}

double integrate_polynomial(const Polynomial& p, const MomentTable& table) {
  if (p.dim() != table.dim()) {
    throw std::invalid_argument("integrate_polynomial: dimension mismatch");
  }
  if (p.degree() > table.max_degree()) {
    throw std::invalid_argument("integrate_polynomial: degree exceeds the table");
  }
  double sum = 0.0;
  for (const auto& [alpha, c] : p.terms()) {
    sum += c * table.moment(alpha);
  }
  return sum;
}

}  // namespace fcub
