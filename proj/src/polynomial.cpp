#include "fcub/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fcub/errors.hpp"

namespace fcub {

int MultiIndex::total_degree() const {
  int d = 0;
  for (int e : exponents) d += e;
  return d;
}

int MultiIndex::max_degree() const {
  int d = 0;
  for (int e : exponents) d = std::max(d, e);
  return d;
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i > 0) os << ",";
    os << exponents[i];
  }
  os << ")";
  return os.str();
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(a.exponents.begin(), a.exponents.end(),
                                      b.exponents.begin(), b.exponents.end());
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const __int128 next = static_cast<__int128>(result) * (n - k + i) / i;
    if (next > INT64_MAX) {
      throw ValidationError("binomial: 64-bit overflow");
    }
    result = static_cast<std::int64_t>(next);
  }
  return result;
}

Polynomial Polynomial::constant(int dim, double value) {
  Polynomial p(dim);
  p.add_term(MultiIndex{std::vector<int>(dim, 0)}, value);
  return p;
}

Polynomial Polynomial::monomial(MultiIndex alpha, double coefficient) {
  Polynomial p(alpha.dim());
  p.add_term(alpha, coefficient);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return terms_.rbegin()->first.total_degree();
}

double Polynomial::coefficient(const MultiIndex& alpha) const {
  const auto it = terms_.find(alpha);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const MultiIndex& alpha, double coefficient) {
  if (alpha.dim() != dim_) {
    throw ValidationError("Polynomial: term dimension mismatch");
  }
  const auto [it, inserted] = terms_.try_emplace(alpha, coefficient);
  if (!inserted) it->second += coefficient;
  if (it->second == 0.0) terms_.erase(it);
}

double Polynomial::evaluate(const Vector& x) const {
  if (x.size() != dim_) {
    throw ValidationError("Polynomial::evaluate: point dimension mismatch");
  }
  double sum = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double term = c;
    for (int i = 0; i < dim_; ++i) {
      for (int e = 0; e < alpha.exponents[i]; ++e) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator*=(double scale) {
  if (scale == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, c] : terms_) c *= scale;
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial out(dim_);
  MultiIndex gamma{std::vector<int>(dim_, 0)};
  for (const auto& [alpha, ca] : terms_) {
    for (const auto& [beta, cb] : other.terms_) {
      for (int i = 0; i < dim_; ++i) {
        gamma.exponents[i] = alpha.exponents[i] + beta.exponents[i];
      }
      out.add_term(gamma, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator*(double scale) const {
  Polynomial out = *this;
  out *= scale;
  return out;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  out += other;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial out = *this;
  out += other * -1.0;
  return out;
}

Polynomial Polynomial::homogeneous_part(int k) const {
  Polynomial out(dim_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha.total_degree() == k) out.add_term(alpha, c);
  }
  return out;
}

Polynomial Polynomial::lower_part(int k) const {
  Polynomial out(dim_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha.total_degree() < k) out.add_term(alpha, c);
  }
  return out;
}

namespace {

void enumerate_total(int dim, int remaining, int axis, MultiIndex& work,
                     std::vector<MultiIndex>& out) {
  if (axis == dim - 1) {
    for (int e = 0; e <= remaining; ++e) {
      work.exponents[axis] = e;
      out.push_back(work);
    }
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    work.exponents[axis] = e;
    enumerate_total(dim, remaining - e, axis + 1, work, out);
  }
}

std::vector<MultiIndex> sorted(std::vector<MultiIndex> v) {
  std::sort(v.begin(), v.end(), [](const MultiIndex& a, const MultiIndex& b) {
    return GradedLexLess{}(a, b);
  });
  return v;
}

}  // namespace

std::vector<MultiIndex> homogeneous_basis(int dim, int k) {
  if (dim < 1 || k < 0) {
    throw ValidationError("homogeneous_basis: requires dim >= 1 and k >= 0");
  }
  std::vector<MultiIndex> all;
  MultiIndex work{std::vector<int>(dim, 0)};
  enumerate_total(dim, k, 0, work, all);
  std::vector<MultiIndex> out;
  for (MultiIndex& alpha : all) {
    if (alpha.total_degree() == k) out.push_back(std::move(alpha));
  }
  return sorted(std::move(out));
}

SpaceSpec SpaceSpec::total(int dim, int k) {
  if (dim < 1 || k < 0) {
    throw ValidationError("SpaceSpec: requires dim >= 1 and degree >= 0");
  }
  std::vector<MultiIndex> basis;
  MultiIndex work{std::vector<int>(dim, 0)};
  enumerate_total(dim, k, 0, work, basis);
  basis = sorted(std::move(basis));
  SpaceSpec spec{Kind::total, dim, k, std::move(basis)};
  if (static_cast<std::int64_t>(spec.basis.size()) != binomial(dim + k, dim)) {
    throw NumericalError("SpaceSpec: total-degree basis size mismatch");
  }
  return spec;
}

SpaceSpec SpaceSpec::tensor(int dim, int k) {
  if (dim < 1 || k < 0) {
    throw ValidationError("SpaceSpec: requires dim >= 1 and degree >= 0");
  }
  std::vector<MultiIndex> basis;
  MultiIndex work{std::vector<int>(dim, 0)};
  std::int64_t count = 1;
  for (int i = 0; i < dim; ++i) count *= k + 1;
  basis.reserve(count);
  for (std::int64_t flat = 0; flat < count; ++flat) {
    std::int64_t rest = flat;
    for (int i = dim - 1; i >= 0; --i) {
      work.exponents[i] = static_cast<int>(rest % (k + 1));
      rest /= k + 1;
    }
    basis.push_back(work);
  }
  return SpaceSpec{Kind::tensor, dim, k, sorted(std::move(basis))};
}

std::string SpaceSpec::label() const {
  std::ostringstream os;
  os << (kind == Kind::total ? "P" : "Q") << degree;
  return os.str();
}

Polynomial compose_affine(const Polynomial& p, const AffineMap& map) {
  const int n = p.dim();
  if (map.dim() != n) {
    throw ValidationError("compose_affine: dimension mismatch");
  }
  if (p.degree() > kMaxComposeDegree) {
    throw ValidationError("compose_affine: degree exceeds expansion cap of 60");
  }

  // Affine substitution for each variable: x_i -> (row i of A) . x + b_i.
  std::vector<Polynomial> subs;
  subs.reserve(n);
  for (int i = 0; i < n; ++i) {
    Polynomial s(n);
    for (int j = 0; j < n; ++j) {
      if (map.linear()(i, j) != 0.0) {
        MultiIndex e{std::vector<int>(n, 0)};
        e.exponents[j] = 1;
        s.add_term(e, map.linear()(i, j));
      }
    }
    if (map.offset()[i] != 0.0) {
      s.add_term(MultiIndex{std::vector<int>(n, 0)}, map.offset()[i]);
    }
    subs.push_back(std::move(s));
  }

  // Cached incremental powers of the substituted forms.
  std::vector<std::vector<Polynomial>> powers(n);
  for (int i = 0; i < n; ++i) powers[i].push_back(Polynomial::constant(n, 1.0));
  auto power = [&](int i, int e) -> const Polynomial& {
    while (static_cast<int>(powers[i].size()) <= e) {
      powers[i].push_back(powers[i].back() * subs[i]);
    }
    return powers[i][e];
  };

  Polynomial out(n);
  for (const auto& [alpha, c] : p.terms()) {
    Polynomial term = Polynomial::constant(n, c);
    for (int i = 0; i < n; ++i) {
      if (alpha.exponents[i] > 0) term = term * power(i, alpha.exponents[i]);
    }
    out += term;
  }
  return out;
}

Polynomial ruelle_apply(const Polynomial& p, const Ifs& ifs, const MeasureSpec& mu) {
  if (p.dim() != ifs.dim()) {
    throw ValidationError("ruelle_apply: dimension mismatch");
  }
  if (mu.size() != ifs.map_count()) {
    throw ValidationError("ruelle_apply: measure does not match the system");
  }
  Polynomial out(p.dim());
  for (int ell = 0; ell < ifs.map_count(); ++ell) {
    out += compose_affine(p, ifs.map(ell)) * mu.weight(ell);
  }
  return out;
}

Matrix ruelle_block(const Ifs& ifs, const MeasureSpec& mu, int k) {
  if (k < 0) {
    throw std::invalid_argument("ruelle_block: requires k >= 0");
  }
  if (mu.size() != ifs.map_count()) {
    throw ValidationError("ruelle_block: measure does not match the system");
  }
  const int n = ifs.dim();
  const std::vector<MultiIndex> basis = homogeneous_basis(n, k);
  const int size = static_cast<int>(basis.size());
  std::map<MultiIndex, int, GradedLexLess> row_of;
  for (int i = 0; i < size; ++i) row_of.emplace(basis[i], i);

  Matrix block = Matrix::Zero(size, size);
  for (int j = 0; j < size; ++j) {
    for (int ell = 0; ell < ifs.map_count(); ++ell) {
      // Offset suppressed: only the linear part contributes to F_{k,k}.
      const AffineMap linear = AffineMap::composed(
          ifs.map(ell).linear(), Vector::Zero(n), ifs.map(ell).contraction());
      const Polynomial image =
          compose_affine(Polynomial::monomial(basis[j]), linear) * mu.weight(ell);
      for (const auto& [beta, c] : image.terms()) {
        block(row_of.at(beta), j) += c;
      }
    }
  }
  return block;
}

double spectral_radius_bound(const Ifs& ifs, const MeasureSpec& mu, int k) {
  if (k < 1) {
    throw std::invalid_argument(
        "spectral_radius_bound: requires k >= 1 (the k = 0 block is the identity)");
  }
  if (mu.size() != ifs.map_count()) {
    throw ValidationError("spectral_radius_bound: measure does not match the system");
  }
  double r = 0.0;
  for (int ell = 0; ell < ifs.map_count(); ++ell) {
    r += mu.weight(ell) * std::pow(ifs.map(ell).contraction(), k);
  }
  return r;
}

}  // namespace fcub
