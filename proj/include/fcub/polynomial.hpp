#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fcub/ifs.hpp"
#include "fcub/measure.hpp"

namespace fcub {

/// Exponent vector of one monomial x^alpha = x_1^{a_1} ... x_n^{a_n}.
struct MultiIndex {
  std::vector<int> exponents;

  int dim() const { return static_cast<int>(exponents.size()); }
  int total_degree() const;
  int max_degree() const;
  std::string to_string() const;

  bool operator==(const MultiIndex& other) const { return exponents == other.exponents; }
};

/// Total order: by total degree first, ties broken lexicographically on the
/// exponent vector. Fixes the basis ordering everywhere in this project.
struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Exact binomial coefficient in 64-bit arithmetic; throws on overflow.
std::int64_t binomial(int n, int k);

/// Degree cap for affine composition; beyond it coefficient growth makes
/// double expansion meaningless.
inline constexpr int kMaxComposeDegree = 60;

/// Sparse multivariate polynomial with real coefficients. Zero coefficients
/// are never stored, so the term map is a canonical form.
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, double, GradedLexLess>;

  explicit Polynomial(int dim) : dim_(dim) {}

  static Polynomial constant(int dim, double value);
  static Polynomial monomial(MultiIndex alpha, double coefficient = 1.0);

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  double coefficient(const MultiIndex& alpha) const;
  const TermMap& terms() const { return terms_; }

  void add_term(const MultiIndex& alpha, double coefficient);
  double evaluate(const Vector& x) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(double scale);
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(double scale) const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;

  /// Terms of total degree exactly k.
  Polynomial homogeneous_part(int k) const;
  /// Terms of total degree strictly below k.
  Polynomial lower_part(int k) const;

 private:
  int dim_;
  TermMap terms_;
};

/// All alpha with |alpha|_1 = k, in graded-lex order.
std::vector<MultiIndex> homogeneous_basis(int dim, int k);

/// Monomial basis of a total-degree space P_k or a tensor-degree space Q_k.
struct SpaceSpec {
  enum class Kind { total, tensor };

  Kind kind;
  int dim;
  int degree;
  std::vector<MultiIndex> basis;  // graded-lex order

  static SpaceSpec total(int dim, int k);
  static SpaceSpec tensor(int dim, int k);

  int size() const { return static_cast<int>(basis.size()); }
  std::string label() const;
};

/// q(x) = p(A x + b), expanded exactly as a polynomial identity. The total
/// degree never increases.
Polynomial compose_affine(const Polynomial& p, const AffineMap& map);

/// Ruelle operator F p = sum_l mu_l p o S_l on polynomials.
Polynomial ruelle_apply(const Polynomial& p, const Ifs& ifs, const MeasureSpec& mu);

/// Matrix of the homogeneous block F_{k,k} (offsets suppressed) on the
/// graded-lex monomial basis of degree k: column j holds the coefficients of
/// sum_l mu_l (A_l x)^{alpha_j}.
Matrix ruelle_block(const Ifs& ifs, const MeasureSpec& mu, int k);

/// r_k = sum_l mu_l rho_l^k, the disk radius containing every eigenvalue of
/// F_{k,k}; requires k >= 1 (the k = 0 block is the identity).
double spectral_radius_bound(const Ifs& ifs, const MeasureSpec& mu, int k);

}  // namespace fcub
