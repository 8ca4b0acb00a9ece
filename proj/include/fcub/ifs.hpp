#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace fcub {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest singular value of a square matrix. Power iteration on A^T A
/// (tolerance 1e-14, at most 1e4 sweeps) with a dense symmetric
/// eigendecomposition as fallback when the iteration stalls.
double spectral_norm(const Matrix& a);

/// One contractive map x -> A x + b. The contraction factor is the spectral
/// norm of A and is cached at construction; construction fails unless it is
/// strictly below 1. Maps produced by word composition carry the product of
/// the member factors instead (an upper bound, exact for similarities) and
/// are exempt from the strict-contraction check.
class AffineMap {
 public:
  AffineMap(Matrix a, Vector b);

  static AffineMap composed(Matrix a, Vector b, double rho_product);
  static AffineMap identity(int dim);

  int dim() const { return static_cast<int>(b_.size()); }
  const Matrix& linear() const { return a_; }
  const Vector& offset() const { return b_; }
  double contraction() const { return rho_; }

  Vector operator()(const Vector& x) const { return a_ * x + b_; }

 private:
  struct ComposedTag {};
  AffineMap(ComposedTag, Matrix a, Vector b, double rho);

  Matrix a_;
  Vector b_;
  double rho_;
};

/// Fixed point c = (I - A)^{-1} b of a contractive affine map.
Vector fixed_point(const AffineMap& map);

/// An iterated function system: at least two contractive affine maps sharing
/// one ambient dimension.
class Ifs {
 public:
  explicit Ifs(std::vector<AffineMap> maps);

  int dim() const { return maps_.front().dim(); }
  int map_count() const { return static_cast<int>(maps_.size()); }
  const AffineMap& map(int ell) const { return maps_.at(ell); }
  const std::vector<AffineMap>& maps() const { return maps_; }
  double rho_max() const;

 private:
  std::vector<AffineMap> maps_;
};

/// A finite sequence of map indices (0-based) with the running product of the
/// member contraction factors. The empty word has rho = 1.
struct Word {
  std::vector<int> letters;
  double rho = 1.0;

  int length() const { return static_cast<int>(letters.size()); }
};

Word extend_word(const Word& word, int letter, const Ifs& ifs);

/// Composition S_{m_1} o ... o S_{m_p} as a single affine map (first letter
/// outermost). The empty word gives the identity.
AffineMap compose_word(const Ifs& ifs, const Word& word);

/// Axis-aligned box [lo_1,hi_1] x ... x [lo_n,hi_n] with lo < hi strictly.
class BoundingBox {
 public:
  BoundingBox(Vector lo, Vector hi);

  int dim() const { return static_cast<int>(lo_.size()); }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }

  Vector corner(std::uint64_t mask) const;
  std::uint64_t corner_count() const { return std::uint64_t{1} << dim(); }
  bool contains(const Vector& x, double tol = 0.0) const;
  double diameter() const { return (hi_ - lo_).norm(); }

 private:
  Vector lo_, hi_;
};

/// Corner test: S_l(corner) inside the box for every map and every corner.
/// For affine maps this is equivalent to S_l(box) inside box.
bool maps_into(const Ifs& ifs, const BoundingBox& box);

struct BoxSearchConfig {
  double inflation = 1.001;  // half-width safety factor
  int max_retries = 40;      // inflation doublings before giving up
  int max_iterations = 2000; // simplex iterations
  double tolerance = 1e-12;  // simplex stopping size
};

/// max_l |z - S_l(z)|_inf / (1 - rho_l); a hypercube centered at z with
/// half-width at least this value satisfies S_l(box) inside box whenever the
/// maps contract in the sup norm as well.
double invariance_objective(const std::vector<AffineMap>& maps, const Vector& z);

/// Hypercube centered at a local minimizer of invariance_objective, found by
/// Nelder-Mead from the seed. Half-width = objective value times the safety
/// factor, doubling on corner-validation failure up to max_retries.
BoundingBox bounding_box(const Ifs& ifs, const Vector& seed,
                         const BoxSearchConfig& config = {});

/// Same, seeded at the average of the map fixed points (all on the attractor).
BoundingBox bounding_box(const Ifs& ifs, const BoxSearchConfig& config = {});

/// Random-iteration orbit: x_{k+1} = S_l(x_k) with l drawn from the given
/// probability vector, started at the fixed point of the first map. The first
/// 100 iterates are discarded. Bit-reproducible for a fixed seed.
std::vector<Vector> chaos_sample(const Ifs& ifs, const Vector& probabilities,
                                 int count, std::uint64_t seed);

/// Diameter of a chaos sample (exact for the sample in dimensions 1 and 2 via
/// convex hull, farthest-point sweeps otherwise). Default sample matches the
/// mesh module's surrogate for the attractor diameter.
double attractor_diameter(const Ifs& ifs, const Vector& probabilities,
                          int count = 100000, std::uint64_t seed = 42);

/// Diameter of an explicit point set.
double point_set_diameter(const std::vector<Vector>& points);

/// Derivative-free simplex minimizer (deterministic).
Vector nelder_mead(const std::function<double(const Vector&)>& objective,
                   const Vector& start, double initial_step, int max_iterations,
                   double tolerance);

}  // namespace fcub
