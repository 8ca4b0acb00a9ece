#include "fcub/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fcub/errors.hpp"

namespace fcub {

namespace {

std::string dim_mismatch(const char* where, long got, long expected) {
  std::ostringstream os;
  os << where << ": dimension mismatch (got " << got << ", expected " << expected << ")";
  return os.str();
}

}  // namespace

double spectral_norm(const Matrix& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw ValidationError("spectral_norm: matrix must be square and nonempty");
  }
  if (!a.allFinite()) {
    throw ValidationError("spectral_norm: matrix has non-finite entries");
  }
  const Matrix b = a.transpose() * a;
  const int n = static_cast<int>(b.rows());

  // Deterministic pseudo-random start so the iteration cannot begin exactly
  // orthogonal to the dominant eigenvector.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = 1.0 + 1e-3 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  }
  v.normalize();

  double lambda = v.dot(b * v);
  for (int it = 0; it < 10000; ++it) {
    Vector bv = b * v;
    const double norm = bv.norm();
    if (norm == 0.0) return 0.0;
    v = bv / norm;
    const double next = v.dot(b * v);
    if (std::abs(next - lambda) <= 1e-14 * std::max(1.0, std::abs(next))) {
      return std::sqrt(std::max(0.0, next));
    }
    lambda = next;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(b);
  if (es.info() != Eigen::Success) {
    throw NumericalError("spectral_norm: eigendecomposition failed");
  }
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

AffineMap::AffineMap(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)), rho_(0.0) {
  if (a_.rows() != a_.cols() || a_.rows() != b_.size() || b_.size() == 0) {
    throw ValidationError("AffineMap: A must be n x n and b of length n");
  }
  if (!b_.allFinite()) {
    throw ValidationError("AffineMap: offset has non-finite entries");
  }
  rho_ = spectral_norm(a_);
  if (!(rho_ < 1.0)) {
    std::ostringstream os;
    os << "AffineMap: contraction factor >= 1 (spectral norm " << rho_
       << "); rotation-only and expanding maps are not admissible";
    throw ValidationError(os.str());
  }
}

AffineMap::AffineMap(ComposedTag, Matrix a, Vector b, double rho)
    : a_(std::move(a)), b_(std::move(b)), rho_(rho) {}

AffineMap AffineMap::composed(Matrix a, Vector b, double rho_product) {
  if (a.rows() != a.cols() || a.rows() != b.size() || b.size() == 0) {
    throw ValidationError("AffineMap::composed: A must be n x n and b of length n");
  }
  return AffineMap(ComposedTag{}, std::move(a), std::move(b), rho_product);
}

AffineMap AffineMap::identity(int dim) {
  return composed(Matrix::Identity(dim, dim), Vector::Zero(dim), 1.0);
}

Vector fixed_point(const AffineMap& map) {
  const int n = map.dim();
  const Matrix m = Matrix::Identity(n, n) - map.linear();
  Eigen::PartialPivLU<Matrix> lu(m);
  const Vector c = lu.solve(map.offset());
  const double err = (map(c) - c).lpNorm<Eigen::Infinity>();
  if (!(err <= 1e-12 * (1.0 + c.lpNorm<Eigen::Infinity>()))) {
    std::ostringstream os;
    os << "fixed_point: solve residual " << err << " exceeds tolerance";
    throw NumericalError(os.str());
  }
  return c;
}

Ifs::Ifs(std::vector<AffineMap> maps) : maps_(std::move(maps)) {
  if (maps_.size() < 2) {
    throw ValidationError("Ifs: at least two maps are required");
  }
  const int n = maps_.front().dim();
  for (const AffineMap& s : maps_) {
    if (s.dim() != n) {
      throw ValidationError(dim_mismatch("Ifs", s.dim(), n));
    }
  }
}

double Ifs::rho_max() const {
  double r = 0.0;
  for (const AffineMap& s : maps_) r = std::max(r, s.contraction());
  return r;
}

Word extend_word(const Word& word, int letter, const Ifs& ifs) {
  if (letter < 0 || letter >= ifs.map_count()) {
    throw ValidationError("extend_word: letter out of range");
  }
  Word out = word;
  out.letters.push_back(letter);
  out.rho *= ifs.map(letter).contraction();
  return out;
}

AffineMap compose_word(const Ifs& ifs, const Word& word) {
  const int n = ifs.dim();
  Matrix a = Matrix::Identity(n, n);
  Vector b = Vector::Zero(n);
  double rho = 1.0;
  for (int letter : word.letters) {
    if (letter < 0 || letter >= ifs.map_count()) {
      throw ValidationError("compose_word: letter out of range");
    }
    const AffineMap& s = ifs.map(letter);
    b += a * s.offset();
    a = a * s.linear();
    rho *= s.contraction();
  }
  return AffineMap::composed(std::move(a), std::move(b), rho);
}

BoundingBox::BoundingBox(Vector lo, Vector hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size() || lo_.size() == 0) {
    throw ValidationError("BoundingBox: lo and hi must have equal positive length");
  }
  if (!lo_.allFinite() || !hi_.allFinite()) {
    throw ValidationError("BoundingBox: non-finite bounds");
  }
  for (int i = 0; i < lo_.size(); ++i) {
    if (!(lo_[i] < hi_[i])) {
      throw ValidationError("BoundingBox: requires lo < hi on every axis");
    }
  }
}

Vector BoundingBox::corner(std::uint64_t mask) const {
  Vector c(dim());
  for (int i = 0; i < dim(); ++i) {
    c[i] = (mask >> i) & 1 ? hi_[i] : lo_[i];
  }
  return c;
}

bool BoundingBox::contains(const Vector& x, double tol) const {
  if (x.size() != lo_.size()) return false;
  for (int i = 0; i < lo_.size(); ++i) {
    if (x[i] < lo_[i] - tol || x[i] > hi_[i] + tol) return false;
  }
  return true;
}

bool maps_into(const Ifs& ifs, const BoundingBox& box) {
  if (ifs.dim() != box.dim()) {
    throw ValidationError(dim_mismatch("maps_into", box.dim(), ifs.dim()));
  }
  const double scale = std::max({box.lo().cwiseAbs().maxCoeff(),
                                 box.hi().cwiseAbs().maxCoeff(), 1.0});
  const double tol = 1e-12 * scale;
  for (const AffineMap& s : ifs.maps()) {
    for (std::uint64_t mask = 0; mask < box.corner_count(); ++mask) {
      if (!box.contains(s(box.corner(mask)), tol)) return false;
    }
  }
  return true;
}

double invariance_objective(const std::vector<AffineMap>& maps, const Vector& z) {
  double worst = 0.0;
  for (const AffineMap& s : maps) {
    const double gap = (z - s(z)).lpNorm<Eigen::Infinity>() / (1.0 - s.contraction());
    worst = std::max(worst, gap);
  }
  return worst;
}

Vector nelder_mead(const std::function<double(const Vector&)>& objective,
                   const Vector& start, double initial_step, int max_iterations,
                   double tolerance) {
  const int n = static_cast<int>(start.size());
  std::vector<Vector> simplex(n + 1, start);
  for (int i = 0; i < n; ++i) simplex[i + 1][i] += initial_step;
  std::vector<double> value(n + 1);
  for (int i = 0; i <= n; ++i) value[i] = objective(simplex[i]);

  std::vector<int> order(n + 1);
  for (int it = 0; it < max_iterations; ++it) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return value[a] < value[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];

    double spread = 0.0;
    for (int i = 0; i <= n; ++i) {
      spread = std::max(spread, (simplex[i] - simplex[best]).lpNorm<Eigen::Infinity>());
    }
    if (spread <= tolerance) break;

    Vector centroid = Vector::Zero(n);
    for (int i = 0; i <= n; ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= n;

    const Vector reflected = centroid + (centroid - simplex[worst]);
    const double fr = objective(reflected);
    if (fr < value[best]) {
      const Vector expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double fe = objective(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        value[worst] = fe;
      } else {
        simplex[worst] = reflected;
        value[worst] = fr;
      }
    } else if (fr < value[second]) {
      simplex[worst] = reflected;
      value[worst] = fr;
    } else {
      const Vector contracted = centroid + 0.5 * (simplex[worst] - centroid);
      const double fc = objective(contracted);
      if (fc < value[worst]) {
        simplex[worst] = contracted;
        value[worst] = fc;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
          value[i] = objective(simplex[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (value[i] < value[best]) best = i;
  }
  return simplex[best];
}

BoundingBox bounding_box(const Ifs& ifs, const Vector& seed, const BoxSearchConfig& config) {
  if (seed.size() != ifs.dim()) {
    throw ValidationError(dim_mismatch("bounding_box", seed.size(), ifs.dim()));
  }
  auto objective = [&ifs](const Vector& z) { return invariance_objective(ifs.maps(), z); };
  const double step = std::max(0.5, 0.5 * seed.lpNorm<Eigen::Infinity>());
  const Vector center =
      nelder_mead(objective, seed, step, config.max_iterations, config.tolerance);
  const double radius = objective(center);

  double inflation = config.inflation;
  for (int retry = 0; retry <= config.max_retries; ++retry) {
    const double half = std::max(radius, 1e-8) * inflation;
    BoundingBox box(Vector(center.array() - half), Vector(center.array() + half));
    if (maps_into(ifs, box)) return box;
    inflation *= 2.0;
  }
  throw NumericalError(
      "bounding_box: corner validation failed at every inflation level; the "
      "system may not contract in the sup norm or the search failed");
}

BoundingBox bounding_box(const Ifs& ifs, const BoxSearchConfig& config) {
  Vector seed = Vector::Zero(ifs.dim());
  for (const AffineMap& s : ifs.maps()) seed += fixed_point(s);
  seed /= ifs.map_count();
  return bounding_box(ifs, seed, config);
}

std::vector<Vector> chaos_sample(const Ifs& ifs, const Vector& probabilities,
                                 int count, std::uint64_t seed) {
  if (count < 1) {
    throw ValidationError("chaos_sample: count must be >= 1");
  }
  if (probabilities.size() != ifs.map_count()) {
    throw ValidationError(
        dim_mismatch("chaos_sample", probabilities.size(), ifs.map_count()));
  }
  constexpr int kBurnIn = 100;
  std::mt19937_64 rng(seed);
  // Explicit CDF inversion on 53-bit uniforms: reproducible across standard
  // library implementations, unlike std::discrete_distribution.
  const int count_maps = ifs.map_count();
  std::vector<Vector> samples;
  samples.reserve(count);
  Vector x = fixed_point(ifs.map(0));
  for (int i = 0; i < kBurnIn + count; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    int ell = 0;
    double acc = probabilities[0];
    while (u >= acc && ell + 1 < count_maps) {
      ++ell;
      acc += probabilities[ell];
    }
    x = ifs.map(ell)(x);
    if (i >= kBurnIn) samples.push_back(x);
  }
  return samples;
}

namespace {

double diameter_2d(const std::vector<Vector>& points) {
  // Andrew monotone chain hull, then a pair scan over the (small) hull.
  std::vector<std::pair<double, double>> pts;
  pts.reserve(points.size());
  for (const Vector& p : points) pts.emplace_back(p[0], p[1]);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) return 0.0;

  auto cross = [](const std::pair<double, double>& o, const std::pair<double, double>& a,
                  const std::pair<double, double>& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<double, double>> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k > 0 ? k - 1 : 0);

  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    for (std::size_t j = i + 1; j < hull.size(); ++j) {
      const double dx = hull[i].first - hull[j].first;
      const double dy = hull[i].second - hull[j].second;
      best = std::max(best, dx * dx + dy * dy);
    }
  }
  return std::sqrt(best);
}

double diameter_farthest_sweeps(const std::vector<Vector>& points) {
  // Lower bound by iterated farthest-point sweeps from axis extremes.
  const int n = static_cast<int>(points.front().size());
  std::vector<std::size_t> starts;
  for (int axis = 0; axis < n; ++axis) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i][axis] < points[lo][axis]) lo = i;
      if (points[i][axis] > points[hi][axis]) hi = i;
    }
    starts.push_back(lo);
    starts.push_back(hi);
  }
  double best = 0.0;
  for (std::size_t s : starts) {
    Vector p = points[s];
    for (int sweep = 0; sweep < 4; ++sweep) {
      double far_d = -1.0;
      std::size_t far_i = 0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = (points[i] - p).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far_i = i;
        }
      }
      best = std::max(best, std::sqrt(far_d));
      p = points[far_i];
    }
  }
  return best;
}

}  // namespace

double point_set_diameter(const std::vector<Vector>& points) {
  if (points.size() < 2) return 0.0;
  const int n = static_cast<int>(points.front().size());
  if (n == 1) {
    double lo = points.front()[0], hi = lo;
    for (const Vector& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }
  if (n == 2) return diameter_2d(points);
  return diameter_farthest_sweeps(points);
}

double attractor_diameter(const Ifs& ifs, const Vector& probabilities, int count,
                          std::uint64_t seed) {
  return point_set_diameter(chaos_sample(ifs, probabilities, count, seed));
}

}  // namespace fcub
