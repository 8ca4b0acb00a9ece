#include "fcub/measure.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fcub/errors.hpp"

namespace fcub {

MeasureSpec::MeasureSpec(Vector weights, Origin origin, double d)
    : weights_(std::move(weights)), origin_(origin), hausdorff_dim_(d) {}

MeasureSpec MeasureSpec::from_weights(Vector weights) {
  if (weights.size() < 2) {
    throw ValidationError("MeasureSpec: at least two weights are required");
  }
  if (!weights.allFinite()) {
    throw ValidationError("MeasureSpec: non-finite weight");
  }
  for (int i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) {
      throw ValidationError("MeasureSpec: weights must be strictly positive");
    }
  }
  const double sum = weights.sum();
  if (std::abs(sum - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "MeasureSpec: weights sum to " << sum << ", expected 1 (within 1e-6)";
    throw ValidationError(os.str());
  }
  weights /= sum;
  return MeasureSpec(std::move(weights), Origin::explicit_weights,
                     std::numeric_limits<double>::quiet_NaN());
}

double hausdorff_dimension(const std::vector<double>& rhos) {
  if (rhos.size() < 2) {
    throw ValidationError("hausdorff_dimension: at least two factors required");
  }
  for (double r : rhos) {
    if (!(r > 0.0 && r < 1.0)) {
      throw ValidationError("hausdorff_dimension: factors must lie in (0,1)");
    }
  }
  auto sum_pow = [&rhos](double d) {
    double s = 0.0;
    for (double r : rhos) s += std::pow(r, d);
    return s;
  };

  double hi = 1.0;
  while (sum_pow(hi) > 1.0) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sum_pow(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double d = 0.5 * (lo + hi);
  if (std::abs(sum_pow(d) - 1.0) > 1e-12) {
    throw NumericalError("hausdorff_dimension: bisection did not reach tolerance");
  }
  return d;
}

MeasureSpec hausdorff_weights(const Ifs& ifs) {
  std::vector<double> rhos;
  rhos.reserve(ifs.map_count());
  for (const AffineMap& s : ifs.maps()) rhos.push_back(s.contraction());
  const double d = hausdorff_dimension(rhos);
  Vector weights(ifs.map_count());
  for (int ell = 0; ell < ifs.map_count(); ++ell) {
    weights[ell] = std::pow(rhos[ell], d);
  }
  weights /= weights.sum();
  return MeasureSpec(std::move(weights), MeasureSpec::Origin::hausdorff, d);
}

}  // namespace fcub
