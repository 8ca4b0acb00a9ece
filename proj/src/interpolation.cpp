#include "fcub/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numbers>

#include "fcub/errors.hpp"

namespace fcub {

Chebyshev1d chebyshev_nodes(double a, double b, int degree) {
  if (!(a < b)) {
    throw ValidationError("chebyshev_nodes: requires a < b");
  }
  if (degree < 0) {
    throw ValidationError("chebyshev_nodes: requires degree >= 0");
  }
  const int count = degree + 1;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Chebyshev1d out;
  out.nodes.resize(count);
  out.weights.resize(count);
  // cos((2j+1)pi/(2N+2)) decreases in j; store reversed so nodes ascend.
  for (int j = 0; j < count; ++j) {
    const double theta = (2.0 * j + 1.0) * std::numbers::pi / (2.0 * count);
    const int pos = count - 1 - j;
    out.nodes[pos] = mid + half * std::cos(theta);
    out.weights[pos] = (j % 2 == 0 ? 1.0 : -1.0) * std::sin(theta);
  }
  return out;
}

TensorGrid::TensorGrid(BoundingBox box, int degree,
                       std::vector<std::vector<double>> nodes,
                       std::vector<std::vector<double>> weights)
    : box_(std::move(box)), degree_(degree), nodes_(std::move(nodes)),
      weights_(std::move(weights)) {
  const int n = box_.dim();
  const int per_axis = degree_ + 1;
  std::int64_t count = 1;
  for (int i = 0; i < n; ++i) count *= per_axis;
  points_.reserve(count);
  for (std::int64_t flat = 0; flat < count; ++flat) {
    Vector p(n);
    std::int64_t rest = flat;
    for (int axis = n - 1; axis >= 0; --axis) {
      p[axis] = nodes_[axis][rest % per_axis];
      rest /= per_axis;
    }
    points_.push_back(std::move(p));
  }
}

TensorGrid TensorGrid::chebyshev(const BoundingBox& box, int degree) {
  std::vector<std::vector<double>> nodes, weights;
  for (int axis = 0; axis < box.dim(); ++axis) {
    Chebyshev1d axis_rule = chebyshev_nodes(box.lo()[axis], box.hi()[axis], degree);
    nodes.push_back(std::move(axis_rule.nodes));
    weights.push_back(std::move(axis_rule.weights));
  }
  return TensorGrid(box, degree, std::move(nodes), std::move(weights));
}

TensorGrid TensorGrid::from_axis_nodes(const BoundingBox& box,
                                       std::vector<std::vector<double>> axis_nodes) {
  if (static_cast<int>(axis_nodes.size()) != box.dim()) {
    throw ValidationError("TensorGrid: one node list per axis required");
  }
  const std::size_t per_axis = axis_nodes.front().size();
  if (per_axis == 0) {
    throw ValidationError("TensorGrid: empty node list");
  }
  std::vector<std::vector<double>> weights;
  for (int axis = 0; axis < box.dim(); ++axis) {
    const std::vector<double>& t = axis_nodes[axis];
    if (t.size() != per_axis) {
      throw ValidationError("TensorGrid: all axes must hold the same node count");
    }
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t[j] < box.lo()[axis] || t[j] > box.hi()[axis]) {
        throw ValidationError("TensorGrid: node outside the box");
      }
      if (j > 0 && !(t[j - 1] < t[j])) {
        throw ValidationError("TensorGrid: nodes must be strictly increasing");
      }
    }
    // w_j = 1 / prod_{i != j} (t_j - t_i), differences rescaled by 4/(b-a)
    // to keep magnitudes representable.
    const double scale = 4.0 / (box.hi()[axis] - box.lo()[axis]);
    std::vector<double> w(per_axis);
    for (std::size_t j = 0; j < per_axis; ++j) {
      double value = 1.0;
      for (std::size_t i = 0; i < per_axis; ++i) {
        if (i != j) value /= scale * (t[j] - t[i]);
      }
      w[j] = value;
    }
    const double wmax = *std::max_element(w.begin(), w.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    });
    for (double& v : w) v /= std::abs(wmax);
    weights.push_back(std::move(w));
  }
  return TensorGrid(box, static_cast<int>(per_axis) - 1, std::move(axis_nodes),
                    std::move(weights));
}

void TensorGrid::eval_axis(int axis, double x, std::vector<double>& out) const {
  const std::vector<double>& t = nodes_[axis];
  const std::vector<double>& w = weights_[axis];
  const std::size_t count = t.size();
  out.assign(count, 0.0);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t j = 0; j < count; ++j) {
    const double gap = std::abs(x - t[j]);
    if (gap <= 4.0 * eps * std::max({std::abs(x), std::abs(t[j]), 1.0})) {
      out[j] = 1.0;
      return;
    }
  }
  // Second barycentric form; the denominator is 1/prod(x - t_j) scaled by the
  // weight normalization and never vanishes away from the nodes.
  double denom = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    const double q = w[j] / (x - t[j]);
    out[j] = q;
    denom += q;
  }
  for (std::size_t j = 0; j < count; ++j) out[j] /= denom;
}

Vector TensorGrid::lagrange_eval_all(const Vector& x) const {
  if (x.size() != dim()) {
    throw ValidationError("lagrange_eval_all: point dimension mismatch");
  }
  if (!x.allFinite()) {
    throw ValidationError("lagrange_eval_all: non-finite point");
  }
  const int per_axis = degree_ + 1;
  std::vector<double> axis_values;
  Vector values = Vector::Ones(1);
  for (int axis = 0; axis < dim(); ++axis) {
    eval_axis(axis, x[axis], axis_values);
    Vector next(values.size() * per_axis);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      for (int j = 0; j < per_axis; ++j) next[idx++] = values[i] * axis_values[j];
    }
    values = std::move(next);
  }
  return values;
}

namespace {

double radical_inverse(int base, std::uint64_t index) {
  double result = 0.0;
  double digit = 1.0 / base;
  while (index > 0) {
    result += digit * static_cast<double>(index % base);
    index /= base;
    digit /= base;
  }
  return result;
}

}  // namespace

double TensorGrid::lebesgue_estimate(int sample_count) const {
  if (sample_count < 1) {
    throw ValidationError("lebesgue_estimate: requires sample_count >= 1");
  }
  static constexpr int primes[] = {2, 3, 5, 7, 11, 13};
  const int n = dim();
  if (n > static_cast<int>(std::size(primes))) {
    throw ValidationError("lebesgue_estimate: dimension too large for the sampler");
  }
  double best = 0.0;
  Vector x(n);
  for (int s = 0; s < sample_count; ++s) {
    for (int axis = 0; axis < n; ++axis) {
      const double u = radical_inverse(primes[axis], static_cast<std::uint64_t>(s) + 1);
      x[axis] = box_.lo()[axis] + u * (box_.hi()[axis] - box_.lo()[axis]);
    }
    best = std::max(best, lagrange_eval_all(x).lpNorm<1>());
  }
  return best;
}

}  // namespace fcub
