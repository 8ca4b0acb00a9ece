#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fcub/measure.hpp"
#include "fcub/weights.hpp"

namespace fcub {

/// Complex-valued integrand with a display name.
struct Integrand {
  std::function<std::complex<double>(const Vector&)> fn;
  std::string name;

  std::complex<double> operator()(const Vector& x) const { return fn(x); }
};

/// Q[f] = sum_i w_i f(x_i), accumulated with compensated summation in fixed
/// index order. Throws when f is non-finite at a rule point.
std::complex<double> apply_rule(const CubatureRule& rule, const Integrand& f);

/// The word mesh: minimal words m with rho_m * diam <= h whose parent still
/// violates the bound, in depth-first letter order, with the measure products
/// mu_m. The mu_m always sum to 1.
struct Mesh {
  std::vector<Word> words;
  std::vector<double> mu;
  double h = 0.0;
  double diameter = 0.0;  // attractor-diameter estimate the bound used
  int iterations = 0;     // refinement sweeps = deepest word length

  std::size_t size() const { return words.size(); }
};

struct MeshConfig {
  std::size_t max_words = 10'000'000;
};

/// Bound on the number of refinement sweeps, ceil(log(h/diam)/log(rho_max)).
int mesh_iteration_bound(const Ifs& ifs, double h, double diam_estimate);

/// Fixed-point refinement: starting from the empty word, replace every word
/// with rho_m * diam > h by its one-letter extensions until none violates.
Mesh build_mesh(const Ifs& ifs, const MeasureSpec& mu, double h,
                double diam_estimate, const MeshConfig& config = {});

/// Q_h[f] = sum_m mu_m sum_i w_i f(S_m(x_i)); per-word compensated partial
/// sums combined in stored word order, so the value is schedule-independent.
std::complex<double> h_integrate(const CubatureRule& rule, const Mesh& mesh,
                                 const Ifs& ifs, const Integrand& f);

/// Images S_m(box) as corner lists; every h_integrate evaluation point lies
/// inside one of these parallelotopes.
std::vector<std::vector<Vector>> mesh_boxes(const Mesh& mesh, const Ifs& ifs,
                                            const BoundingBox& box);

}  // namespace fcub
