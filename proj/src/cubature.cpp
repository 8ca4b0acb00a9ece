#include "fcub/cubature.hpp"

#include <cmath>
#include <sstream>

#include "fcub/errors.hpp"

namespace fcub {

namespace {

class KahanSum {
 public:
  void add(std::complex<double> value) {
    const std::complex<double> y = value - carry_;
    const std::complex<double> t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  std::complex<double> value() const { return sum_; }

 private:
  std::complex<double> sum_{0.0, 0.0};
  std::complex<double> carry_{0.0, 0.0};
};

bool finite(std::complex<double> z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

std::string point_string(const Vector& x) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i > 0) os << ", ";
    os << x[i];
  }
  os << ")";
  return os.str();
}

std::string word_string(const Word& word) {
  std::ostringstream os;
  for (std::size_t i = 0; i < word.letters.size(); ++i) {
    if (i > 0) os << "-";
    os << word.letters[i] + 1;  // 1-based for display
  }
  return word.letters.empty() ? std::string("<empty>") : os.str();
}

}  // namespace

std::complex<double> apply_rule(const CubatureRule& rule, const Integrand& f) {
  KahanSum sum;
  for (int i = 0; i < rule.size(); ++i) {
    const std::complex<double> value = f(rule.points[i]);
    if (!finite(value)) {
      throw NumericalError("apply_rule: integrand " + f.name +
                           " is non-finite at point " + point_string(rule.points[i]));
    }
    sum.add(rule.weights[i] * value);
  }
  return sum.value();
}

int mesh_iteration_bound(const Ifs& ifs, double h, double diam_estimate) {
  if (h >= diam_estimate) return 0;
  return static_cast<int>(
      std::ceil(std::log(h / diam_estimate) / std::log(ifs.rho_max())));
}

Mesh build_mesh(const Ifs& ifs, const MeasureSpec& mu, double h,
                double diam_estimate, const MeshConfig& config) {
  if (!(h > 0.0)) {
    throw ValidationError("build_mesh: requires h > 0");
  }
  if (!(diam_estimate > 0.0)) {
    throw ValidationError("build_mesh: requires a positive diameter estimate");
  }
  if (mu.size() != ifs.map_count()) {
    throw ValidationError("build_mesh: measure does not match the system");
  }
  const int bound = mesh_iteration_bound(ifs, h, diam_estimate);

  // All contractions equal: the mesh is the full product with L^bound words;
  // reject oversized requests before building anything.
  bool equal_rho = true;
  for (const AffineMap& s : ifs.maps()) {
    equal_rho = equal_rho && s.contraction() == ifs.map(0).contraction();
  }
  if (equal_rho &&
      std::pow(ifs.map_count(), bound) > static_cast<double>(config.max_words)) {
    std::ostringstream os;
    os << "build_mesh: h = " << h << " needs about " << std::pow(ifs.map_count(), bound)
       << " words, above the cap of " << config.max_words;
    throw ValidationError(os.str());
  }

  Mesh mesh;
  mesh.h = h;
  mesh.diameter = diam_estimate;

  Word work;
  // Relative slack so that h sitting exactly on a contraction-product
  // breakpoint does not trigger one extra level through rounding.
  const double stop = h * (1.0 + 1e-14);
  std::function<void(double)> visit = [&](double mu_m) {
    if (work.rho * diam_estimate <= stop) {
      if (mesh.words.size() >= config.max_words) {
        std::ostringstream os;
        os << "build_mesh: word count exceeds the cap of " << config.max_words
           << "; increase h or raise the cap";
        throw ValidationError(os.str());
      }
      mesh.words.push_back(work);
      mesh.mu.push_back(mu_m);
      mesh.iterations = std::max(mesh.iterations, work.length());
      return;
    }
    for (int ell = 0; ell < ifs.map_count(); ++ell) {
      const double rho_saved = work.rho;
      work.letters.push_back(ell);
      work.rho *= ifs.map(ell).contraction();
      visit(mu_m * mu.weight(ell));
      work.letters.pop_back();
      work.rho = rho_saved;
    }
  };
  visit(1.0);

  if (mesh.iterations > bound) {
    std::ostringstream os;
    os << "build_mesh: refinement depth " << mesh.iterations
       << " exceeded the bound " << bound;
    throw NumericalError(os.str());
  }
  KahanSum total;
  for (double m : mesh.mu) total.add(m);
  if (std::abs(total.value().real() - 1.0) > 1e-13) {
    throw NumericalError("build_mesh: word measures do not sum to 1");
  }
  return mesh;
}

std::complex<double> h_integrate(const CubatureRule& rule, const Mesh& mesh,
                                 const Ifs& ifs, const Integrand& f) {
  KahanSum total;
  for (std::size_t m = 0; m < mesh.size(); ++m) {
    const AffineMap map = compose_word(ifs, mesh.words[m]);
    KahanSum partial;
    for (int i = 0; i < rule.size(); ++i) {
      const Vector y = map(rule.points[i]);
      const std::complex<double> value = f(y);
      if (!finite(value)) {
        throw NumericalError("h_integrate: integrand " + f.name +
                             " is non-finite at word " + word_string(mesh.words[m]) +
                             ", point " + point_string(y));
      }
      partial.add(rule.weights[i] * value);
    }
    total.add(mesh.mu[m] * partial.value());
  }
  return total.value();
}

std::vector<std::vector<Vector>> mesh_boxes(const Mesh& mesh, const Ifs& ifs,
                                            const BoundingBox& box) {
  std::vector<std::vector<Vector>> out;
  out.reserve(mesh.size());
  for (const Word& word : mesh.words) {
    const AffineMap map = compose_word(ifs, word);
    std::vector<Vector> corners;
    corners.reserve(box.corner_count());
    for (std::uint64_t mask = 0; mask < box.corner_count(); ++mask) {
      corners.push_back(map(box.corner(mask)));
    }
    out.push_back(std::move(corners));
  }
  return out;
}

}  // namespace fcub
