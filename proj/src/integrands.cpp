#include "fcub/integrands.hpp"

#include <cmath>
#include <sstream>

#include "fcub/errors.hpp"

namespace fcub {

Integrand helmholtz_integrand(double kappa, Vector x0) {
  if (!x0.allFinite()) {
    throw ValidationError("helmholtz_integrand: source point must be finite");
  }
  std::ostringstream name;
  name << "helmholtz(kappa=" << kappa << ", x0=(";
  for (Eigen::Index i = 0; i < x0.size(); ++i) {
    if (i > 0) name << ",";
    name << x0[i];
  }
  name << "))";
  return Integrand{
      [kappa, x0 = std::move(x0)](const Vector& x) {
        const double r = (x - x0).norm();
        return std::exp(std::complex<double>(0.0, kappa * r)) / r;
      },
      name.str()};
}

Vector default_source_point(int dim) {
  Vector x0(dim);
  if (dim == 1) {
    x0 << -2.0;
  } else {
    x0.setZero();
    x0[0] = 0.1;
    x0[1] = -2.0;
  }
  return x0;
}

Integrand polynomial_integrand(const Polynomial& p, std::string name) {
  return Integrand{[p](const Vector& x) {
                     return std::complex<double>(p.evaluate(x), 0.0);
                   },
                   std::move(name)};
}

}  // namespace fcub
