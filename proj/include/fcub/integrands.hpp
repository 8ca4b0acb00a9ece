#pragma once

#include "fcub/cubature.hpp"

namespace fcub {

/// f(x) = exp(i kappa |x - x0|) / |x - x0|, the kernel used in wave
/// scattering. Non-finite at x = x0 itself; callers surface that.
Integrand helmholtz_integrand(double kappa, Vector x0);

/// Source point for the default kernel: (0.1, -2) in 2D, -2 in 1D.
Vector default_source_point(int dim);

/// A polynomial as an integrand (real part carries the value).
Integrand polynomial_integrand(const Polynomial& p, std::string name = "polynomial");

}  // namespace fcub
