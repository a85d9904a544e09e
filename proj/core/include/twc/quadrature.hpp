#pragma once

#include <functional>

// Adaptive one-dimensional integration. Bounds may be infinite.
namespace twc::quad {

using Integrand = std::function<double(double)>;

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (61 points). Throws NumericError when the error
/// estimate stays above `abs_tol` or the value is not finite.
Estimate integrate(const Integrand& f, double a, double b, double abs_tol = 1e-8);

/// Tanh-sinh, for integrable singularities at the endpoints of a finite range.
Estimate integrate_endpoints(const Integrand& f, double a, double b, double abs_tol = 1e-8);

}  // namespace twc::quad
