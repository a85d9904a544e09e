#include "twc/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <sstream>

#include "twc/errors.hpp"

namespace twc::quad {

namespace {

Estimate checked(double value, double error, double abs_tol, const char* method) {
  if (!std::isfinite(value) || !(error <= abs_tol)) {
    std::ostringstream os;
    os << method << " quadrature did not converge: value " << value << ", error estimate "
       << error << " above tolerance " << abs_tol;
    throw NumericError(os.str());
  }
  return {value, error};
}

}  // namespace

Estimate integrate(const Integrand& f, double a, double b, double abs_tol) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, 15, 1e-11, &error, &l1);
  return checked(value, error, abs_tol, "Gauss-Kronrod");
}

Estimate integrate_endpoints(const Integrand& f, double a, double b, double abs_tol) {
  double error = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  boost::math::quadrature::tanh_sinh<double> rule;
  const double value = rule.integrate(f, a, b, 1e-12, &error, &l1, &levels);
  return checked(value, error, abs_tol, "tanh-sinh");
}

}  // namespace twc::quad
