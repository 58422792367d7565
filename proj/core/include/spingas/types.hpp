#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace spingas {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// ---- error types ----

// Raised when an adaptive quadrature cannot reach the requested tolerance
// within its panel budget.  Carries the best error estimate achieved so the
// caller can decide whether the result is still usable.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double achieved, double requested)
      : std::runtime_error(what), achieved_error(achieved),
        requested_error(requested) {}
  double achieved_error;
  double requested_error;
};

// Raised for numerical failures outside quadrature: step-size underflow in
// the ODE integrator, loss of positivity, non-convergent iterations.
class NumericalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace spingas
