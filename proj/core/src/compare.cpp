#include "spingas/compare.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "spingas/cm.hpp"
#include "spingas/ldl.hpp"

namespace spingas {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void mark_failed(ComparisonRecord& rec, const std::string& what) {
  rec.ok = false;
  rec.error = what;
  rec.gamma_ldl = kNan;
  rec.gamma_ldl_closed = kNan;
  rec.c2_cm = kNan;
  rec.ratio = kNan;
  rec.lamb_ldl_coeff = kNan;
  rec.lamb_cm_coeff = kNan;
  rec.hh_estimate = kNan;
  rec.dd_estimate = kNan;
}

} // namespace

std::vector<ComparisonRecord> temperature_sweep(
    const RadialPotential& pot, const SpinModel& model, double nu, double u,
    const std::vector<double>& theta_grid) {
  validate(model);
  std::vector<ComparisonRecord> out;
  out.reserve(theta_grid.size());
  for (double theta : theta_grid) {
    ComparisonRecord rec;
    rec.theta = theta;
    GasParameters gas{nu, theta, u};
    try {
      validate(gas);
      const LdlCoefficients ldl = ldl_coefficients(pot, gas);
      const CmCoefficients cm = cm_coefficients(pot, gas);
      rec.gamma_ldl = ldl.gamma;
      rec.gamma_ldl_closed = ldl.gamma_closed;
      rec.c2_cm = cm.c2;
      rec.ratio = ldl.gamma / cm.c2;
      rec.lamb_ldl_coeff = nu * volume_integral(pot);
      rec.lamb_cm_coeff = cm.c1;
      const auto [hh, dd] = discrepancy_estimates(model, gas);
      rec.hh_estimate = hh;
      rec.dd_estimate = dd;
    } catch (const QuadratureError& e) {
      mark_failed(rec, e.what());
    } catch (const NumericalError& e) {
      mark_failed(rec, e.what());
    } catch (const std::invalid_argument& e) {
      mark_failed(rec, e.what());
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::pair<double, double> discrepancy_estimates(const SpinModel& model,
                                                const GasParameters& gas) {
  validate(gas);
  const double fnorm = spectral_norm(model.f);
  const double hh = std::max(std::abs(gas.u) * fnorm / gas.theta,
                             std::exp(-gas.theta) / std::sqrt(gas.theta));
  const double dd = std::max(std::abs(gas.u) * fnorm, 1.0) / gas.theta;
  return {hh, dd};
}

double fitted_ratio_constant(const std::vector<ComparisonRecord>& records) {
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& rec : records) {
    if (!rec.ok || !std::isfinite(rec.ratio)) continue;
    const double x = 1.0 / rec.theta;
    const double dev = 1.0 - rec.ratio;
    sxy += x * dev;
    sxx += x * x;
  }
  if (sxx == 0.0)
    throw std::invalid_argument(
        "fitted_ratio_constant: no usable sweep rows");
  return sxy / sxx;
}

double spectral_norm(const Matrix& hermitian) {
  if (hermitian.rows() != hermitian.cols())
    throw std::invalid_argument("spectral_norm: matrix must be square");
  if (hermitian.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian,
                                           Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalError("spectral_norm: eigensolver failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace spingas
