#include "spingas/model.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace spingas {

namespace {
constexpr double kHermTol = 1e-12;
constexpr double kPi = 3.14159265358979323846;
} // namespace

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian,
                                           Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void validate(const SpinModel& model) {
  if (model.dim_s < 2) throw std::invalid_argument("model: dim_s must be >= 2");
  if (model.dim_g < 1) throw std::invalid_argument("model: dim_g must be >= 1");
  const int d = model.dim_s * model.dim_g;
  if (model.h_s.rows() != model.dim_s || model.h_s.cols() != model.dim_s)
    throw std::invalid_argument("model: h_s must be dim_s x dim_s");
  if (model.f.rows() != d || model.f.cols() != d)
    throw std::invalid_argument(
        "model: f must be (dim_s*dim_g) x (dim_s*dim_g)");
  if (model.mu.size() != model.dim_g)
    throw std::invalid_argument("model: mu must have dim_g entries");
  if (hermiticity_defect(model.h_s) > kHermTol)
    throw std::invalid_argument("model: h_s is not Hermitian (tol 1e-12)");
  if (hermiticity_defect(model.f) > kHermTol)
    throw std::invalid_argument("model: f is not Hermitian (tol 1e-12)");
  double sum = 0.0;
  for (int i = 0; i < model.dim_g; ++i) {
    if (model.mu[i] < 0.0)
      throw std::invalid_argument("model: mu entries must be >= 0");
    sum += model.mu[i];
  }
  if (std::abs(sum - 1.0) > kHermTol)
    throw std::invalid_argument("model: mu must sum to 1 (tol 1e-12)");
}

void validate(const DensityMatrix& dm, double eig_tol) {
  const auto& rho = dm.rho;
  if (rho.rows() != rho.cols() || rho.rows() < 1)
    throw std::invalid_argument("density matrix must be square");
  if (hermiticity_defect(rho) > kHermTol)
    throw std::invalid_argument("density matrix is not Hermitian (tol 1e-12)");
  if (std::abs(rho.trace().real() - 1.0) > kHermTol ||
      std::abs(rho.trace().imag()) > kHermTol)
    throw std::invalid_argument("density matrix trace must be 1 (tol 1e-12)");
  if (min_eigenvalue(rho) < -eig_tol)
    throw std::invalid_argument("density matrix has a negative eigenvalue");
}

std::vector<Matrix> jump_operators(const SpinModel& model) {
  validate(model);
  const int ds = model.dim_s, dg = model.dim_g;
  std::vector<Matrix> a(static_cast<std::size_t>(dg) * dg);
  for (int i = 0; i < dg; ++i)
    for (int j = 0; j < dg; ++j) {
      Matrix aij(ds, ds);
      for (int k = 0; k < ds; ++k)
        for (int l = 0; l < ds; ++l) aij(k, l) = model.f(k * dg + i, l * dg + j);
      a[static_cast<std::size_t>(i) * dg + j] = std::move(aij);
    }
  return a;
}

double maxwell_boltzmann_pdf(double p, double theta) {
  if (p < 0.0) throw std::invalid_argument("maxwell_boltzmann_pdf: p < 0");
  if (!(theta > 0.0))
    throw std::invalid_argument("maxwell_boltzmann_pdf: theta must be > 0");
  return std::pow(2.0 * kPi * theta, -1.5) * std::exp(-p * p / (2.0 * theta));
}

double mean_momentum(double theta) { return std::sqrt(8.0 * theta / kPi); }

double flux_cdf(double p, double theta) {
  if (p <= 0.0) return 0.0;
  const double x = p * p / (2.0 * theta);
  // 1 - (1+x)e^{-x}; stable small-x form via expm1.
  if (x < 1e-4) {
    // 1-(1+x)e^{-x} = x^2/2 - x^3/3 + x^4/8 - ...
    return x * x * (0.5 - x / 3.0 + x * x / 8.0);
  }
  return -std::expm1(-x) - x * std::exp(-x);
}

} // namespace spingas
