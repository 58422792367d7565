#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "spingas/model.hpp"
#include "spingas/quadrature.hpp"
#include "test_util.hpp"

using namespace spingas;
using namespace testutil;

TEST_CASE("model: jump operators of sigma_z (x) sigma_z") {
  SpinModel m = dephasing_model();
  auto a = jump_operators(m);
  REQUIRE(a.size() == 4);
  CHECK(max_abs(a[0] - pauli_z()) == 0.0);  // A_00 = sigma_z
  CHECK(max_abs(a[1]) == 0.0);              // A_01 = 0
  CHECK(max_abs(a[2]) == 0.0);              // A_10 = 0
  CHECK(max_abs(a[3] + pauli_z()) == 0.0);  // A_11 = -sigma_z
}

TEST_CASE("model: jump operators of identity interaction") {
  SpinModel m = dephasing_model();
  m.f = Matrix::Identity(4, 4);
  auto a = jump_operators(m);
  CHECK(max_abs(a[0] - Matrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs(a[1]) == 0.0);
  CHECK(max_abs(a[2]) == 0.0);
  CHECK(max_abs(a[3] - Matrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("model: jump operators of sigma_x (x) sigma_x") {
  SpinModel m = dephasing_model();
  m.f = kron(pauli_x(), pauli_x());
  auto a = jump_operators(m);
  CHECK(max_abs(a[0]) == 0.0);
  CHECK(max_abs(a[1] - pauli_x()) == 0.0);
  CHECK(max_abs(a[2] - pauli_x()) == 0.0);
  CHECK(max_abs(a[3]) == 0.0);
}

TEST_CASE("model: jump operators contract back to F^2 diagonal blocks") {
  SpinModel m;
  m.dim_s = 3;
  m.dim_g = 2;
  m.h_s = random_hermitian(3, 11);
  m.f = random_hermitian(6, 12);
  m.mu = RealVector(2);
  m.mu << 0.3, 0.7;
  validate(m);

  auto a = jump_operators(m);
  // A_ij^dagger = A_ji entrywise.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(max_abs(a[i * 2 + j].adjoint() - a[j * 2 + i]) < 1e-15);

  // sum_{ij} mu_j tr[A_ij^dag A_ij] = sum_j mu_j tr[(F^2)_jj block].
  double lhs = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      lhs += m.mu[j] * (a[i * 2 + j].adjoint() * a[i * 2 + j]).trace().real();
  Matrix f2 = m.f * m.f;
  double rhs = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 3; ++k) rhs += m.mu[j] * f2(k * 2 + j, k * 2 + j).real();
  CHECK(rel_err(lhs, rhs) < 1e-13);
}

TEST_CASE("model: validation rejects bad inputs") {
  SpinModel m = dephasing_model();
  CHECK_NOTHROW(validate(m));

  SpinModel bad = m;
  bad.h_s(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  bad = m;
  bad.f(0, 1) += cxd(0, 1e-6);
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  bad = m;
  bad.mu[0] = 0.7;  // sum != 1
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  bad = m;
  bad.mu << 1.5, -0.5;  // negative weight
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  bad = m;
  bad.dim_g = 3;  // f no longer (dim_s*dim_g)^2
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  bad = m;
  bad.dim_s = 1;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("model: hermiticity defect") {
  CHECK(hermiticity_defect(pauli_y()) == 0.0);
  Matrix m = pauli_y();
  m(0, 1) += cxd(0, 2e-9);
  CHECK(hermiticity_defect(m) == doctest::Approx(2e-9).epsilon(1e-6));
}

TEST_CASE("model: density-matrix validation") {
  DensityMatrix dm;
  dm.rho = Matrix(2, 2);
  dm.rho << 0.5, 0.5, 0.5, 0.5;
  CHECK_NOTHROW(validate(dm));

  dm.rho << 0.6, 0, 0, 0.5;  // trace 1.1
  CHECK_THROWS_AS(validate(dm), std::invalid_argument);

  dm.rho << 0.2, 0.5, 0.5, 0.8;  // min eigenvalue < 0
  CHECK_THROWS_AS(validate(dm), std::invalid_argument);

  dm.rho << 0.5, cxd(0, 0.1), cxd(0, 0.1), 0.5;  // not Hermitian
  CHECK_THROWS_AS(validate(dm), std::invalid_argument);
}

TEST_CASE("model: Maxwell-Boltzmann density values and moments") {
  // (2 pi)^{-3/2} at the origin for theta = 1.
  CHECK(rel_err(maxwell_boltzmann_pdf(0.0, 1.0), 0.063493635934240969) < 1e-14);

  for (double theta : {0.3, 1.0, 42.0}) {
    auto moment = [&](int k) {
      auto f = [&](double p) {
        return 4.0 * M_PI * std::pow(p, 2 + k) * maxwell_boltzmann_pdf(p, theta);
      };
      auto edges = linear_edges(0.0, 12.0 * std::sqrt(theta), 32);
      return integrate_adaptive(f, edges, 1e-12).value;
    };
    CHECK(std::abs(moment(0) - 1.0) < 1e-10);                        // normalization
    CHECK(rel_err(moment(1), std::sqrt(8.0 * theta / M_PI)) < 1e-10); // <p>
    CHECK(rel_err(0.5 * moment(2), 1.5 * theta) < 1e-10);            // <p^2>/2 = 3 theta/2
    CHECK(rel_err(mean_momentum(theta), std::sqrt(8.0 * theta / M_PI)) < 1e-15);
  }
}

TEST_CASE("model: flux CDF") {
  const double theta = 100.0;
  // Quantiles of the flux-weighted density p^3 f(p).
  CHECK(std::abs(flux_cdf(10.3132110, theta) - 0.1) < 1e-7);
  CHECK(std::abs(flux_cdf(18.3212827, theta) - 0.5) < 1e-7);
  CHECK(std::abs(flux_cdf(27.8916481, theta) - 0.9) < 1e-7);

  CHECK(flux_cdf(0.0, theta) == 0.0);
  CHECK(flux_cdf(1e3, theta) == doctest::Approx(1.0));

  // Small-argument series region: C ~ X^2/2 with X = p^2/(2 theta).
  double p = 1e-3;
  double x = p * p / (2.0 * theta);
  CHECK(rel_err(flux_cdf(p, theta), 0.5 * x * x) < 1e-6);
  CHECK(flux_cdf(p, theta) > 0.0);
}
