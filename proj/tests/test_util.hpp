#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>

#include "spingas/model.hpp"
#include "spingas/types.hpp"

namespace testutil {

using spingas::cxd;
using spingas::Matrix;

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// (1/2) sum |eigenvalues| of the Hermitian difference.
inline double trace_distance(const Matrix& a, const Matrix& b) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, cxd(0, -1), cxd(0, 1), 0;
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Qubit system coupled to a two-state particle through sigma_z (x) sigma_z:
// pure dephasing, and the Lamb-shift weight sum mu_i A_ii vanishes by
// symmetry.
inline spingas::SpinModel dephasing_model() {
  spingas::SpinModel m;
  m.dim_s = 2;
  m.dim_g = 2;
  m.h_s = 0.5 * pauli_z();
  m.f = kron(pauli_z(), pauli_z());
  m.mu = spingas::RealVector::Constant(2, 0.5);
  return m;
}

// Small deterministic pseudo-random stream (64-bit LCG), so "random matrix"
// tests are reproducible without seeding global state.
class DetRand {
 public:
  explicit DetRand(std::uint64_t seed) : s_(seed * 2654435769u + 1) {}
  double uniform() {  // on [-1, 1)
    s_ = s_ * 6364136223846793005ull + 1442695040888963407ull;
    return 2.0 * static_cast<double>(s_ >> 11) * 0x1.0p-53 - 1.0;
  }

 private:
  std::uint64_t s_;
};

inline Matrix random_hermitian(int n, std::uint64_t seed) {
  DetRand rng(seed);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cxd(rng.uniform(), rng.uniform());
  return 0.5 * (m + m.adjoint()).eval();
}

}  // namespace testutil
