#pragma once

#include <vector>

#include "spingas/types.hpp"
#include "spingas/units.hpp"

namespace spingas {

// ---- spin model ----

// System + gas-particle internal structure.  The interaction operator f acts
// on the product space system (x) particle-internal with the system-major
// index convention: basis state |k>_S (x) |i>_g sits at row k*dim_g + i.
struct SpinModel {
  int dim_s = 2;   // system Hilbert dimension, >= 2
  int dim_g = 1;   // particle internal dimension, >= 1
  Matrix h_s;      // dim_s x dim_s Hermitian system Hamiltonian
  Matrix f;        // (dim_s*dim_g)^2 Hermitian interaction operator
  RealVector mu;   // length dim_g, internal-state weights, mu_i >= 0, sum 1
};

// Hermiticity is rejected, never silently symmetrized.
void validate(const SpinModel& model);

// Max entrywise |M - M^dagger|.
double hermiticity_defect(const Matrix& m);

// ---- density matrix ----

struct DensityMatrix {
  Matrix rho;
};

// Hermitian to 1e-12, trace 1 to 1e-12, min eigenvalue >= -eig_tol.
void validate(const DensityMatrix& dm, double eig_tol = 1e-10);

double min_eigenvalue(const Matrix& hermitian);

// ---- operations ----

// Partial matrix elements A_ij = <i|F|j> on the particle internal factor:
// (A_ij)_{kl} = F_{k*dim_g+i, l*dim_g+j}.  Returned in index order
// A[i*dim_g + j]; A_ij^dagger = A_ji entrywise since F is Hermitian.
std::vector<Matrix> jump_operators(const SpinModel& model);

// Isotropic 3D Maxwell-Boltzmann density f(p) = (2 pi theta)^{-3/2}
// exp(-p^2 / 2 theta); integrates to 1 against 4 pi p^2 dp.
double maxwell_boltzmann_pdf(double p, double theta);

// Mean speed <p> = sqrt(8 theta / pi).
double mean_momentum(double theta);

// CDF of the flux-weighted density p^3 f(p) (normalized):
// C(p) = 1 - (1 + X) exp(-X), X = p^2 / (2 theta).
double flux_cdf(double p, double theta);

} // namespace spingas
