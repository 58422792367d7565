#pragma once

#include <vector>

#include "spingas/model.hpp"
#include "spingas/types.hpp"

namespace spingas {

// ---- GKSL generator ----

struct GkslChannel {
  double rate = 0.0;  // gamma_k > 0 (zero-weight channels are pruned)
  Matrix a;           // jump operator, dim_s x dim_s
};

// L[rho] = -i [h_eff, rho]
//          + sum_k rate_k (A_k rho A_k^dag - 1/2 {A_k^dag A_k, rho}).
struct GkslGenerator {
  Matrix h_eff;                       // H_S + H_LS, Hermitian
  std::vector<GkslChannel> channels;
};

// Channels are (rate * mu_j, A_ij) over all (i, j) from jump_operators;
// channels with zero weight or identically zero jump operator are pruned
// (they contribute nothing).  Throws std::invalid_argument for rate < 0 or a
// non-Hermitian/mis-sized lamb matrix.
GkslGenerator build_generator(const SpinModel& model, const Matrix& lamb,
                              double rate);

// Dense superoperator matrix of L in the column-stacking convention
// vec(A rho B) = (B^T  kron  A) vec(rho), with vec() stacking columns
// (Eigen's native layout):
//   L = -i (I kron H - H^T kron I)
//       + sum_k rate_k [conj(A) kron A - 1/2 I kron (A^dag A)
//                       - 1/2 (A^dag A)^T kron I].
Matrix liouvillian(const GkslGenerator& gen);

// D[rho] alone (no commutator); Tr D[rho] = 0 to machine precision.
Matrix dissipator_apply(const GkslGenerator& gen, const Matrix& rho);

// Full right-hand side L[rho].
Matrix generator_apply(const GkslGenerator& gen, const Matrix& rho);

// ---- propagation ----

enum class EvolveMethod { Expm, RkAdaptive };

struct EvolveStats {
  long steps = 0;
  long rejected = 0;
  bool renormalized = false;   // trace renormalization was triggered (rk path)
  double max_trace_drift = 0.0;
  double min_eigenvalue = 0.0; // of the final state
};

// Propagates rho0 by time t >= 0.
//   Expm: scaling-and-squaring exponential of the dim_s^2 superoperator;
//         dim_s <= 16 hard cap (memory), larger systems must use RkAdaptive.
//   RkAdaptive: Dormand-Prince 5(4) embedded pair on the matrix ODE with
//         per-step re-Hermitization rho <- (rho + rho^dag)/2; the trace is
//         renormalized only if it drifts beyond 1e-12 (flagged in stats).
// Throws NumericalError on step-size underflow or when the final state's
// minimum eigenvalue falls below -1e-8 (reported, never clipped).
DensityMatrix evolve(const GkslGenerator& gen, const DensityMatrix& rho0,
                     double t, EvolveMethod method,
                     EvolveStats* stats = nullptr);

} // namespace spingas
