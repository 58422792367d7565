#pragma once

#include <cstdint>
#include <vector>

#include "spingas/model.hpp"
#include "spingas/potential.hpp"
#include "spingas/types.hpp"
#include "spingas/units.hpp"

namespace spingas {

// ---- stochastic collision simulator ----
//
// Independent oracle for the collision-model generator: gas particles arrive
// as a Poisson stream at the total flux rate; each collision applies the
// unitary W = exp(-i J(p,b) F) to system (x) internal state |j><j| and traces
// the particle out (a CPTP map by construction), with free system evolution
// in between.

enum class TauMode { Straight, Refracted };

struct SimConfig {
  int trajectories = 1;
  double t_end = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> sample_times;  // ascending, within [0, t_end]
  TauMode tau_mode = TauMode::Straight;
  double f_expect = 0.0;  // <F> for Refracted mode
  int threads = 1;        // worker cap; never changes results
  int batches = 256;      // batch count for the standard-error estimate
};

struct EnsembleResult {
  std::vector<double> times;
  std::vector<Matrix> mean;              // ensemble-mean rho per sample time
  std::vector<Eigen::MatrixXd> se;       // per-entry standard error
                                         // sqrt(Var re + Var im), batch-based
  std::vector<double> se_scale;          // (1/2) sqrt(sum_kl Var rho_kl):
                                         // trace-distance-scale standard error
  double collision_rate = 0.0;           // R
  double collision_mean = 0.0;           // mean collisions per trajectory
  double collision_stddev = 0.0;         // across trajectories
  double stroboscopic_parameter = 0.0;   // |u| tau at typical (p, b)
};

// R = nu pi b_max^2 <p> with <p> = sqrt(8 theta / pi) and b_max the
// potential's impact cutoff (exact support for SquareWell/Tabulated, 8 for
// Gaussian -- the same cutoff the generator quadratures use, so simulator and
// generator describe the same collision ensemble).
double total_collision_rate(const RadialPotential& pot,
                            const GasParameters& gas);

// Effective collision time:
//   Straight:  tau = J(p, b)/u (u != 0)
//   Refracted: SquareWell only,
//              tau = 2 sqrt((1-b^2) p^2 + 2 Delta)/(p^2 + 2 Delta),
//              Delta = -f_expect * u >= 0.
double effective_tau_sample(const RadialPotential& pot, double p, double b,
                            TauMode mode, double f_expect = 0.0);

// Inverse-CDF momentum sampler for the flux-weighted density p^3 f(p):
// exact closed-form CDF tabulated on a 4096-point log-spaced grid anchored
// at p = 0, linear interpolation between nodes.
class MomentumSampler {
 public:
  explicit MomentumSampler(double theta);
  double sample(double unit) const;  // unit in [0, 1)
 private:
  std::vector<double> p_, cdf_;
};

// Runs cfg.trajectories independent trajectories and averages them at
// cfg.sample_times.  Waiting times are exponential at rate R (the natural
// dilute-limit reading of a collision frequency; alternative renewal laws
// would change higher-order statistics only).  Per collision: p from the
// flux density p^3 f(p), b from density 2b/b_max^2, internal state j with
// probability mu_j.  Deterministic for fixed seed regardless of thread
// count: per-trajectory streams are addressed by (seed, trajectory) and
// batches are reduced in fixed order.
EnsembleResult run_ensemble(const SpinModel& model, const RadialPotential& pot,
                            const GasParameters& gas, const SimConfig& cfg,
                            const DensityMatrix& rho0);

} // namespace spingas
