#include "spingas/colsim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "spingas/rng.hpp"

namespace spingas {

// ---- collision kinematics ----

double total_collision_rate(const RadialPotential& pot,
                            const GasParameters& gas) {
  validate(gas);
  const double b_max = impact_cutoff(pot);
  return gas.nu * M_PI * b_max * b_max * mean_momentum(gas.theta);
}

double effective_tau_sample(const RadialPotential& pot, double p, double b,
                            TauMode mode, double f_expect) {
  if (!(p > 0.0))
    throw std::invalid_argument("effective_tau_sample: p must be > 0");
  if (b < 0.0)
    throw std::invalid_argument("effective_tau_sample: b must be >= 0");

  if (mode == TauMode::Straight) {
    if (pot.u == 0.0)
      throw std::invalid_argument(
          "effective_tau_sample: u = 0 has no collision timescale");
    return line_integral(pot, p, b) / pot.u;
  }

  if (pot.kind != PotentialKind::SquareWell)
    throw std::invalid_argument(
        "effective_tau_sample: refracted mode supports SquareWell only");
  const double delta = -f_expect * pot.u;
  if (delta < 0.0)
    throw std::invalid_argument(
        "effective_tau_sample: refracted mode requires f_expect * u <= 0");
  if (b > 1.0) return 0.0;  // misses the well
  return 2.0 * std::sqrt((1.0 - b * b) * p * p + 2.0 * delta) /
         (p * p + 2.0 * delta);
}

// ---- momentum sampler ----

MomentumSampler::MomentumSampler(double theta) {
  if (!(theta > 0.0))
    throw std::invalid_argument("MomentumSampler: theta must be > 0");
  const int n = 4096;
  const double s = std::sqrt(theta);
  const double p_lo = 1e-3 * s;
  const double p_hi = 12.0 * s;
  p_.resize(n);
  cdf_.resize(n);
  p_[0] = 0.0;
  for (int i = 1; i < n; ++i)
    p_[i] = p_lo * std::pow(p_hi / p_lo,
                            static_cast<double>(i - 1) / (n - 2));
  for (int i = 0; i < n; ++i) cdf_[i] = flux_cdf(p_[i], theta);
  const double norm = cdf_.back();
  for (double& c : cdf_) c /= norm;
}

double MomentumSampler::sample(double unit) const {
  if (unit <= 0.0) return 0.0;
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), unit);
  if (it == cdf_.end()) return p_.back();
  const std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
  if (i == 0) return p_.front();
  const double dc = cdf_[i] - cdf_[i - 1];
  if (dc <= 0.0) return p_[i];
  const double frac = (unit - cdf_[i - 1]) / dc;
  return p_[i - 1] + frac * (p_[i] - p_[i - 1]);
}

// ---- ensemble runner ----

namespace {

struct BatchAccum {
  std::vector<Matrix> sum;   // per sample time, trajectory-summed rho
  double coll_sum = 0.0;
  double coll_sumsq = 0.0;
  long n = 0;
};

struct SharedSetup {
  const SpinModel* model;
  const RadialPotential* pot;
  const GasParameters* gas;
  const SimConfig* cfg;
  const Matrix* rho0;
  const MomentumSampler* sampler;
  std::vector<double> times;
  double rate = 0.0;
  double b_max = 0.0;

  // fast path (h_s and f both exactly diagonal): phases only
  bool diagonal = false;
  Eigen::VectorXd eps;           // h_s diagonal
  Eigen::MatrixXd dshift;        // dshift(k, j) = F[k dg + j, k dg + j]

  // general path: cached eigendecompositions
  Matrix vh;                     // h_s = vh eh vh^dag
  Eigen::VectorXd eh;
  Matrix vf;                     // f = vf lam vf^dag
  Eigen::VectorXd lam;
};

double collision_phase(const SharedSetup& sh, double p, double b) {
  if (sh.cfg->tau_mode == TauMode::Straight) {
    if (p == 0.0) return 0.0;  // measure-zero draw; keeps phases finite
    return line_integral(*sh.pot, p, b);
  }
  return sh.pot->u *
         effective_tau_sample(*sh.pot, p, b, TauMode::Refracted,
                              sh.cfg->f_expect);
}

int pick_internal(const SpinModel& model, double unit) {
  double cum = 0.0;
  for (int j = 0; j < model.dim_g; ++j) {
    cum += model.mu[static_cast<std::size_t>(j)];
    if (unit < cum) return j;
  }
  return model.dim_g - 1;
}

// Diagonal H_S and F: every collision and the free motion only rotate the
// phases of rho's entries, so a trajectory is a per-level phase accumulator.
void run_trajectory_diagonal(const SharedSetup& sh, std::uint64_t traj,
                             BatchAccum& acc) {
  const int ds = sh.model->dim_s;
  const std::size_t n_samples = sh.times.size();
  TrajectoryRng rng(sh.cfg->seed, traj);
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(ds);
  double t_cur = 0.0;
  std::size_t si = 0;
  long ncoll = 0;

  auto snapshot = [&](double s) {
    Matrix& out = acc.sum[si];
    for (int k = 0; k < ds; ++k) {
      const double arg_k = sh.eps[k] * s + phi[k];
      for (int l = 0; l < ds; ++l) {
        const double arg_l = sh.eps[l] * s + phi[l];
        out(k, l) += (*sh.rho0)(k, l) * std::polar(1.0, arg_l - arg_k);
      }
    }
  };

  for (;;) {
    const double dt = rng.next_exponential(sh.rate);
    const double t_next = t_cur + dt;
    if (t_next > sh.cfg->t_end) {
      while (si < n_samples) {
        snapshot(sh.times[si]);
        ++si;
      }
      break;
    }
    while (si < n_samples && sh.times[si] < t_next) {
      snapshot(sh.times[si]);
      ++si;
    }
    const double p = sh.sampler->sample(rng.next_double());
    const double b = sh.b_max * std::sqrt(rng.next_double());
    const int j = pick_internal(*sh.model, rng.next_double());
    const double chi = collision_phase(sh, p, b);
    for (int k = 0; k < ds; ++k) phi[k] += chi * sh.dshift(k, j);
    ++ncoll;
    t_cur = t_next;
  }

  acc.coll_sum += static_cast<double>(ncoll);
  acc.coll_sumsq += static_cast<double>(ncoll) * static_cast<double>(ncoll);
  acc.n += 1;
}

void run_trajectory_general(const SharedSetup& sh, std::uint64_t traj,
                            BatchAccum& acc) {
  const int ds = sh.model->dim_s;
  const int dg = sh.model->dim_g;
  const std::size_t n_samples = sh.times.size();
  TrajectoryRng rng(sh.cfg->seed, traj);
  Matrix rho = *sh.rho0;
  double t_cur = 0.0;
  std::size_t si = 0;
  long ncoll = 0;
  const cxd mi(0.0, -1.0);

  auto free_prop = [&](const Matrix& m, double dt) -> Matrix {
    const Vector ph = (mi * dt * sh.eh.cast<cxd>().array()).exp().matrix();
    const Matrix u = sh.vh * ph.asDiagonal() * sh.vh.adjoint();
    return u * m * u.adjoint();
  };

  for (;;) {
    const double dt = rng.next_exponential(sh.rate);
    const double t_next = t_cur + dt;
    if (t_next > sh.cfg->t_end) {
      while (si < n_samples) {
        acc.sum[si] += free_prop(rho, sh.times[si] - t_cur);
        ++si;
      }
      break;
    }
    while (si < n_samples && sh.times[si] < t_next) {
      acc.sum[si] += free_prop(rho, sh.times[si] - t_cur);
      ++si;
    }
    const double p = sh.sampler->sample(rng.next_double());
    const double b = sh.b_max * std::sqrt(rng.next_double());
    const int j = pick_internal(*sh.model, rng.next_double());
    const double chi = collision_phase(sh, p, b);

    rho = free_prop(rho, t_next - t_cur);
    // W = exp(-i chi F); Kraus blocks B_i(k, l) = W[k dg + i, l dg + j]
    // give rho' = sum_i B_i rho B_i^dag (trace-preserving: W is unitary).
    const Vector wph = (mi * chi * sh.lam.cast<cxd>().array()).exp().matrix();
    const Matrix w = sh.vf * wph.asDiagonal() * sh.vf.adjoint();
    Matrix rho_new = Matrix::Zero(ds, ds);
    Matrix block(ds, ds);
    for (int i = 0; i < dg; ++i) {
      for (int k = 0; k < ds; ++k)
        for (int l = 0; l < ds; ++l) block(k, l) = w(k * dg + i, l * dg + j);
      rho_new += block * rho * block.adjoint();
    }
    rho = std::move(rho_new);
    ++ncoll;
    t_cur = t_next;
  }

  acc.coll_sum += static_cast<double>(ncoll);
  acc.coll_sumsq += static_cast<double>(ncoll) * static_cast<double>(ncoll);
  acc.n += 1;
}

bool exactly_diagonal(const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != cxd(0.0, 0.0)) return false;
  return true;
}

} // namespace

EnsembleResult run_ensemble(const SpinModel& model, const RadialPotential& pot,
                            const GasParameters& gas, const SimConfig& cfg,
                            const DensityMatrix& rho0) {
  validate(model);
  validate(gas);
  validate(rho0);
  if (rho0.rho.rows() != model.dim_s)
    throw std::invalid_argument("run_ensemble: rho0 must be dim_s x dim_s");
  if (cfg.trajectories < 1)
    throw std::invalid_argument("run_ensemble: trajectories must be >= 1");
  if (!(cfg.t_end >= 0.0))
    throw std::invalid_argument("run_ensemble: t_end must be >= 0");
  if (cfg.threads < 1)
    throw std::invalid_argument("run_ensemble: threads must be >= 1");
  if (cfg.batches < 1)
    throw std::invalid_argument("run_ensemble: batches must be >= 1");
  for (std::size_t i = 0; i < cfg.sample_times.size(); ++i) {
    const double s = cfg.sample_times[i];
    if (!(s >= 0.0) || s > cfg.t_end)
      throw std::invalid_argument(
          "run_ensemble: sample times must lie in [0, t_end]");
    if (i > 0 && s < cfg.sample_times[i - 1])
      throw std::invalid_argument(
          "run_ensemble: sample times must be non-decreasing");
  }
  if (cfg.tau_mode == TauMode::Refracted) {
    if (pot.kind != PotentialKind::SquareWell)
      throw std::invalid_argument(
          "run_ensemble: refracted mode supports SquareWell only");
    if (-cfg.f_expect * pot.u < 0.0)
      throw std::invalid_argument(
          "run_ensemble: refracted mode requires f_expect * u <= 0");
  }

  const MomentumSampler sampler(gas.theta);

  SharedSetup sh;
  sh.model = &model;
  sh.pot = &pot;
  sh.gas = &gas;
  sh.cfg = &cfg;
  sh.rho0 = &rho0.rho;
  sh.sampler = &sampler;
  sh.times =
      cfg.sample_times.empty() ? std::vector<double>{cfg.t_end}
                               : cfg.sample_times;
  sh.rate = total_collision_rate(pot, gas);
  sh.b_max = impact_cutoff(pot);

  sh.diagonal = exactly_diagonal(model.h_s) && exactly_diagonal(model.f);
  if (sh.diagonal) {
    sh.eps = model.h_s.diagonal().real();
    sh.dshift.resize(model.dim_s, model.dim_g);
    for (int k = 0; k < model.dim_s; ++k)
      for (int j = 0; j < model.dim_g; ++j)
        sh.dshift(k, j) = model.f(k * model.dim_g + j, k * model.dim_g + j)
                              .real();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es_h(model.h_s);
    Eigen::SelfAdjointEigenSolver<Matrix> es_f(model.f);
    if (es_h.info() != Eigen::Success || es_f.info() != Eigen::Success)
      throw NumericalError("run_ensemble: eigendecomposition failed");
    sh.vh = es_h.eigenvectors();
    sh.eh = es_h.eigenvalues();
    sh.vf = es_f.eigenvectors();
    sh.lam = es_f.eigenvalues();
  }

  const long n_traj = cfg.trajectories;
  const int n_batches = static_cast<int>(
      std::min<long>(cfg.batches, n_traj));
  const std::size_t n_samples = sh.times.size();
  const int ds = model.dim_s;

  std::vector<BatchAccum> acc(static_cast<std::size_t>(n_batches));
  for (auto& a : acc)
    a.sum.assign(n_samples, Matrix::Zero(ds, ds));

  auto run_batch = [&](int k) {
    const long lo = n_traj * k / n_batches;
    const long hi = n_traj * (k + 1) / n_batches;
    BatchAccum& a = acc[static_cast<std::size_t>(k)];
    for (long traj = lo; traj < hi; ++traj) {
      if (sh.diagonal)
        run_trajectory_diagonal(sh, static_cast<std::uint64_t>(traj), a);
      else
        run_trajectory_general(sh, static_cast<std::uint64_t>(traj), a);
    }
  };

  const int n_workers =
      std::max(1, std::min(cfg.threads, n_batches));
  if (n_workers == 1) {
    for (int k = 0; k < n_batches; ++k) run_batch(k);
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        const int k = next.fetch_add(1);
        if (k >= n_batches) break;
        run_batch(k);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Fixed-order reduction: results are independent of the thread count.
  EnsembleResult res;
  res.times = sh.times;
  res.collision_rate = sh.rate;
  res.mean.assign(n_samples, Matrix::Zero(ds, ds));
  double coll_sum = 0.0;
  double coll_sumsq = 0.0;
  for (const auto& a : acc) {
    for (std::size_t si = 0; si < n_samples; ++si) res.mean[si] += a.sum[si];
    coll_sum += a.coll_sum;
    coll_sumsq += a.coll_sumsq;
  }
  const double nd = static_cast<double>(n_traj);
  for (auto& m : res.mean) m /= nd;
  res.collision_mean = coll_sum / nd;
  if (n_traj > 1) {
    const double var =
        (coll_sumsq - nd * res.collision_mean * res.collision_mean) /
        (nd - 1.0);
    res.collision_stddev = std::sqrt(std::max(0.0, var));
  }

  // Batch-mean standard errors.
  res.se.assign(n_samples, Eigen::MatrixXd::Zero(ds, ds));
  res.se_scale.assign(n_samples, 0.0);
  if (n_batches > 1) {
    const double bb = static_cast<double>(n_batches);
    for (std::size_t si = 0; si < n_samples; ++si) {
      Eigen::MatrixXd var_sum = Eigen::MatrixXd::Zero(ds, ds);
      for (const auto& a : acc) {
        const Matrix m_b = a.sum[si] / static_cast<double>(a.n);
        const Matrix dev = m_b - res.mean[si];
        var_sum += dev.real().cwiseAbs2() + dev.imag().cwiseAbs2();
      }
      const Eigen::MatrixXd var_mean = var_sum / (bb * (bb - 1.0));
      res.se[si] = var_mean.cwiseSqrt();
      res.se_scale[si] = 0.5 * std::sqrt(var_mean.sum());
    }
  }

  res.stroboscopic_parameter = std::abs(
      line_integral(pot, mean_momentum(gas.theta), 0.5 * sh.b_max));
  return res;
}

} // namespace spingas
