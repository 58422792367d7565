#include "spingas/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace spingas {

namespace {

constexpr double kHermTol = 1e-12;

} // namespace

// ---- GKSL generator ----

GkslGenerator build_generator(const SpinModel& model, const Matrix& lamb,
                              double rate) {
  validate(model);
  if (rate < 0.0)
    throw std::invalid_argument("build_generator: rate must be >= 0, got " +
                                std::to_string(rate));
  if (lamb.rows() != model.dim_s || lamb.cols() != model.dim_s)
    throw std::invalid_argument("build_generator: lamb must be dim_s x dim_s");
  if (hermiticity_defect(lamb) > kHermTol)
    throw std::invalid_argument("build_generator: lamb is not Hermitian");

  GkslGenerator gen;
  gen.h_eff = model.h_s + lamb;

  const auto jumps = jump_operators(model);
  gen.channels.reserve(jumps.size());
  for (int i = 0; i < model.dim_g; ++i) {
    for (int j = 0; j < model.dim_g; ++j) {
      const double weight = rate * model.mu[static_cast<std::size_t>(j)];
      const Matrix& a = jumps[static_cast<std::size_t>(i * model.dim_g + j)];
      if (weight == 0.0 || a.norm() == 0.0) continue;
      gen.channels.push_back({weight, a});
    }
  }
  return gen;
}

Matrix liouvillian(const GkslGenerator& gen) {
  const Eigen::Index d = gen.h_eff.rows();
  const Matrix id = Matrix::Identity(d, d);
  const cxd i_unit(0.0, 1.0);

  Matrix l = -i_unit * (Eigen::kroneckerProduct(id, gen.h_eff) -
                        Eigen::kroneckerProduct(gen.h_eff.transpose(), id));
  for (const auto& ch : gen.channels) {
    const Matrix ada = ch.a.adjoint() * ch.a;
    l += ch.rate * (Eigen::kroneckerProduct(ch.a.conjugate(), ch.a) -
                    0.5 * Eigen::kroneckerProduct(id, ada) -
                    0.5 * Eigen::kroneckerProduct(ada.transpose(), id));
  }
  return l;
}

Matrix dissipator_apply(const GkslGenerator& gen, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& ch : gen.channels) {
    const Matrix arho = ch.a * rho;
    const Matrix ada = ch.a.adjoint() * ch.a;
    out += ch.rate * (arho * ch.a.adjoint() -
                      0.5 * (ada * rho + rho * ada));
  }
  return out;
}

Matrix generator_apply(const GkslGenerator& gen, const Matrix& rho) {
  const cxd i_unit(0.0, 1.0);
  Matrix out = -i_unit * (gen.h_eff * rho - rho * gen.h_eff);
  out += dissipator_apply(gen, rho);
  return out;
}

// ---- propagation ----

namespace {

DensityMatrix evolve_expm(const GkslGenerator& gen, const DensityMatrix& rho0,
                          double t, EvolveStats* stats) {
  const Eigen::Index d = rho0.rho.rows();
  if (d > 16)
    throw std::invalid_argument(
        "evolve: Expm is limited to dim_s <= 16; use RkAdaptive");

  const Matrix propagator = (liouvillian(gen) * t).exp();
  const Vector v0 =
      Eigen::Map<const Vector>(rho0.rho.data(), d * d); // column stacking
  const Vector v1 = propagator * v0;

  DensityMatrix out;
  out.rho = Eigen::Map<const Matrix>(v1.data(), d, d);
  out.rho = 0.5 * (out.rho + out.rho.adjoint()).eval();

  if (stats != nullptr) {
    stats->steps = 1;
    stats->rejected = 0;
    stats->renormalized = false;
    stats->max_trace_drift = std::abs(out.rho.trace().real() - 1.0);
  }
  return out;
}

// Dormand-Prince 5(4) embedded pair.
struct Dopri5 {
  static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                          c5 = 8.0 / 9.0;
  static constexpr double a21 = 1.0 / 5.0;
  static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0,
                          a43 = 32.0 / 9.0;
  static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                          a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                          a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                          a65 = -5103.0 / 18656.0;
  static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0,
                          b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                          b6 = 11.0 / 84.0;
  static constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0,
                          e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                          e4 = 125.0 / 192.0 - 393.0 / 640.0,
                          e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
                          e6 = 11.0 / 84.0 - 187.0 / 2100.0,
                          e7 = -1.0 / 40.0;
};

DensityMatrix evolve_rk(const GkslGenerator& gen, const DensityMatrix& rho0,
                        double t, EvolveStats* stats) {
  constexpr double kRtol = 1e-10;
  constexpr double kAtol = 1e-12;
  constexpr double kTraceTol = 1e-12;

  Matrix y = rho0.rho;
  double time = 0.0;
  long steps = 0;
  long rejected = 0;
  bool renorm = false;
  double max_drift = 0.0;

  auto rhs = [&gen](const Matrix& m) { return generator_apply(gen, m); };

  // Initial step from the local derivative scale.
  Matrix k1 = rhs(y);
  double h = t;
  {
    const double dnorm = k1.cwiseAbs().maxCoeff();
    if (dnorm > 0.0)
      h = std::min(t, 0.1 * std::max(kAtol, kRtol * y.cwiseAbs().maxCoeff()) /
                           (kRtol * dnorm + kAtol));
    if (!(h > 0.0)) h = t;
  }

  while (time < t) {
    h = std::min(h, t - time);
    if (h < 1e-14 * std::max(t, 1.0))
      throw NumericalError("evolve: step size underflow at t = " +
                           std::to_string(time));

    const Matrix k2 = rhs(y + h * (Dopri5::a21 * k1));
    const Matrix k3 = rhs(y + h * (Dopri5::a31 * k1 + Dopri5::a32 * k2));
    const Matrix k4 =
        rhs(y + h * (Dopri5::a41 * k1 + Dopri5::a42 * k2 + Dopri5::a43 * k3));
    const Matrix k5 = rhs(y + h * (Dopri5::a51 * k1 + Dopri5::a52 * k2 +
                                   Dopri5::a53 * k3 + Dopri5::a54 * k4));
    const Matrix k6 =
        rhs(y + h * (Dopri5::a61 * k1 + Dopri5::a62 * k2 + Dopri5::a63 * k3 +
                     Dopri5::a64 * k4 + Dopri5::a65 * k5));
    const Matrix y5 = y + h * (Dopri5::b1 * k1 + Dopri5::b3 * k3 +
                               Dopri5::b4 * k4 + Dopri5::b5 * k5 +
                               Dopri5::b6 * k6);
    const Matrix k7 = rhs(y5); // FSAL
    const Matrix err_m =
        h * (Dopri5::e1 * k1 + Dopri5::e3 * k3 + Dopri5::e4 * k4 +
             Dopri5::e5 * k5 + Dopri5::e6 * k6 + Dopri5::e7 * k7);

    const double scale =
        kAtol + kRtol * std::max(y.cwiseAbs().maxCoeff(),
                                 y5.cwiseAbs().maxCoeff());
    const double err = err_m.cwiseAbs().maxCoeff() / scale;

    if (err <= 1.0) {
      time += h;
      y = 0.5 * (y5 + y5.adjoint()).eval();
      const double drift = std::abs(y.trace().real() - 1.0);
      max_drift = std::max(max_drift, drift);
      if (drift > kTraceTol) {
        y /= y.trace().real();
        renorm = true;
      }
      k1 = rhs(y); // re-evaluate: Hermitization/renorm moved the state
      ++steps;
    } else {
      ++rejected;
    }

    const double factor =
        (err > 0.0) ? 0.9 * std::pow(err, -0.2)
                    : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }

  DensityMatrix out;
  out.rho = std::move(y);
  if (stats != nullptr) {
    stats->steps = steps;
    stats->rejected = rejected;
    stats->renormalized = renorm;
    stats->max_trace_drift = max_drift;
  }
  return out;
}

} // namespace

DensityMatrix evolve(const GkslGenerator& gen, const DensityMatrix& rho0,
                     double t, EvolveMethod method, EvolveStats* stats) {
  validate(rho0);
  if (!(t >= 0.0))
    throw std::invalid_argument("evolve: t must be >= 0");
  if (gen.h_eff.rows() != rho0.rho.rows())
    throw std::invalid_argument("evolve: generator/state dimension mismatch");

  if (t == 0.0) {
    DensityMatrix out = rho0;
    if (stats != nullptr) {
      *stats = EvolveStats{};
      stats->min_eigenvalue = min_eigenvalue(out.rho);
    }
    return out;
  }

  DensityMatrix out = (method == EvolveMethod::Expm)
                          ? evolve_expm(gen, rho0, t, stats)
                          : evolve_rk(gen, rho0, t, stats);

  const double min_eig = min_eigenvalue(out.rho);
  if (stats != nullptr) stats->min_eigenvalue = min_eig;
  if (min_eig < -1e-8)
    throw NumericalError("evolve: final state has eigenvalue " +
                         std::to_string(min_eig) + " below -1e-8");
  return out;
}

} // namespace spingas
