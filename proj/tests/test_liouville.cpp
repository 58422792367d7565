#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "spingas/liouville.hpp"
#include "test_util.hpp"

using namespace spingas;
using namespace testutil;

namespace {

DensityMatrix plus_state() {
  DensityMatrix dm;
  dm.rho = Matrix(2, 2);
  dm.rho << 0.5, 0.5, 0.5, 0.5;
  return dm;
}

GkslGenerator dephasing_generator(double rate) {
  SpinModel m = dephasing_model();
  return build_generator(m, Matrix::Zero(2, 2), rate);
}

}  // namespace

TEST_CASE("liouville: generator assembly and channel pruning") {
  GkslGenerator gen = dephasing_generator(0.3);
  // A_01 = A_10 = 0 are pruned; the two sigma_z channels survive.
  CHECK(gen.channels.size() == 2);
  for (const auto& ch : gen.channels) CHECK(ch.rate == doctest::Approx(0.15));

  CHECK(dephasing_generator(0.0).channels.empty());

  SpinModel m = dephasing_model();
  CHECK_THROWS_AS(build_generator(m, Matrix::Zero(2, 2), -0.1), std::invalid_argument);
  CHECK_THROWS_AS(build_generator(m, Matrix::Zero(3, 3), 0.1), std::invalid_argument);
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = cxd(0, 1);
  skew(1, 0) = cxd(0, 1);  // anti-Hermitian off-diagonal pair
  CHECK_THROWS_AS(build_generator(m, skew, 0.1), std::invalid_argument);
}

TEST_CASE("liouville: dephasing dissipator equals Gamma (sigma_z rho sigma_z - rho)") {
  const double rate = 0.37;
  GkslGenerator gen = dephasing_generator(rate);
  Matrix rho = random_hermitian(2, 5);  // any Hermitian argument works here

  Matrix want = rate * (pauli_z() * rho * pauli_z() - rho);
  CHECK(max_abs(dissipator_apply(gen, rho) - want) < 1e-14);

  // Dissipator output is traceless.
  CHECK(std::abs(dissipator_apply(gen, rho).trace()) < 1e-13);

  // At rho = |+><+| the populations are untouched and coherences flip sign.
  Matrix d = dissipator_apply(gen, plus_state().rho);
  Matrix dwant(2, 2);
  dwant << 0, -2.0 * rate * 0.5, -2.0 * rate * 0.5, 0;
  CHECK(max_abs(d - dwant) < 1e-14);
}

TEST_CASE("liouville: identity interaction dissipates nothing") {
  SpinModel m = dephasing_model();
  m.f = Matrix::Identity(4, 4);
  GkslGenerator gen = build_generator(m, Matrix::Zero(2, 2), 0.8);
  Matrix rho = random_hermitian(2, 9);
  CHECK(max_abs(dissipator_apply(gen, rho)) < 1e-14);
}

TEST_CASE("liouville: zero rate leaves the pure commutator") {
  GkslGenerator gen = dephasing_generator(0.0);
  Matrix rho = random_hermitian(2, 7);
  Matrix want = cxd(0, -1) * (gen.h_eff * rho - rho * gen.h_eff);
  CHECK(max_abs(generator_apply(gen, rho) - want) < 1e-14);
}

TEST_CASE("liouville: superoperator matches direct application") {
  SpinModel m;
  m.dim_s = 3;
  m.dim_g = 2;
  m.h_s = random_hermitian(3, 21);
  m.f = random_hermitian(6, 22);
  m.mu = RealVector(2);
  m.mu << 0.4, 0.6;
  GkslGenerator gen = build_generator(m, random_hermitian(3, 23), 0.5);

  Matrix l = liouvillian(gen);
  Matrix rho = random_hermitian(3, 24);
  Eigen::Map<const Vector> vec(rho.data(), 9);
  Vector lv = l * vec;
  Eigen::Map<const Matrix> lv_mat(lv.data(), 3, 3);
  CHECK(max_abs(lv_mat - generator_apply(gen, rho)) < 1e-13);

  // Trace preservation: Tr L[rho] = 0 for random Hermitian rho.
  CHECK(std::abs(generator_apply(gen, rho).trace()) < 1e-12);

  // Unital for self-adjoint-closed channels: L[I/d] = 0 when H = 0.
  GkslGenerator dep = dephasing_generator(0.9);
  dep.h_eff = Matrix::Zero(2, 2);
  Matrix maxmix = Matrix::Identity(2, 2) / 2.0;
  CHECK(max_abs(generator_apply(dep, maxmix)) < 1e-15);
}

TEST_CASE("liouville: column-stacking convention pinned by a worked example") {
  // Pure commutator with H = sigma_z: [H, |0><1|] = 2 |0><1|, so in
  // column-stacked coordinates (index i + 2j) the superoperator must carry
  // -2i at row = col = 2 and nothing else in that column.
  SpinModel m = dephasing_model();
  m.h_s = pauli_z();
  GkslGenerator gen = build_generator(m, Matrix::Zero(2, 2), 0.0);
  Matrix l = liouvillian(gen);
  CHECK(std::abs(l(2, 2) - cxd(0, -2)) < 1e-15);
  CHECK(std::abs(l(0, 2)) + std::abs(l(1, 2)) + std::abs(l(3, 2)) < 1e-15);
}

TEST_CASE("liouville: dephasing coherence decay, both methods") {
  const double rate = 0.1;
  GkslGenerator gen = dephasing_generator(rate);
  for (auto method : {EvolveMethod::Expm, EvolveMethod::RkAdaptive}) {
    for (double t : {0.0, 1.0, 5.0}) {
      DensityMatrix out = evolve(gen, plus_state(), t, method);
      // rho01(t) = (1/2) e^{-2 Gamma t} e^{-i t} with H = sigma_z / 2.
      cxd want = 0.5 * std::exp(-2.0 * rate * t) *
                 std::exp(cxd(0, -1) * t);
      CHECK(std::abs(out.rho(0, 1) - want) < 1e-9);
      CHECK(std::abs(out.rho(0, 0).real() - 0.5) < 1e-12);
      CHECK(std::abs(out.rho.trace() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("liouville: unitary precession") {
  SpinModel m = dephasing_model();
  const double omega = 2.7;
  m.h_s = 0.5 * omega * pauli_z();
  GkslGenerator gen = build_generator(m, Matrix::Zero(2, 2), 0.0);
  for (auto method : {EvolveMethod::Expm, EvolveMethod::RkAdaptive}) {
    DensityMatrix out = evolve(gen, plus_state(), 3.0, method);
    cxd want = 0.5 * std::exp(cxd(0, -omega * 3.0));
    CHECK(std::abs(out.rho(0, 1) - want) < 1e-9);
  }
}

TEST_CASE("liouville: t = 0 is the identity map") {
  GkslGenerator gen = dephasing_generator(0.2);
  DensityMatrix out = evolve(gen, plus_state(), 0.0, EvolveMethod::Expm);
  CHECK(max_abs(out.rho - plus_state().rho) == 0.0);
}

TEST_CASE("liouville: propagation preserves state validity over long horizons") {
  const double rate = 0.05;
  GkslGenerator gen = dephasing_generator(rate);
  EvolveStats stats;
  for (double t : {0.5 / rate, 2.0 / rate, 10.0 / rate}) {
    DensityMatrix out = evolve(gen, plus_state(), t, EvolveMethod::Expm, &stats);
    CHECK(std::abs(out.rho.trace() - 1.0) <= 1e-10);
    CHECK(hermiticity_defect(out.rho) <= 1e-10);
    CHECK(stats.min_eigenvalue >= -1e-8);
  }
}

TEST_CASE("liouville: semigroup property") {
  SpinModel m;
  m.dim_s = 2;
  m.dim_g = 2;
  m.h_s = random_hermitian(2, 31);
  m.f = random_hermitian(4, 32);
  m.mu = RealVector(2);
  m.mu << 0.25, 0.75;
  GkslGenerator gen = build_generator(m, random_hermitian(2, 33) * 0.1, 0.2);

  DensityMatrix a = evolve(gen, plus_state(), 1.9, EvolveMethod::Expm);
  DensityMatrix b = evolve(gen, a, 1.3, EvolveMethod::Expm);
  DensityMatrix c = evolve(gen, plus_state(), 3.2, EvolveMethod::Expm);
  CHECK(max_abs(b.rho - c.rho) < 1e-8);
}

TEST_CASE("liouville: method agreement on random small generators") {
  for (std::uint64_t seed : {41u, 42u, 43u}) {
    SpinModel m;
    m.dim_s = 3;
    m.dim_g = 2;
    m.h_s = random_hermitian(3, seed);
    m.f = random_hermitian(6, seed + 100);
    m.mu = RealVector(2);
    m.mu << 0.5, 0.5;
    GkslGenerator gen = build_generator(m, Matrix::Zero(3, 3), 0.3);

    DensityMatrix rho0;
    rho0.rho = Matrix::Zero(3, 3);
    rho0.rho(0, 0) = 0.6;
    rho0.rho(1, 1) = 0.4;
    rho0.rho(0, 1) = rho0.rho(1, 0) = 0.3;

    EvolveStats st;
    DensityMatrix ex = evolve(gen, rho0, 2.0, EvolveMethod::Expm);
    DensityMatrix rk = evolve(gen, rho0, 2.0, EvolveMethod::RkAdaptive, &st);
    CHECK(trace_distance(ex.rho, rk.rho) * 2.0 < 1e-7);  // trace norm
    CHECK(st.steps > 0);
    CHECK(!st.renormalized);
  }
}

TEST_CASE("liouville: guard rails") {
  GkslGenerator gen = dephasing_generator(0.1);
  CHECK_THROWS_AS(evolve(gen, plus_state(), -1.0, EvolveMethod::Expm),
                  std::invalid_argument);

  DensityMatrix bad;
  bad.rho = Matrix(2, 2);
  bad.rho << 0.9, 0, 0, 0.3;  // trace 1.2
  CHECK_THROWS_AS(evolve(gen, bad, 1.0, EvolveMethod::Expm), std::invalid_argument);

  // The dense-exponential path is capped at dim_s = 16.
  SpinModel big;
  big.dim_s = 17;
  big.dim_g = 1;
  big.h_s = Matrix::Zero(17, 17);
  big.f = Matrix::Zero(17, 17);
  big.mu = RealVector::Constant(1, 1.0);
  GkslGenerator bgen = build_generator(big, Matrix::Zero(17, 17), 0.0);
  DensityMatrix id17;
  id17.rho = Matrix::Identity(17, 17) / 17.0;
  CHECK_THROWS_AS(evolve(bgen, id17, 1.0, EvolveMethod::Expm), std::invalid_argument);
  CHECK_NOTHROW(evolve(bgen, id17, 1.0, EvolveMethod::RkAdaptive));
}
