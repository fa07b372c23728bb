#include "floqsim/errors.hpp"
#include "floqsim/parallel.hpp"
#include "floqsim/random.hpp"
#include "floqsim/tomography.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace floqsim;

namespace {
const double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

StateVector minus_y() { return StateVector::normalized(1.0, -kI); }

std::vector<ShotRecord> shots_of(const DensityMatrix& rho, long n, std::uint64_t seed) {
  std::vector<ShotRecord> r;
  for (size_t k = 0; k < kTomographyBases.size(); ++k) r.push_back(simulate_shots(rho, kTomographyBases[k], n, mix_seed(seed, k)));
  return r;
}

DensityMatrix printed_minus_y() {
  Matrix2 a;
  a << 0.511048, Complex(-0.0145217, 0.499667), Complex(-0.0145217, -0.499667), 0.488952;
  return DensityMatrix(a, 1e-6);
}

DensityMatrix printed_excited() {
  Matrix2 b;
  b << 0.00590452, Complex(-0.0709229, 0.0289758), Complex(-0.0709229, -0.0289758), 0.994095;
  return DensityMatrix(b, 1e-6);
}

// closed form for qubits: F^2 = Tr(rho sigma) + 2 sqrt(det rho det sigma)
double qubit_fidelity(const Matrix2& a, const Matrix2& b) {
  const double tr = (a * b).trace().real();
  const double da = std::max(0.0, a.determinant().real()), db = std::max(0.0, b.determinant().real());
  return std::sqrt(std::max(0.0, tr + 2 * std::sqrt(da * db)));
}

double sd(const std::vector<double>& v) {
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}
}  // namespace

TEST_CASE("density matrix validation") {
  Matrix2 m = Matrix2::Identity();
  CHECK_THROWS_AS(DensityMatrix{m}, InvalidArgument);
  m << 0.5, 0.1, 0.2, 0.5;
  CHECK_THROWS_AS(DensityMatrix{m}, InvalidArgument);
  m << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(DensityMatrix{m}, InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix::from_bloch(1.0, 0.5, 0.0), InvalidArgument);
  const auto r = DensityMatrix::from_bloch(0.3, -0.4, 0.5);
  const auto b = r.bloch();
  CHECK(b[0] == doctest::Approx(0.3));
  CHECK(b[1] == doctest::Approx(-0.4));
  CHECK(b[2] == doctest::Approx(0.5));
  CHECK(r.purity() == doctest::Approx(0.5 * (1 + 0.5)));
}

TEST_CASE("measured axes of the pre-rotations") {
  // <sz> after the pre-rotation equals r . axis
  const std::array<double, 3> r{0.3, -0.5, 0.6};
  const auto rho = DensityMatrix::from_bloch(r[0], r[1], r[2]);
  for (Basis b : kTomographyBases) {
    const auto a = measured_axis(b);
    const double proj = r[0] * a[0] + r[1] * a[1] + r[2] * a[2];
    CHECK(1 - 2 * excited_probability(rho, b) == doctest::Approx(proj).epsilon(1e-14));
  }
  CHECK(measured_axis(Basis::X90)[1] == 1.0);
  CHECK(measured_axis(Basis::Y90)[0] == -1.0);
  CHECK(parse_basis(basis_name(Basis::Y90)) == Basis::Y90);
}

TEST_CASE("shot simulation examples") {
  const auto one = DensityMatrix::pure(StateVector::excited());
  const auto zero = DensityMatrix::pure(StateVector::ground());
  for (long n : {1L, 17L, 16384L}) {
    CHECK(simulate_shots(one, Basis::Z, n, 3).excited_counts == n);
    CHECK(simulate_shots(zero, Basis::Z, n, 3).excited_counts == 0);
  }
  const auto plus = StateVector::normalized(1.0, 1.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = simulate_shots(plus, Basis::Z, 16384, seed);
    CHECK(std::abs(r.excited_counts - 8192) <= 4 * 64);
    CHECK(r.seed == seed);
  }
  CHECK(simulate_shots(plus, Basis::Z, 1000, 9).excited_counts == simulate_shots(plus, Basis::Z, 1000, 9).excited_counts);
}

TEST_CASE("exact data reconstructs the excited state") {
  const auto data = exact_basis_data(DensityMatrix::pure(StateVector::excited()), 16384);
  MleDiagnostics diag;
  const auto rho = mle_reconstruct(data, {}, &diag);
  Matrix2 ref = Matrix2::Zero();
  ref(1, 1) = 1.0;
  CHECK((rho.matrix() - ref).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(diag.gradient_norm < 1e-9);
}

TEST_CASE("unphysical frequencies land on the boundary") {
  std::vector<ShotRecord> rec;
  for (Basis b : kTomographyBases) rec.push_back({b, 1000, 1000, 0});
  const auto rho = mle_reconstruct(rec);
  CHECK(rho.min_eigenvalue() >= -1e-10);
  CHECK(rho.min_eigenvalue() < 1e-4);
  CHECK(rho.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reconstruction is physical for arbitrary counts") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> c(0, 200);
  for (int i = 0; i < 200; ++i) {
    std::vector<ShotRecord> rec;
    for (Basis b : kTomographyBases) rec.push_back({b, 200, c(rng), 0});
    const auto rho = mle_reconstruct(rec);
    CHECK(rho.min_eigenvalue() >= -1e-10);
    CHECK((rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) <= 1e-12);
  }
}

TEST_CASE("reconstruction of the minus-y state from 16384 shots") {
  const auto target = DensityMatrix::pure(minus_y());
  std::vector<double> f;
  for (std::uint64_t s = 0; s < 100; ++s) f.push_back(fidelity(mle_reconstruct(shots_of(target, 16384, s)), target));
  CHECK(median(f) > 0.999);
}

TEST_CASE("fidelity properties") {
  const auto g = DensityMatrix::pure(StateVector::ground());
  const auto e = DensityMatrix::pure(StateVector::excited());
  CHECK(fidelity(g, e) == doctest::Approx(0.0).scale(1.0));
  CHECK(fidelity(g, g) == doctest::Approx(1.0));

  std::mt19937_64 rng(13);
  std::normal_distribution<double> n(0.0, 1.0);
  auto random_state = [&] { return StateVector::normalized(Complex(n(rng), n(rng)), Complex(n(rng), n(rng))); };
  for (int i = 0; i < 50; ++i) {
    const auto a = random_state(), b = random_state();
    const auto ra = DensityMatrix::pure(a), rb = DensityMatrix::pure(b);
    CHECK(fidelity(ra, ra) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fidelity(ra, rb) == doctest::Approx(std::abs(a.amplitudes().dot(b.amplitudes()))).epsilon(1e-7));
    CHECK(fidelity(ra, rb) == doctest::Approx(fidelity(rb, ra)).epsilon(1e-9));
  }
  std::uniform_real_distribution<double> u(-0.55, 0.55);
  for (int i = 0; i < 50; ++i) {
    const auto a = DensityMatrix::from_bloch(u(rng), u(rng), u(rng));
    const auto b = DensityMatrix::from_bloch(u(rng), u(rng), u(rng));
    const double f = fidelity(a, b);
    CHECK(f == doctest::Approx(qubit_fidelity(a.matrix(), b.matrix())).epsilon(1e-9));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
}

TEST_CASE("fidelity of the printed density matrices") {
  const double fy = fidelity(printed_minus_y(), DensityMatrix::pure(minus_y()));
  // pure-target form sqrt(<psi|rho|psi>)
  const Vector2 psi = minus_y().amplitudes();
  const double direct = std::sqrt((psi.adjoint() * printed_minus_y().matrix() * psi)(0, 0).real());
  CHECK(fy == doctest::Approx(direct).epsilon(1e-9));
  CHECK(fy == doctest::Approx(0.9998).epsilon(5e-4));
  const double f1 = fidelity(printed_excited(), DensityMatrix::pure(StateVector::excited()));
  CHECK(f1 == doctest::Approx(std::sqrt(0.994095)).epsilon(1e-9));
  CHECK(f1 == doctest::Approx(0.99704).epsilon(1e-5));
}

TEST_CASE("bootstrap is deterministic across thread counts") {
  const auto rec = shots_of(DensityMatrix::pure(minus_y()), 16384, 4);
  set_thread_count(1);
  const auto a = bootstrap_errors(rec, minus_y(), 120, 77);
  set_thread_count(4);
  const auto b = bootstrap_errors(rec, minus_y(), 120, 77);
  set_thread_count(1);
  CHECK(a.fidelity_stderr == b.fidelity_stderr);
  CHECK(a.fidelity_mean == b.fidelity_mean);
  CHECK(a.fidelity_to_target == b.fidelity_to_target);
  CHECK(a.rho.matrix() == b.rho.matrix());
  CHECK(a.bootstrap_b == 120);
  CHECK(a.failures == 0);
  CHECK(a.fidelity_stderr > 0.0);
}

TEST_CASE("bootstrap of zero-variance data has zero spread") {
  std::vector<ShotRecord> rec;
  for (Basis b : kTomographyBases) rec.push_back({b, 1000, 1000, 0});
  const auto r = bootstrap_errors(rec, StateVector::excited(), 100, 1);
  CHECK(r.fidelity_stderr == 0.0);
}

TEST_CASE("bootstrap needs at least 100 resamples") {
  const auto rec = shots_of(DensityMatrix::pure(minus_y()), 100, 1);
  CHECK_THROWS_AS(bootstrap_errors(rec, minus_y(), 99, 1), InvalidArgument);
}

TEST_CASE("bootstrap spread tracks fresh-draw spread for the printed state") {
  const auto rho = printed_minus_y();
  const auto target = DensityMatrix::pure(minus_y());
  std::vector<double> fresh;
  for (std::uint64_t s = 0; s < 200; ++s) fresh.push_back(fidelity(mle_reconstruct(shots_of(rho, 16384, 1000 + s)), target));
  const double mc = sd(fresh);
  const auto boot = bootstrap_errors(shots_of(rho, 16384, 5), minus_y(), 200, 6);
  CHECK(boot.fidelity_stderr > mc / 2);
  CHECK(boot.fidelity_stderr < mc * 2);
}

TEST_CASE("reconstructed Bloch components scatter at the binomial rate") {
  const auto mixed = DensityMatrix::from_bloch(0.0, 0.0, 0.0);
  const long n = 16384;
  std::array<std::vector<double>, 3> comp;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto b = mle_reconstruct(shots_of(mixed, n, s)).bloch();
    for (int k = 0; k < 3; ++k) comp[k].push_back(b[k]);
  }
  for (int k = 0; k < 3; ++k) CHECK(std::abs(sd(comp[k]) * std::sqrt(double(n)) - 1.0) < 0.15);
}

TEST_CASE("angle calibration sequence") {
  const std::array<double, 3> x{1, 0, 0};
  auto r = angle_calibration_sequence(rotation(kPi / 2, x), 5);
  CHECK(r.p1 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(r.error) < 1e-12);
  CHECK(r.amplification == 11);
  for (double d : {-0.01, -0.005, 0.002, 0.005, 0.01}) {
    r = angle_calibration_sequence(rotation(kPi / 2 + d, x), 5);
    CHECK(r.error == doctest::Approx(d).epsilon(0.10));
    // exact composition: 11 (pi/2 + d) about x
    const double theta = 11 * (kPi / 2 + d);
    CHECK(r.p1 == doctest::Approx(std::pow(std::sin(theta / 2), 2)).epsilon(1e-12));
  }
}

TEST_CASE("axis calibration sequence") {
  const std::array<double, 3> x{1, 0, 0};
  auto r = axis_calibration_sequence(rotation(kPi / 2, x), rotation(kPi / 2, {0, 1, 0}), 5);
  CHECK(std::abs(r.error) < 1e-12);
  for (double phi : {-0.008, 0.004, 0.01}) {
    const auto y = rotation(kPi / 2, {-std::sin(phi), std::cos(phi), 0});
    r = axis_calibration_sequence(rotation(kPi / 2, x), y, 5);
    CHECK(r.error == doctest::Approx(phi).epsilon(0.10));
  }
}

TEST_CASE("calibrated pre-rotation pulses") {
  const QubitParams q;
  const auto pr = prerotation_pulses(q);
  CHECK(pr.x90.amplitude_max == doctest::Approx(2 * kPi * 0.130));
  CHECK(pr.x90.t_rise == doctest::Approx(0.2));
  CHECK(pr.identity.amplitude_max == 0.0);
  CHECK(pr.identity.total_duration() == doctest::Approx(pr.x90.total_duration()));

  const std::vector<PulseSpec> twice{pr.x90, pr.x90};
  const Unitary2 u = pulse_train_unitary(q, twice);
  CHECK(std::norm(u(1, 0)) == doctest::Approx(1.0).epsilon(0.002));

  const Unitary2 id = rotating_frame_unitary(q, pr.identity);
  CHECK(std::abs(std::abs(id(0, 0)) - 1.0) < 1e-6);
  CHECK(std::abs(id(1, 0)) < 1e-6);

  CHECK(std::abs(angle_calibration_sequence(q, pr.x90, 5).error) < 0.003);
  CHECK(std::abs(angle_calibration_sequence(q, pr.y90, 5).error) < 0.003);
  CHECK(std::abs(axis_calibration_sequence(q, pr.x90, pr.y90, 5).error) < 0.002);
}
