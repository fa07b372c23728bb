#include "floqsim/analytic.hpp"
#include "floqsim/errors.hpp"
#include "floqsim/floquet.hpp"
#include "floqsim/units.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace floqsim;

namespace {
const double kPi = std::numbers::pi;
const double kDelta = units::ghz_to_rad_per_ns(2.288);

// Classical RK4 on the 2x2 propagator over one drive period, lab basis.
Eigen::Matrix2cd rk4_period(double d, double a, double w, int steps) {
  const Complex i(0, 1);
  auto rhs = [&](double t, const Eigen::Matrix2cd& u) {
    Eigen::Matrix2cd h;
    h << -d / 2, a * std::cos(w * t), a * std::cos(w * t), d / 2;
    return Eigen::Matrix2cd(-i * h * u);
  };
  const double T = 2 * kPi / w, h = T / steps;
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const Eigen::Matrix2cd k1 = rhs(t, u);
    const Eigen::Matrix2cd k2 = rhs(t + h / 2, u + h / 2 * k1);
    const Eigen::Matrix2cd k3 = rhs(t + h / 2, u + h / 2 * k2);
    const Eigen::Matrix2cd k4 = rhs(t + h, u + h * k3);
    u += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return u;
}

double oracle_delta_eps_mod(double d, double a, double w) {
  const Eigen::Matrix2cd u = rk4_period(d, a, w, 20000);
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(u);
  const double T = 2 * kPi / w;
  const double e0 = -std::arg(es.eigenvalues()(0)) / T;
  const double e1 = -std::arg(es.eigenvalues()(1)) / T;
  return mod_distance(e0, e1, w);
}
}  // namespace

TEST_CASE("Floquet matrix is Hermitian with the documented shape") {
  const auto m = build_floquet_matrix(kDelta, 2.0, kDelta, 10);
  CHECK(m.dimension() == 42);
  CHECK(m.entries().rows() == 42);
  CHECK(m.entries() == m.entries().transpose());
  // diagonal block n*omega - delta/2 sx
  const int r = m.row_of(3);
  CHECK(m.entries()(r, r) == doctest::Approx(3 * kDelta));
  CHECK(m.entries()(r, r + 1) == doctest::Approx(-kDelta / 2));
  // couplings reach only neighbouring photon blocks
  CHECK(m.entries().block(r, m.row_of(5), 2, 2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(m.entries().block(r, m.row_of(4), 2, 2).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
}

TEST_CASE("central block has eigenvalues plus minus delta over two") {
  const Eigen::Matrix2d b = floquet_block(kDelta, 0, kDelta);
  CHECK(b(0, 0) == 0.0);
  CHECK(b(0, 1) == doctest::Approx(-kDelta / 2));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(b);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-kDelta / 2));
  CHECK(es.eigenvalues()(1) == doctest::Approx(kDelta / 2));
}

TEST_CASE("undriven Floquet matrix has eigenvalues n omega plus minus delta over two") {
  const double w = 0.6 * kDelta;
  const int n = 6;
  const Eigen::VectorXd e = dense_eigenvalues(build_floquet_matrix(kDelta, 0.0, w, n));
  std::vector<double> ref;
  for (int k = -n; k <= n; ++k) {
    ref.push_back(k * w - kDelta / 2);
    ref.push_back(k * w + kDelta / 2);
  }
  std::sort(ref.begin(), ref.end());
  REQUIRE(static_cast<size_t>(e.size()) == ref.size());
  for (size_t k = 0; k < ref.size(); ++k) CHECK(e(static_cast<Eigen::Index>(k)) == doctest::Approx(ref[k]));
}

TEST_CASE("invalid matrix parameters") {
  CHECK_THROWS_AS(build_floquet_matrix(kDelta, 1.0, kDelta, 0), InvalidArgument);
  CHECK_THROWS_AS(build_floquet_matrix(kDelta, 1.0, 0.0, 10), InvalidArgument);
  CHECK_THROWS_AS(frequency_components(1.0, 1.0, -1), InvalidArgument);
}

TEST_CASE("zero-drive branch assignment") {
  auto s = floquet_spectrum(kDelta, 0.0, kDelta);
  CHECK(std::abs(s.delta_eps) < 1e-12);
  CHECK(s.eps0 == doctest::Approx(-kDelta / 2));

  const double w = 0.6 * kDelta;
  s = floquet_spectrum(kDelta, 0.0, w);
  CHECK(s.delta_eps == doctest::Approx(0.4 * kDelta).epsilon(1e-12));
  CHECK(s.eps0 == doctest::Approx(-w / 2 - 0.2 * kDelta));
  CHECK(s.eps1 == doctest::Approx(-w / 2 + 0.2 * kDelta));
}

TEST_CASE("stored periodic states are normalized") {
  const auto s = floquet_spectrum(kDelta, units::ghz_to_rad_per_ns(1.0), kDelta);
  CHECK(s.u0.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.u1.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s.delta_eps == doctest::Approx(s.eps1 - s.eps0));
}

TEST_CASE("resonant drive at 1 GHz agrees with an RK4 one-period oracle") {
  const double a = units::ghz_to_rad_per_ns(1.0);
  const auto s = floquet_spectrum(kDelta, a, kDelta);
  const double oracle = oracle_delta_eps_mod(kDelta, a, kDelta);
  CHECK(std::abs(mod_distance(s.eps0, s.eps1, kDelta) - oracle) < 1e-8);
  const auto m = monodromy_quasienergies(kDelta, a, kDelta);
  CHECK(std::abs(mod_distance(m.eps0, m.eps1, kDelta) - oracle) < 1e-8);
}

TEST_CASE("quasienergies agree with the monodromy oracle modulo omega") {
  for (double f : {1.0, 0.6, 1.4}) {
    const double w = f * kDelta;
    for (double x : {0.0, 0.2, 0.9, 1.7, 2.6, 3.5}) {
      const auto s = floquet_spectrum(kDelta, x * w, w);
      const auto m = monodromy_quasienergies(kDelta, x * w, w);
      const double a = reduce_mod(s.eps0, w), b = reduce_mod(s.eps1, w);
      const double direct = mod_distance(a, m.eps0, w) + mod_distance(b, m.eps1, w);
      const double swapped = mod_distance(a, m.eps1, w) + mod_distance(b, m.eps0, w);
      CHECK(std::min(direct, swapped) < 2e-8);
      CHECK(m.unitarity_defect < 1e-10);
    }
  }
}

TEST_CASE("monodromy without drive gives plus minus delta over two") {
  const double w = 1.4 * kDelta;
  const auto m = monodromy_quasienergies(kDelta, 0.0, w);
  const double a = reduce_mod(-kDelta / 2, w), b = reduce_mod(kDelta / 2, w);
  CHECK(std::min(mod_distance(m.eps0, a, w), mod_distance(m.eps0, b, w)) < 1e-10);
  CHECK(std::min(mod_distance(m.eps1, a, w), mod_distance(m.eps1, b, w)) < 1e-10);
}

TEST_CASE("monodromy with zero gap has degenerate quasienergies") {
  for (double a : {0.5, 3.0, 10.0}) {
    const auto m = monodromy_quasienergies(0.0, a, 2.0);
    CHECK(mod_distance(m.eps0, m.eps1, 2.0) < 1e-9);
  }
}

TEST_CASE("eigenvalues form copies shifted by omega") {
  const double w = kDelta;
  const int n = 30;
  const auto m = build_floquet_matrix(kDelta, 1.3 * w, w, n);
  const Eigen::VectorXd e = dense_eigenvalues(m);
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    if (std::abs(e(k)) > (n - 10) * w) continue;
    double best = 1e300;
    for (Eigen::Index j = 0; j < e.size(); ++j) best = std::min(best, std::abs(e(j) - e(k) - w));
    CHECK(best < 1e-6 * w);
  }
}

TEST_CASE("truncation at 30 and 50 photons agree") {
  for (double ghz : {0.0, 0.5, 1.33, 2.4, 3.6, 4.78}) {
    const double a = units::ghz_to_rad_per_ns(ghz);
    const double d30 = floquet_spectrum(kDelta, a, kDelta, 30).delta_eps;
    const double d50 = floquet_spectrum(kDelta, a, kDelta, 50).delta_eps;
    CHECK(std::abs(d50 - d30) < 1e-10);
  }
}

TEST_CASE("numeric and analytic agree in the weak and strong limits") {
  const double w = kDelta;
  for (double x : {0.05, 0.1, 0.2, 0.3}) {
    const double num = floquet_spectrum(kDelta, x * w, w).delta_eps;
    CHECK(std::abs(num - analytic_delta_epsilon(kDelta, x * w, w)) / w < 0.01);
  }
}

TEST_CASE("continuation agrees with the parity-sector selection") {
  const double w = 0.6 * kDelta;
  std::vector<double> amps;
  for (int k = 0; k <= 20; ++k) amps.push_back(0.1 * k * w);
  const auto tracked = track_branches(kDelta, w, amps, 30);
  REQUIRE(tracked.size() == amps.size());
  for (size_t k = 0; k < amps.size(); ++k) {
    const auto direct = floquet_spectrum(kDelta, amps[k], w, 30);
    CHECK(tracked[k].eps0 == doctest::Approx(direct.eps0).epsilon(1e-9));
    CHECK(tracked[k].eps1 == doctest::Approx(direct.eps1).epsilon(1e-9));
  }
}

TEST_CASE("predicted frequency set") {
  auto f = frequency_components(0.0, 1.0, 2);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == 2.0);

  // the n = 0 harmonic is the DC line
  f = frequency_components(0.1, 2.288, 2);
  REQUIRE(f.size() == 5);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(0.1));
  CHECK(f[2] == doctest::Approx(2 * 2.288 - 0.1));
  CHECK(f[3] == doctest::Approx(2 * 2.288));
  CHECK(f[4] == doctest::Approx(2 * 2.288 + 0.1));
  CHECK(std::is_sorted(f.begin(), f.end()));

  // off resonance only even multiples of the carrier appear
  f = frequency_components(0.5, 1.373, 4);
  for (double v : f) {
    bool on_line = false;
    for (int n : {0, 2, 4}) {
      for (double s : {-0.5, 0.0, 0.5}) on_line = on_line || std::abs(v - std::abs(n * 1.373 + s)) < 1e-12;
    }
    CHECK(on_line);
  }
}

TEST_CASE("modular helpers") {
  CHECK(reduce_mod(0.75, 1.0) == doctest::Approx(-0.25));
  CHECK(reduce_mod(0.5, 1.0) == doctest::Approx(0.5));
  CHECK(reduce_mod(-0.5, 1.0) == doctest::Approx(0.5));
  CHECK(mod_distance(0.45, -0.45, 1.0) == doctest::Approx(0.1));
}
