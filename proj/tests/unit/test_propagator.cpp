#include "floqsim/errors.hpp"
#include "floqsim/floquet.hpp"
#include "floqsim/propagator.hpp"
#include "floqsim/spectral.hpp"
#include "floqsim/units.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace floqsim;

namespace {
const double kPi = std::numbers::pi;
const QubitParams kQubit{};
const double kDelta = kQubit.delta;

PulseSpec resonant(double ghz, double tr, double tp, double tf) {
  PulseSpec p;
  p.amplitude_max = units::ghz_to_rad_per_ns(ghz);
  p.carrier = kDelta;
  p.t_rise = tr;
  p.t_plateau = tp;
  p.t_fall = tf;
  return p;
}

double state_distance(const StateVector& a, const StateVector& b) { return (a.amplitudes() - b.amplitudes()).norm(); }

std::vector<double> grid(double end, double dt) {
  std::vector<double> g;
  for (int k = 0; k * dt <= end + 1e-12; ++k) g.push_back(k * dt);
  return g;
}
}  // namespace

TEST_CASE("no drive leaves populations unchanged") {
  const auto init = StateVector::normalized(0.6, Complex(0.0, 0.8));
  const auto tr = propagate(kQubit, resonant(0.0, 0, 7.0, 0), init, 0.05);
  for (size_t k = 0; k < tr.times.size(); ++k) {
    CHECK(tr.p1[k] == doctest::Approx(0.64).epsilon(1e-12));
    CHECK(tr.bloch[k].sz == doctest::Approx(0.36 - 0.64).epsilon(1e-12));
  }
}

TEST_CASE("trajectory sampling and normalization") {
  const auto tr = propagate(kQubit, resonant(1.0, 0.3, 2.0, 0.4), StateVector::ground(), 0.01);
  REQUIRE(tr.times.size() == tr.states.size());
  REQUIRE(tr.times.size() == tr.p1.size());
  REQUIRE(tr.times.size() == tr.bloch.size());
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(2.7));
  double worst = 0.0;
  for (size_t k = 0; k < tr.times.size(); ++k) {
    if (k) CHECK(tr.times[k] > tr.times[k - 1]);
    worst = std::max(worst, std::abs(tr.states[k].amplitudes().squaredNorm() - 1.0));
    CHECK(tr.bloch[k].norm() <= 1 + 1e-9);
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("weak resonant drive follows the rotating-wave sinusoid") {
  const double a = units::ghz_to_rad_per_ns(0.10);
  const int per = 40;
  const double dt = 2 * kPi / kDelta / per;
  const auto durations = grid(40.0, dt);
  const auto sw = sweep_pulse_duration(kQubit, resonant(0.10, 0, 0, 0), durations);
  auto rwa = [&](double t) { return std::pow(std::sin(a * t / 2), 2); };
  double raw = 0.0, averaged = 0.0;
  for (size_t k = 0; k < durations.size(); ++k) raw = std::max(raw, std::abs(sw.p1[k] - rwa(durations[k])));
  for (size_t k = 0; k + per < durations.size(); ++k) {
    double m = 0.0;
    for (int j = 0; j < per; ++j) m += sw.p1[k + j] - rwa(durations[k + j]);
    averaged = std::max(averaged, std::abs(m) / per);
  }
  CHECK(averaged < 0.01);
  // the counter-rotating term adds a ripple of relative size A / (4 delta) at twice the carrier
  CHECK(raw < 0.01 + a / (4 * kDelta));
}

TEST_CASE("weak resonant drive reaches its first maximum at the pi time") {
  const auto durations = grid(8.0, 0.005);
  const auto sw = sweep_pulse_duration(kQubit, resonant(0.10, 0, 0, 0), durations);
  size_t best = 0;
  for (size_t k = 0; k < durations.size(); ++k) {
    if (sw.p1[k] > sw.p1[best]) best = k;
  }
  // pi / A_m = 5 ns; the counter-rotating term shifts this slightly
  CHECK(durations[best] == doctest::Approx(5.0).epsilon(0.01));
  CHECK(sw.p1[best] > 0.99);
}

TEST_CASE("zero duration sweep point leaves the ground state") {
  const std::vector<double> d{0.0};
  const auto sw = sweep_pulse_duration(kQubit, resonant(1.0, 0, 0, 0), d);
  REQUIRE(sw.p1.size() == 1);
  CHECK(sw.p1[0] == 0.0);
}

TEST_CASE("sweep agrees with independent propagations") {
  const PulseSpec tmpl = resonant(1.33, 0.5, 0, 0.5);
  const std::vector<double> d{0.0, 0.37, 1.2, 3.05, 6.0};
  const auto sw = sweep_pulse_duration(kQubit, tmpl, d);
  for (size_t k = 0; k < d.size(); ++k) {
    PulseSpec p = tmpl;
    p.t_plateau = d[k];
    const auto tr = propagate(kQubit, p, StateVector::ground(), 0.1);
    CHECK(state_distance(tr.states.back(), sw.final_states[k]) < 1e-8);
    CHECK(sw.p1[k] == doctest::Approx(tr.p1.back()).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("sweep shot emulation is deterministic and bounded") {
  const std::vector<double> d{0.5, 1.0, 1.5};
  SweepOptions o;
  o.shots = 1000;
  o.seed = 42;
  const auto a = sweep_pulse_duration(kQubit, resonant(0.5, 0, 0, 0), d, o);
  const auto b = sweep_pulse_duration(kQubit, resonant(0.5, 0, 0, 0), d, o);
  REQUIRE(a.excited_counts.size() == 3);
  CHECK(a.excited_counts == b.excited_counts);
  for (size_t k = 0; k < 3; ++k) {
    CHECK(a.excited_counts[k] >= 0);
    CHECK(a.excited_counts[k] <= 1000);
    const double sigma = std::sqrt(1000 * a.p1[k] * (1 - a.p1[k])) + 1;
    CHECK(std::abs(a.excited_counts[k] - 1000 * a.p1[k]) < 5 * sigma);
  }
}

TEST_CASE("propagators compose") {
  const PulseSpec p = resonant(2.0, 0.7, 3.3, 0.9);
  for (double t1 : {0.3, 0.7, 2.0, 4.4}) {
    const Unitary2 u01 = evolution_operator(kQubit, p, 0.0, t1);
    const Unitary2 u12 = evolution_operator(kQubit, p, t1, p.total_duration());
    const Unitary2 u02 = evolution_operator(kQubit, p, 0.0, p.total_duration());
    const Vector2 psi(1.0, 0.0);
    CHECK(((u12 * u01) * psi - u02 * psi).norm() < 1e-9);
  }
}

TEST_CASE("floquet frame of the ground state without drive") {
  const auto s = floquet_spectrum(kDelta, 0.0, kDelta);
  const auto c = floquet_frame_decompose(StateVector::ground(), s, 0.0);
  CHECK(std::abs(c.c0) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(std::abs(c.c1) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("a quasienergy state projects onto itself") {
  const auto s = floquet_spectrum(kDelta, units::ghz_to_rad_per_ns(0.8), kDelta);
  const double t = 0.123;
  const StateVector u0(s.periodic_state(0, kDelta * t));
  const auto c = floquet_frame_decompose(u0, s, t);
  CHECK(std::abs(c.c0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(c.c1) < 1e-10);
  CHECK(std::norm(c.c0) + std::norm(c.c1) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("degenerate pair at nonzero drive has no basis") {
  FloquetSpectrum s = floquet_spectrum(kDelta, 1.0, kDelta);
  s.eps1 = s.eps0;
  s.delta_eps = 0.0;
  CHECK_THROWS_AS(floquet_frame_decompose(StateVector::ground(), s, 0.0), IllDefinedBasis);
}

TEST_CASE("slow rise keeps the Floquet populations") {
  const PulseSpec p = resonant(1.33, 10.0, 5.0, 0.0);
  const auto plateau = floquet_spectrum(kDelta, p.amplitude_max, kDelta);
  const auto tr = propagate(kQubit, p, StateVector::ground(), 0.05);
  for (size_t k = 0; k < tr.times.size(); ++k) {
    if (tr.times[k] < p.plateau_start()) continue;
    const auto c = floquet_frame_decompose(tr.states[k], plateau, tr.times[k]);
    CHECK(std::abs(std::abs(c.c0) - 1 / std::sqrt(2.0)) < 0.02);
    CHECK(std::abs(std::abs(c.c1) - 1 / std::sqrt(2.0)) < 0.02);
  }
}

TEST_CASE("edge transition unitaries") {
  const auto slow = edge_transition_unitary(kQubit, resonant(1.33, 20.0, 0, 0), Edge::Rise);
  SUBCASE("slow rise is nearly diagonal") {
    CHECK(slow.off_diagonal() < 0.05);
    CHECK(unitarity_defect(slow.unitary) < 1e-8);
  }
  SUBCASE("abrupt rise mixes the Floquet states") {
    const auto e = edge_transition_unitary(kQubit, resonant(1.33, 0.0, 0, 0), Edge::Rise);
    CHECK(e.off_diagonal() > 0.05);
    CHECK(e.off_diagonal() > 10 * slow.off_diagonal());
    CHECK(unitarity_defect(e.unitary) < 1e-8);
  }
  SUBCASE("rise without drive is the identity") {
    const auto e = edge_transition_unitary(kQubit, resonant(0.0, 2.0, 0, 0), Edge::Rise);
    CHECK(e.off_diagonal() < 1e-9);
  }
  SUBCASE("abrupt fall mixes as well") {
    const auto e = edge_transition_unitary(kQubit, resonant(1.33, 0, 1.0, 0.0), Edge::Fall);
    CHECK(e.off_diagonal() > 0.1);
  }
}

TEST_CASE("slow edges rotate by the accumulated quasienergy difference") {
  for (double tp : {0.0, 0.6, 1.7, 3.1}) {
    const PulseSpec p = resonant(1.33, 10.0, tp, 10.0);
    const double phi = integrate_quasienergy(kQubit, p, 0.0, p.total_duration(), -1);
    const auto tr = propagate(kQubit, p, StateVector::ground(), 1.0);
    const double s = std::sin(phi / 2);
    CHECK(std::abs(tr.p1.back() - s * s) < 0.02);
  }
}

TEST_CASE("P1 versus plateau length is a sum of three oscillations") {
  const double a = units::ghz_to_rad_per_ns(1.33);
  const double de = floquet_spectrum(kDelta, a, kDelta).delta_eps;
  for (double edge : {0.0, 0.5, 2.0}) {
    const auto d = grid(10.0, 0.005);
    const auto sw = sweep_pulse_duration(kQubit, resonant(1.33, edge, 0, edge), d);
    const auto fit = fast_component_amplitudes(d, sw.p1, kDelta, de);
    CHECK(fit.rms_residual < 0.02);
  }
}

TEST_CASE("preparing the ground state needs no pulse") {
  const auto r = prepare_state(kQubit, StateVector::ground(), units::ghz_to_rad_per_ns(0.46), 0.0);
  CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.overlap_probability == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(r.below_floor);
}

TEST_CASE("fast preparation of the excited state") {
  const auto r = prepare_state(kQubit, StateVector::excited(), units::ghz_to_rad_per_ns(0.46), 0.02);
  CHECK(r.fidelity > 0.99);
  CHECK(r.fidelity == doctest::Approx(std::sqrt(r.overlap_probability)));
  CHECK(r.pulse.total_duration() == doctest::Approx(1.08).epsilon(0.1));
}

TEST_CASE("propagation rejects a non-positive sample step") {
  CHECK_THROWS_AS(propagate(kQubit, resonant(1.0, 0, 1, 0), StateVector::ground(), 0.0), InvalidArgument);
}
