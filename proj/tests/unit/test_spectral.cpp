#include "floqsim/errors.hpp"
#include "floqsim/floquet.hpp"
#include "floqsim/propagator.hpp"
#include "floqsim/spectral.hpp"
#include "floqsim/units.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace floqsim;

namespace {
const double kPi = std::numbers::pi;
const QubitParams kQubit{};
const double kDeltaGhz = 2.288;

struct Trace {
  std::vector<double> t, v;
};

Trace tones(double span, double dt, std::vector<std::pair<double, double>> f_amp, double offset = 0.0) {
  Trace tr;
  for (int k = 0; k * dt < span - 1e-12; ++k) {
    const double t = k * dt;
    double v = offset;
    for (auto [f, a] : f_amp) v += a * std::cos(2 * kPi * f * t);
    tr.t.push_back(t);
    tr.v.push_back(v);
  }
  return tr;
}

Trace rabi_trace(double ghz, double span, double dt) {
  Trace tr;
  for (int k = 0; k * dt <= span + 1e-12; ++k) tr.t.push_back(k * dt);
  PulseSpec p;
  p.amplitude_max = units::ghz_to_rad_per_ns(ghz);
  p.carrier = kQubit.delta;
  tr.v = sweep_pulse_duration(kQubit, p, tr.t).p1;
  return tr;
}

bool has_peak_near(const PeakSet& ps, double f, double tol) {
  return std::any_of(ps.peaks.begin(), ps.peaks.end(), [&](const Peak& p) { return std::abs(p.frequency - f) <= tol; });
}
}  // namespace

TEST_CASE("single tone gives one peak at its frequency") {
  const auto tr = tones(40.0, 0.01, {{0.5, 1.0}});
  const auto s = dft(tr.t, tr.v);
  CHECK(s.resolution == doctest::Approx(1.0 / 40.0));
  CHECK(s.freqs.front() == 0.0);
  for (size_t k = 1; k < s.freqs.size(); ++k) {
    CHECK(s.freqs[k] - s.freqs[k - 1] == doctest::Approx(s.bin_spacing));
  }
  const auto ps = find_peaks(s, 0.02);
  REQUIRE(ps.peaks.size() == 1);
  CHECK(std::abs(ps.peaks[0].frequency - 0.5) <= s.resolution);
  CHECK(ps.peaks[0].amplitude == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("bin-centred unit cosine has unit magnitude for each window") {
  for (Window w : {Window::Rectangular, Window::Hann}) {
    const auto tr = tones(40.0, 0.01, {{0.5, 1.0}});
    const auto s = dft(tr.t, tr.v, w, 1);
    const double top = *std::max_element(s.magnitudes.begin(), s.magnitudes.end());
    CHECK(top == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(s.transform_size == static_cast<int>(tr.t.size()));
  }
}

TEST_CASE("constant trace has an empty spectrum") {
  std::vector<double> t, v;
  for (int k = 0; k < 256; ++k) {
    t.push_back(0.01 * k);
    v.push_back(0.37);
  }
  const auto s = dft(t, v);
  CHECK(*std::max_element(s.magnitudes.begin(), s.magnitudes.end()) < 1e-14);
}

TEST_CASE("weak resonant Rabi trace peaks at the Rabi frequency") {
  const auto tr = rabi_trace(0.10, 50.0, 0.005);
  const auto s = dft(tr.t, tr.v);
  const auto ps = find_peaks(s, 0.02);
  REQUIRE_FALSE(ps.peaks.empty());
  CHECK(std::abs(ps.peaks[0].frequency - 0.10) <= s.resolution);

  const double de = floquet_spectrum(kQubit.delta, units::ghz_to_rad_per_ns(0.10), kQubit.delta).delta_eps;
  const auto cls = classify_peaks(ps, kQubit.delta, de, 8);
  CHECK(cls.peaks[0].kind != LineKind::Unassigned);
  CHECK(cls.peaks[0].n == 0);
}

TEST_CASE("two separated tones are both found within half a bin") {
  const double res = 1.0 / 40.0;
  const auto tr = tones(40.0, 0.01, {{1.0, 1.0}, {1.0 + 4 * res, 0.5}});
  const auto s = dft(tr.t, tr.v);
  const auto ps = find_peaks(s, 0.02);
  REQUIRE(ps.peaks.size() == 2);
  CHECK(has_peak_near(ps, 1.0, res / 2));
  CHECK(has_peak_near(ps, 1.0 + 4 * res, res / 2));
  CHECK(ps.peaks[0].amplitude > ps.peaks[1].amplitude);
}

TEST_CASE("off-bin tones are located to a tenth of a bin") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.3, 3.0);
  for (int i = 0; i < 40; ++i) {
    const double f = u(rng);
    const auto tr = tones(50.0, 0.005, {{f, 0.7}});
    const auto s = dft(tr.t, tr.v);
    const auto ps = find_peaks(s, 0.02);
    REQUIRE_FALSE(ps.peaks.empty());
    CHECK(std::abs(ps.peaks[0].frequency - f) < 0.1 * s.bin_spacing);
  }
}

TEST_CASE("strong resonant drive shows the fast lines") {
  const auto tr = rabi_trace(1.00, 50.0, 0.005);
  const auto s = dft(tr.t, tr.v);
  const auto ps = find_peaks(s, 0.005);
  const double de =
      units::rad_per_ns_to_ghz(floquet_spectrum(kQubit.delta, units::ghz_to_rad_per_ns(1.0), kQubit.delta).delta_eps);
  CHECK(has_peak_near(ps, de, s.resolution));
  CHECK(has_peak_near(ps, 2 * kDeltaGhz - de, s.resolution));
  CHECK(has_peak_near(ps, 2 * kDeltaGhz + de, s.resolution));
}

TEST_CASE("classification against synthetic lines") {
  const double w = units::ghz_to_rad_per_ns(2.0), de = units::ghz_to_rad_per_ns(0.3);
  PeakSet ps;
  ps.resolution = 0.02;
  ps.peaks = {{0.3, 1.0, LineKind::Unassigned, 0, 0}, {3.7, 0.2, LineKind::Unassigned, 0, 0},
              {4.3, 0.1, LineKind::Unassigned, 0, 0}, {2.3, 0.05, LineKind::Unassigned, 0, 0},
              {7.77, 0.05, LineKind::Unassigned, 0, 0}};
  const auto c = classify_peaks(ps, w, de, 4);
  CHECK(c.peaks[1].kind == LineKind::Minus);
  CHECK(c.peaks[1].n == 2);
  CHECK(c.peaks[2].kind == LineKind::Plus);
  CHECK(c.peaks[2].n == 2);
  CHECK(c.peaks[3].n == 1);
  CHECK(c.peaks[4].kind == LineKind::Unassigned);
  for (const auto& p : c.peaks) {
    if (p.kind != LineKind::Unassigned) CHECK(std::abs(p.frequency - p.predicted) <= ps.resolution);
  }
  // odd-n share of classified amplitude
  CHECK(c.violation_score == doctest::Approx(0.05 / 1.35));
}

TEST_CASE("fit recovers known component amplitudes") {
  const double w = units::ghz_to_rad_per_ns(2.288), de = units::ghz_to_rad_per_ns(0.35);
  std::vector<double> t, v;
  for (int k = 0; k <= 2000; ++k) {
    const double x = 0.005 * k;
    t.push_back(x);
    v.push_back(0.5 + 0.3 * std::cos(de * x + 0.4) + 0.05 * std::sin((2 * w - de) * x + 1.1) +
                0.04 * std::cos((2 * w + de) * x - 2.0));
  }
  const auto f = fast_component_amplitudes(t, v, w, de);
  CHECK(f.offset == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(std::abs(f.slow - 0.3) < 1e-3);
  CHECK(std::abs(f.minus - 0.05) < 1e-3);
  CHECK(std::abs(f.plus - 0.04) < 1e-3);
  CHECK(f.rms_residual < 1e-9);
}

TEST_CASE("fit with coinciding frequencies is ill-conditioned") {
  std::vector<double> t, v;
  for (int k = 0; k < 500; ++k) {
    t.push_back(0.01 * k);
    v.push_back(std::cos(3.0 * t.back()));
  }
  CHECK_THROWS_AS(fast_component_amplitudes(t, v, 2.0, 0.0), NumericFailure);
}

TEST_CASE("spectral energy matches the windowed trace") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> t, v;
  for (int k = 0; k < 1001; ++k) {
    t.push_back(0.005 * k);
    v.push_back(g(rng) + std::cos(0.7 * k));
  }
  for (Window w : {Window::Rectangular, Window::Hann}) {
    for (int pad : {1, 4}) {
      const auto s = dft(t, v, w, pad);
      const double e = windowed_energy(v, w);
      CHECK(std::abs(s.energy() - e) / e < 1e-9);
    }
  }
}

TEST_CASE("invalid spectral inputs") {
  std::vector<double> t, v;
  for (int k = 0; k < 10; ++k) {
    t.push_back(k);
    v.push_back(k);
  }
  CHECK_THROWS_AS(dft(t, v), InvalidArgument);
  for (int k = 10; k < 40; ++k) {
    t.push_back(k);
    v.push_back(k);
  }
  t[20] += 0.3;
  CHECK_THROWS_AS(dft(t, v), InvalidArgument);
  t[20] -= 0.3;
  const auto s = dft(t, v);
  CHECK_THROWS_AS(find_peaks(s, 0.0), InvalidArgument);
  CHECK_THROWS_AS(find_peaks(s, 1.0), InvalidArgument);
  CHECK_THROWS_AS(parse_window("kaiser"), InvalidArgument);
  CHECK(parse_window("hann") == Window::Hann);
  CHECK(window_name(Window::Rectangular) == "rectangular");
  CHECK(scalloping_loss(Window::Rectangular) == doctest::Approx(2 / kPi));
}
