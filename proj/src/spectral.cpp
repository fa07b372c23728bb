#include "floqsim/spectral.hpp"

#include "floqsim/errors.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace floqsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Sidelobes of a stronger neighbour: first Hann sidelobe sits 2.5 bins out at -31 dB.
constexpr double kLeakageBins = 3.0;
constexpr double kLeakageRatio = 0.05;

std::vector<double> window_weights(Window w, size_t n) {
  std::vector<double> out(n, 1.0);
  if (w == Window::Hann && n > 1) {
    for (size_t k = 0; k < n; ++k) {
      out[k] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(n - 1)));
    }
  }
  return out;
}

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::string window_name(Window w) { return w == Window::Hann ? "hann" : "rectangular"; }

Window parse_window(const std::string& name) {
  if (name == "hann") return Window::Hann;
  if (name == "rectangular" || name == "rect") return Window::Rectangular;
  throw InvalidArgument("unknown window '" + name + "'");
}

double scalloping_loss(Window w) { return w == Window::Hann ? 0.8488263631567751 : 2.0 / std::numbers::pi; }

double Spectrum::energy() const {
  double e = 0.0;
  const size_t last = magnitudes.size() - 1;
  for (size_t k = 0; k <= last; ++k) {
    const bool edge = k == 0 || (k == last && transform_size % 2 == 0);
    const double x = magnitudes[k] * window_sum / (edge ? 1.0 : 2.0);
    e += (edge ? 1.0 : 2.0) * x * x;
  }
  return e / transform_size;
}

double windowed_energy(std::span<const double> values, Window window) {
  const auto w = window_weights(window, values.size());
  const double m = mean_of(values);
  double e = 0.0;
  for (size_t k = 0; k < values.size(); ++k) {
    const double x = w[k] * (values[k] - m);
    e += x * x;
  }
  return e;
}

Spectrum dft(std::span<const double> times, std::span<const double> values, Window window,
             int zero_pad_factor) {
  const size_t n = values.size();
  if (times.size() != n) throw InvalidArgument("dft: times and values differ in length");
  if (n < 16) throw InvalidArgument("dft: at least 16 samples required");
  if (zero_pad_factor < 1) throw InvalidArgument("dft: zero_pad_factor must be >= 1");
  const double dt = (times[n - 1] - times[0]) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) throw InvalidArgument("dft: times must increase");
  for (size_t k = 1; k < n; ++k) {
    if (std::abs(times[k] - times[k - 1] - dt) > 1e-6 * dt) {
      throw InvalidArgument("dft: non-uniform time grid");
    }
  }

  const auto w = window_weights(window, n);
  const double m = mean_of(values);
  size_t big_m = n * static_cast<size_t>(zero_pad_factor);
  if (big_m % 2 == 1) ++big_m;
  std::vector<double> padded(big_m, 0.0);
  double wsum = 0.0;
  for (size_t k = 0; k < n; ++k) {
    padded[k] = w[k] * (values[k] - m);
    wsum += w[k];
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> xf;
  fft.fwd(xf, padded);

  Spectrum s;
  s.window = window;
  s.window_sum = wsum;
  s.transform_size = static_cast<int>(big_m);
  s.resolution = 1.0 / (times[n - 1] - times[0]);
  s.bin_spacing = 1.0 / (static_cast<double>(big_m) * dt);
  const size_t half = big_m / 2;
  s.freqs.resize(half + 1);
  s.magnitudes.resize(half + 1);
  for (size_t k = 0; k <= half; ++k) {
    const double scale = (k == 0 || k == half) ? 1.0 : 2.0;
    s.freqs[k] = static_cast<double>(k) * s.bin_spacing;
    s.magnitudes[k] = scale * std::abs(xf[k]) / wsum;
  }
  return s;
}

std::string line_kind_name(LineKind k) {
  switch (k) {
    case LineKind::Harmonic: return "n_omega";
    case LineKind::Plus: return "n_omega_plus_delta_eps";
    case LineKind::Minus: return "n_omega_minus_delta_eps";
    default: return "unassigned";
  }
}

PeakSet find_peaks(const Spectrum& spectrum, double min_prominence) {
  if (!(min_prominence > 0.0 && min_prominence < 1.0)) {
    throw InvalidArgument("find_peaks: min_prominence must lie in (0, 1)");
  }
  const auto& mag = spectrum.magnitudes;
  PeakSet out;
  out.resolution = spectrum.resolution;
  if (mag.size() < 3) return out;
  const double top = *std::max_element(mag.begin(), mag.end());
  if (!(top > 0.0)) return out;
  const double floor = min_prominence * top;
  for (size_t k = 1; k + 1 < mag.size(); ++k) {
    if (mag[k] < floor || mag[k] < mag[k - 1] || mag[k] <= mag[k + 1]) continue;
    const double tiny = 1e-300;
    const double a = std::log(std::max(mag[k - 1], tiny));
    const double b = std::log(std::max(mag[k], tiny));
    const double c = std::log(std::max(mag[k + 1], tiny));
    const double den = a - 2.0 * b + c;
    double shift = 0.0;
    if (den < 0.0) shift = std::clamp(0.5 * (a - c) / den, -0.5, 0.5);
    const double lin = mag[k] + 0.5 * shift * (mag[k + 1] - mag[k - 1]) +
                       0.5 * shift * shift * (mag[k - 1] - 2.0 * mag[k] + mag[k + 1]);
    Peak p;
    p.frequency = (static_cast<double>(k) + shift) * spectrum.bin_spacing;
    p.amplitude = std::max(mag[k], lin);
    out.peaks.push_back(p);
  }
  std::sort(out.peaks.begin(), out.peaks.end(),
            [](const Peak& x, const Peak& y) { return x.amplitude > y.amplitude; });
  std::vector<Peak> kept;
  for (const auto& p : out.peaks) {
    const bool leak = std::any_of(kept.begin(), kept.end(), [&](const Peak& q) {
      return std::abs(q.frequency - p.frequency) < kLeakageBins * spectrum.resolution &&
             p.amplitude < kLeakageRatio * q.amplitude;
    });
    if (!leak) kept.push_back(p);
  }
  out.peaks = std::move(kept);
  return out;
}

PeakSet classify_peaks(const PeakSet& peaks, double omega, double delta_eps, int n_max) {
  if (n_max < 0) throw InvalidArgument("classify_peaks: n_max must be >= 0");
  struct Line {
    double f;
    LineKind kind;
    int n;
  };
  const double w = omega / kTwoPi;
  const double d = std::abs(delta_eps) / kTwoPi;
  std::vector<Line> lines;
  for (int n = 0; n <= n_max; ++n) {
    lines.push_back({n * w, LineKind::Harmonic, n});
    lines.push_back({n * w + d, LineKind::Plus, n});
    if (n > 0) lines.push_back({std::abs(n * w - d), LineKind::Minus, n});
  }
  const double bin = peaks.resolution;
  PeakSet out = peaks;
  double odd = 0.0;
  double total = 0.0;
  for (auto& p : out.peaks) {
    const Line* best = nullptr;
    const Line* best_even = nullptr;
    for (const auto& l : lines) {
      const double dist = std::abs(p.frequency - l.f);
      if (dist > bin) continue;
      if (!best || dist < std::abs(p.frequency - best->f)) best = &l;
      if (l.n % 2 == 0 && (!best_even || dist < std::abs(p.frequency - best_even->f))) best_even = &l;
    }
    if (best && best->n % 2 == 1 && best_even && std::abs(best_even->f - best->f) < bin) best = best_even;
    if (!best) {
      p.kind = LineKind::Unassigned;
      continue;
    }
    p.kind = best->kind;
    p.n = best->n;
    p.predicted = best->f;
    total += p.amplitude;
    if (p.n % 2 == 1) odd += p.amplitude;
  }
  out.violation_score = total > 0.0 ? odd / total : 0.0;
  return out;
}

FastComponents fast_component_amplitudes(std::span<const double> times, std::span<const double> values,
                                         double omega, double delta_eps) {
  const size_t n = values.size();
  if (times.size() != n || n < 8) throw InvalidArgument("fast_component_amplitudes: need >= 8 matching samples");
  const double freqs[3] = {delta_eps, 2.0 * omega - delta_eps, 2.0 * omega + delta_eps};
  Eigen::MatrixXd a(static_cast<Eigen::Index>(n), 7);
  Eigen::VectorXd y(static_cast<Eigen::Index>(n));
  for (size_t k = 0; k < n; ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    a(r, 0) = 1.0;
    for (int j = 0; j < 3; ++j) {
      a(r, 1 + 2 * j) = std::cos(freqs[j] * times[k]);
      a(r, 2 + 2 * j) = std::sin(freqs[j] * times[k]);
    }
    y(r) = values[k];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-8 * sv(0))) {
    throw NumericFailure("fast_component_amplitudes: fit frequencies are not resolvable on this trace");
  }
  const Eigen::VectorXd c = svd.solve(y);
  FastComponents out;
  out.offset = c(0);
  out.slow = std::hypot(c(1), c(2));
  out.minus = std::hypot(c(3), c(4));
  out.plus = std::hypot(c(5), c(6));
  out.rms_residual = std::sqrt((a * c - y).squaredNorm() / static_cast<double>(n));
  return out;
}

}  // namespace floqsim
