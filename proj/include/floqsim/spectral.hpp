#pragma once

#include <span>
#include <string>
#include <vector>

namespace floqsim {

enum class Window { Rectangular, Hann };

std::string window_name(Window w);
/// Parses "rectangular" or "hann"; throws InvalidArgument otherwise.
Window parse_window(const std::string& name);

/// Worst-case magnitude loss for a tone halfway between resolution bins
/// (no zero padding): 2/pi for rectangular, 0.8488 for Hann.
double scalloping_loss(Window w);

/// One-sided amplitude spectrum. A cosine of unit amplitude at a bin centre
/// has magnitude 1; off-centre tones lose at most scalloping_loss().
struct Spectrum {
  std::vector<double> freqs;       // GHz, 0 .. Nyquist
  std::vector<double> magnitudes;  // amplitude units of the input trace
  double resolution = 0.0;         // GHz, 1 / trace span
  double bin_spacing = 0.0;        // GHz, after zero padding
  Window window = Window::Hann;
  double window_sum = 0.0;  // sum of window weights, used by Parseval
  int transform_size = 0;   // padded length

  /// sum |X_k|^2 / M over the full two-sided transform, reconstructed
  /// from the one-sided magnitudes.
  double energy() const;
};

/// Mean-subtracted, windowed, zero-padded DFT of a trace sampled on a
/// uniform grid (times in ns). Requires at least 16 samples and a grid
/// uniform to 1e-6 relative; throws InvalidArgument otherwise.
Spectrum dft(std::span<const double> times, std::span<const double> values, Window window = Window::Hann,
             int zero_pad_factor = 4);

/// sum (w_k (x_k - mean))^2, the time-domain side of Parseval's identity.
double windowed_energy(std::span<const double> values, Window window);

enum class LineKind { Harmonic, Plus, Minus, Unassigned };

std::string line_kind_name(LineKind k);

struct Peak {
  double frequency = 0.0;  // GHz
  double amplitude = 0.0;
  LineKind kind = LineKind::Unassigned;
  int n = 0;
  double predicted = 0.0;  // GHz, when assigned
};

struct PeakSet {
  std::vector<Peak> peaks;
  double resolution = 0.0;  // GHz
  /// Amplitude on odd-n lines over total classified amplitude.
  double violation_score = 0.0;
};

/// Local maxima with magnitude >= min_prominence * max. The frequency is
/// refined by a parabola through the log magnitudes of three neighbouring
/// bins. Maxima within 3 resolution bins of a peak at least 20 times larger
/// are treated as window leakage and dropped. Sorted by decreasing amplitude.
/// Throws InvalidArgument unless 0 < min_prominence < 1.
PeakSet find_peaks(const Spectrum& spectrum, double min_prominence);

/// Assigns each peak to the nearest line n*omega, n*omega + delta_eps or
/// |n*omega - delta_eps| (0 <= n <= n_max, odd n included) within one
/// resolution bin. Where an even-n and an odd-n line are both within reach
/// and less than one bin apart the even line is taken. omega and delta_eps
/// are in rad/ns.
PeakSet classify_peaks(const PeakSet& peaks, double omega, double delta_eps, int n_max);

struct FastComponents {
  double offset = 0.0;
  double slow = 0.0;   // amplitude at delta_eps
  double minus = 0.0;  // amplitude at 2 omega - delta_eps
  double plus = 0.0;   // amplitude at 2 omega + delta_eps
  double rms_residual = 0.0;
};

/// Least-squares fit of offset + three sinusoids at delta_eps and
/// 2 omega -+ delta_eps (rad/ns) with free amplitudes and phases.
/// Throws NumericFailure if the design matrix is ill-conditioned.
FastComponents fast_component_amplitudes(std::span<const double> times, std::span<const double> values,
                                         double omega, double delta_eps);

}  // namespace floqsim
