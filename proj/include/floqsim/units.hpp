#pragma once

#include <numbers>

// Internal units: angular frequency in rad/ns, time in ns, hbar = 1.
// User-facing values are plain frequencies in GHz.
namespace floqsim::units {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double ghz_to_rad_per_ns(double f_ghz) { return kTwoPi * f_ghz; }
constexpr double rad_per_ns_to_ghz(double w) { return w / kTwoPi; }

/// Elementary charge in nA*ns (1 nA*ns = 1e-18 C).
inline constexpr double kElementaryChargeNaNs = 0.1602176634;

}  // namespace floqsim::units
