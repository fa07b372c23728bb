#pragma once

#include "floqsim/su2.hpp"

#include <cmath>

namespace floqsim {

/// Gauss-Legendre nodes of the fourth-order Magnus step, as fractions of the step.
inline constexpr double kMagnusNode1 = 0.5 - 0.28867513459481288225;  // 1/2 - sqrt(3)/6
inline constexpr double kMagnusNode2 = 0.5 + 0.28867513459481288225;

/// Hermitian generator K of one fourth-order Magnus step, U = exp(-i K):
/// K = h/2 (H1 + H2) - i sqrt(3) h^2 / 12 [H2, H1], with H1, H2 sampled at
/// the two Gauss nodes.
inline PauliCoefficients magnus4_generator(const PauliCoefficients& h1,
                                           const PauliCoefficients& h2, double h) {
  // [a.s, b.s] = 2i (a x b).s
  const double c = std::sqrt(3.0) * h * h / 6.0;
  return {0.5 * h * (h1.c0 + h2.c0),
          0.5 * h * (h1.cx + h2.cx) + c * (h2.cy * h1.cz - h2.cz * h1.cy),
          0.5 * h * (h1.cy + h2.cy) + c * (h2.cz * h1.cx - h2.cx * h1.cz),
          0.5 * h * (h1.cz + h2.cz) + c * (h2.cx * h1.cy - h2.cy * h1.cx)};
}

/// U(t0 + h, t0) for a Hamiltonian given as a callable t -> PauliCoefficients.
template <class HamiltonianFn>
Unitary2 magnus4_step(HamiltonianFn&& ham, double t0, double h) {
  return exp_minus_i(magnus4_generator(ham(t0 + kMagnusNode1 * h), ham(t0 + kMagnusNode2 * h), h));
}

/// U(t1, t0) using `steps` equal fourth-order Magnus steps.
template <class HamiltonianFn>
Unitary2 propagate_interval(HamiltonianFn&& ham, double t0, double t1, long steps) {
  Unitary2 u = Unitary2::Identity();
  if (steps <= 0 || t1 == t0) return u;
  const double h = (t1 - t0) / static_cast<double>(steps);
  for (long k = 0; k < steps; ++k) {
    u = magnus4_step(ham, t0 + static_cast<double>(k) * h, h) * u;
  }
  return u;
}

}  // namespace floqsim
