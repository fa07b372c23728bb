#include "floqsim/su2.hpp"

#include <algorithm>
#include <cmath>

namespace floqsim {

namespace pauli {
Matrix2 identity() { return Matrix2::Identity(); }
Matrix2 x() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
Matrix2 y() {
  Matrix2 m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}
Matrix2 z() {
  Matrix2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

PauliCoefficients pauli_decompose(const Matrix2& h) {
  PauliCoefficients c;
  c.c0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  c.cz = 0.5 * (h(0, 0).real() - h(1, 1).real());
  // h01 = cx - i cy; average with conj(h10) to absorb rounding asymmetry
  const Complex off = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
  c.cx = off.real();
  c.cy = -off.imag();
  return c;
}

Matrix2 pauli_compose(const PauliCoefficients& c) {
  Matrix2 m;
  m << Complex(c.c0 + c.cz, 0.0), Complex(c.cx, -c.cy), Complex(c.cx, c.cy),
      Complex(c.c0 - c.cz, 0.0);
  return m;
}

Unitary2 exp_minus_i(const PauliCoefficients& k) {
  const double norm = std::sqrt(k.cx * k.cx + k.cy * k.cy + k.cz * k.cz);
  const double c = std::cos(norm);
  // sin(x)/x, with the series used near zero
  const double sinc = norm > 1e-8 ? std::sin(norm) / norm : 1.0 - norm * norm / 6.0;
  const Complex phase = std::polar(1.0, -k.c0);
  const Complex mi(0.0, -1.0);
  Unitary2 u;
  u(0, 0) = Complex(c, 0.0) + mi * sinc * k.cz;
  u(1, 1) = Complex(c, 0.0) - mi * sinc * k.cz;
  u(0, 1) = mi * sinc * Complex(k.cx, -k.cy);
  u(1, 0) = mi * sinc * Complex(k.cx, k.cy);
  return phase * u;
}

double unitarity_defect(const Matrix2& u) {
  const Matrix2 d = u.adjoint() * u - Matrix2::Identity();
  return d.cwiseAbs().maxCoeff();
}

RotationParams rotation_of(const Unitary2& u) {
  RotationParams r;
  const Complex det = u.determinant();
  r.global_phase = 0.5 * std::arg(det);
  const Matrix2 v = u * std::polar(1.0, -r.global_phase);
  // v = cos(a/2) I - i sin(a/2) n.sigma
  const double cos_half = 0.5 * (v(0, 0) + v(1, 1)).real();
  const double nx_s = -0.5 * (v(0, 1) + v(1, 0)).imag();
  const double ny_s = 0.5 * (v(1, 0) - v(0, 1)).real();
  const double nz_s = -0.5 * (v(0, 0) - v(1, 1)).imag();
  const double sin_half = std::sqrt(nx_s * nx_s + ny_s * ny_s + nz_s * nz_s);
  r.angle = 2.0 * std::atan2(sin_half, cos_half);
  if (sin_half > 1e-14) {
    r.axis = {nx_s / sin_half, ny_s / sin_half, nz_s / sin_half};
  }
  return r;
}

Unitary2 rotation(double angle, const std::array<double, 3>& axis) {
  const double n = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  const double h = 0.5 * angle / n;
  return exp_minus_i({0.0, h * axis[0], h * axis[1], h * axis[2]});
}

}  // namespace floqsim
