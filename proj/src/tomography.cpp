#include "floqsim/tomography.hpp"

#include "floqsim/errors.hpp"
#include "floqsim/parallel.hpp"
#include "floqsim/propagator.hpp"
#include "floqsim/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace floqsim {

namespace {

constexpr double kPi = std::numbers::pi;

using Vec4 = Eigen::Vector4d;
using Bloch = Eigen::Vector3d;

Bloch axis_vector(Basis b) {
  const auto a = measured_axis(b);
  return {a[0], a[1], a[2]};
}

// Bloch vector of L L^dagger / Tr with L = [[t0, 0], [t2 + i t3, t1]] and its
// Jacobian with respect to t.
void bloch_of_params(const Vec4& t, Bloch& r, Eigen::Matrix<double, 3, 4>& jac) {
  const double s = t.squaredNorm();
  const Bloch a(2.0 * t(0) * t(2), 2.0 * t(0) * t(3), t(0) * t(0) - t(1) * t(1) - t(2) * t(2) - t(3) * t(3));
  r = a / s;
  Eigen::Matrix<double, 3, 4> da;
  da << 2 * t(2), 0, 2 * t(0), 0,
        2 * t(3), 0, 0, 2 * t(0),
        2 * t(0), -2 * t(1), -2 * t(2), -2 * t(3);
  jac = da / s - a * (2.0 * t.transpose()) / (s * s);
}

struct Objective {
  std::span<const BasisData> data;
  double total_shots;

  // Negative log-likelihood per shot plus (Tr - 1)^2; +inf outside the domain.
  double value(const Vec4& t, Vec4* grad) const {
    Bloch r;
    Eigen::Matrix<double, 3, 4> jac;
    bloch_of_params(t, r, jac);
    double f = 0.0;
    Bloch df_dr = Bloch::Zero();
    for (const auto& d : data) {
      const Bloch m = axis_vector(d.basis);
      const double p = 0.5 * (1.0 - m.dot(r));
      const double k = d.excited;
      const double nk = d.shots - d.excited;
      double dfdp = 0.0;
      if (k > 0.0) {
        if (!(p > 0.0)) return std::numeric_limits<double>::infinity();
        f -= k * std::log(p);
        dfdp -= k / p;
      }
      if (nk > 0.0) {
        if (!(p < 1.0)) return std::numeric_limits<double>::infinity();
        f -= nk * std::log1p(-p);
        dfdp += nk / (1.0 - p);
      }
      df_dr += (-0.5 * dfdp) * m;
    }
    f /= total_shots;
    df_dr /= total_shots;
    const double s = t.squaredNorm();
    f += (s - 1.0) * (s - 1.0);
    if (grad) *grad = jac.transpose() * df_dr + 4.0 * (s - 1.0) * t;
    return f;
  }
};

// Exact Cholesky factor of (I + r.sigma)/2.
Vec4 cholesky_params(const Bloch& r) {
  const double rho00 = 0.5 * (1.0 + r(2));
  const double rho11 = 0.5 * (1.0 - r(2));
  const Complex rho10(0.5 * r(0), 0.5 * r(1));
  if (!(rho00 > 0.0)) return {0.0, std::sqrt(std::max(rho11, 0.0)), 0.0, 0.0};
  const double t0 = std::sqrt(rho00);
  const Complex l10 = rho10 / t0;
  const double t1 = std::sqrt(std::max(rho11 - std::norm(l10), 0.0));
  return {t0, t1, l10.real(), l10.imag()};
}

// The likelihood is convex in the Bloch vector, so the optimum over the ball
// is either the per-basis frequency solution or lies on the sphere.
struct BlochObjective {
  std::span<const BasisData> data;
  double total_shots;

  double value(const Bloch& r, Bloch* grad, Eigen::Matrix3d* hess) const {
    double f = 0.0;
    if (grad) grad->setZero();
    if (hess) hess->setZero();
    for (const auto& d : data) {
      const Bloch m = axis_vector(d.basis);
      const double p = 0.5 * (1.0 - m.dot(r));
      const double k = d.excited;
      const double nk = d.shots - d.excited;
      double d1 = 0.0;
      double d2 = 0.0;
      if (k > 0.0) {
        if (!(p > 0.0)) return std::numeric_limits<double>::infinity();
        f -= k * std::log(p);
        d1 -= k / p;
        d2 += k / (p * p);
      }
      if (nk > 0.0) {
        if (!(p < 1.0)) return std::numeric_limits<double>::infinity();
        f -= nk * std::log1p(-p);
        d1 += nk / (1.0 - p);
        d2 += nk / ((1.0 - p) * (1.0 - p));
      }
      if (grad) *grad += (-0.5 * d1 / total_shots) * m;
      if (hess) *hess += (0.25 * d2 / total_shots) * m * m.transpose();
    }
    return f / total_shots;
  }
};

Bloch bloch_space_optimum(std::span<const BasisData> data, double total) {
  // Pooled frequencies per basis; the three measured axes are orthonormal.
  double k[3] = {0, 0, 0};
  double n[3] = {0, 0, 0};
  for (const auto& d : data) {
    k[static_cast<int>(d.basis)] += d.excited;
    n[static_cast<int>(d.basis)] += d.shots;
  }
  Bloch r = Bloch::Zero();
  for (Basis b : kTomographyBases) {
    const int i = static_cast<int>(b);
    r += (1.0 - 2.0 * k[i] / n[i]) * axis_vector(b);
  }
  if (r.norm() <= 1.0) return r;

  const BlochObjective obj{data, total};
  r.normalize();
  Bloch g;
  Eigen::Matrix3d h;
  double f = obj.value(r, &g, &h);
  for (int it = 0; it < 100; ++it) {
    // Riemannian Newton step in the tangent plane at r.
    const Eigen::Matrix3d proj = Eigen::Matrix3d::Identity() - r * r.transpose();
    const Bloch gt = proj * g;
    if (gt.norm() < 1e-15) break;
    Eigen::Matrix<double, 3, 2> basis;
    basis.col(0) = gt.normalized();
    basis.col(1) = r.cross(basis.col(0));
    const Eigen::Matrix2d ht = basis.transpose() * (h - r.dot(g) * Eigen::Matrix3d::Identity()) * basis;
    const Eigen::Vector2d gt2 = basis.transpose() * g;
    Eigen::Vector2d v2 = -gt2;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(ht);
    if (es.eigenvalues()(0) > 0.0) v2 = -ht.ldlt().solve(gt2);
    Bloch v = basis * v2;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Bloch cand = (r + v).normalized();
      Bloch gc;
      Eigen::Matrix3d hc;
      const double fc = obj.value(cand, &gc, &hc);
      const double flat = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(f);
      const bool better = fc < f || (fc <= f + flat && ((Eigen::Matrix3d::Identity() - cand * cand.transpose()) * gc).norm() < gt.norm());
      if (std::isfinite(fc) && better) {
        moved = (cand - r).norm() > 0.0;
        r = cand;
        f = fc;
        g = gc;
        h = hc;
        break;
      }
      v *= 0.5;
    }
    if (!moved) break;
  }
  return r;
}

DensityMatrix density_from_params(const Vec4& t) {
  Matrix2 l = Matrix2::Zero();
  l(0, 0) = t(0);
  l(1, 0) = Complex(t(2), t(3));
  l(1, 1) = t(1);
  Matrix2 rho = l * l.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho(0, 0) = rho(0, 0).real();
  rho(1, 1) = 1.0 - rho(0, 0).real();
  return DensityMatrix(rho);
}

Matrix2 psd_sqrt(const Matrix2& m) {
  Eigen::SelfAdjointEigenSolver<Matrix2> es(m);
  const Eigen::Vector2d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// Carrier phase that puts the realized rotation axis at azimuth `target`.
double solve_phase(const QubitParams& params, PulseSpec p, double target) {
  auto azimuth = [&](double phase) {
    p.carrier_phase = phase;
    const auto rot = rotation_of(rotating_frame_unitary(params, p));
    return std::atan2(rot.axis[1], rot.axis[0]);
  };
  auto wrap = [](double x) { return std::remainder(x, 2.0 * kPi); };
  // The axis azimuth moves linearly with the phase; the slope is +-1.
  const double a0 = azimuth(0.0);
  const double a1 = azimuth(0.1);
  const double slope = wrap(a1 - a0) / 0.1;
  double phase = wrap(target - a0) / slope;
  for (int it = 0; it < 8; ++it) {
    const double err = wrap(target - azimuth(phase));
    if (std::abs(err) < 1e-13) break;
    phase += err / slope;
  }
  return std::fmod(phase + 2.0 * kPi, 2.0 * kPi);
}

}  // namespace

DensityMatrix::DensityMatrix(const Matrix2& rho, double tolerance) : rho_(rho) {
  if (!rho.allFinite()) throw InvalidArgument("DensityMatrix: non-finite entries");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const Complex tr = rho.trace();
  std::ostringstream msg;
  if (herm > tolerance) {
    msg << "DensityMatrix: not Hermitian (defect " << herm << ")";
    throw InvalidArgument(msg.str());
  }
  if (std::abs(tr - 1.0) > tolerance) {
    msg << "DensityMatrix: trace " << tr.real() << " differs from 1";
    throw InvalidArgument(msg.str());
  }
  const double floor = -std::max(kEigenvalueFloor, tolerance);
  if (min_eigenvalue() < floor) {
    msg << "DensityMatrix: negative eigenvalue " << min_eigenvalue();
    throw InvalidArgument(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
  const Vector2& v = state.amplitudes();
  Matrix2 rho = v * v.adjoint();
  rho /= rho.trace().real();
  rho(0, 1) = std::conj(rho(1, 0));
  return DensityMatrix(rho);
}

DensityMatrix DensityMatrix::from_bloch(double x, double y, double z) {
  if (std::sqrt(x * x + y * y + z * z) > 1.0 + 1e-12) {
    throw InvalidArgument("DensityMatrix: Bloch vector outside the unit ball");
  }
  return DensityMatrix(0.5 * pauli_compose({1.0, x, y, z}));
}

std::array<double, 3> DensityMatrix::bloch() const {
  return {2.0 * rho_(1, 0).real(), 2.0 * rho_(1, 0).imag(), (rho_(0, 0) - rho_(1, 1)).real()};
}

double DensityMatrix::min_eigenvalue() const {
  const Matrix2 h = 0.5 * (rho_ + rho_.adjoint());
  return Eigen::SelfAdjointEigenSolver<Matrix2>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

std::string basis_name(Basis b) {
  switch (b) {
    case Basis::Z: return "I";
    case Basis::X90: return "Rx90";
    default: return "Ry90";
  }
}

Basis parse_basis(const std::string& name) {
  if (name == "I" || name == "Z") return Basis::Z;
  if (name == "Rx90" || name == "X90") return Basis::X90;
  if (name == "Ry90" || name == "Y90") return Basis::Y90;
  throw InvalidArgument("unknown tomography basis '" + name + "'");
}

Unitary2 ideal_prerotation(Basis b) {
  switch (b) {
    case Basis::Z: return Unitary2::Identity();
    case Basis::X90: return rotation(kPi / 2.0, {1.0, 0.0, 0.0});
    default: return rotation(kPi / 2.0, {0.0, 1.0, 0.0});
  }
}

std::array<double, 3> measured_axis(Basis b) {
  switch (b) {
    case Basis::Z: return {0.0, 0.0, 1.0};
    case Basis::X90: return {0.0, 1.0, 0.0};
    default: return {-1.0, 0.0, 0.0};
  }
}

double excited_probability(const DensityMatrix& rho, Basis b) {
  const Unitary2 u = ideal_prerotation(b);
  const Matrix2 r = u * rho.matrix() * u.adjoint();
  return std::clamp(r(1, 1).real(), 0.0, 1.0);
}

ShotRecord simulate_shots(const DensityMatrix& rho, Basis basis, long shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("simulate_shots: shots must be >= 1");
  Rng rng = make_rng(seed, static_cast<std::uint64_t>(basis));
  ShotRecord r;
  r.basis = basis;
  r.shots = shots;
  r.seed = seed;
  r.excited_counts = sample_binomial(rng, shots, excited_probability(rho, basis));
  return r;
}

ShotRecord simulate_shots(const StateVector& state, Basis basis, long shots, std::uint64_t seed) {
  return simulate_shots(DensityMatrix::pure(state), basis, shots, seed);
}

std::vector<BasisData> to_basis_data(std::span<const ShotRecord> records) {
  std::vector<BasisData> out;
  for (const auto& r : records) {
    if (r.shots < 1 || r.excited_counts < 0 || r.excited_counts > r.shots) {
      throw InvalidArgument("shot record: counts must satisfy 0 <= excited <= shots, shots >= 1");
    }
    out.push_back({r.basis, static_cast<double>(r.shots), static_cast<double>(r.excited_counts)});
  }
  return out;
}

std::vector<BasisData> exact_basis_data(const DensityMatrix& rho, double shots) {
  std::vector<BasisData> out;
  for (Basis b : kTomographyBases) out.push_back({b, shots, shots * excited_probability(rho, b)});
  return out;
}

DensityMatrix mle_reconstruct(std::span<const BasisData> data, const MleOptions& options,
                              MleDiagnostics* diagnostics) {
  bool seen[3] = {false, false, false};
  double total = 0.0;
  for (const auto& d : data) {
    if (!(d.shots > 0.0) || !(d.excited >= 0.0) || !(d.excited <= d.shots)) {
      throw InvalidArgument("mle_reconstruct: counts must satisfy 0 <= excited <= shots, shots > 0");
    }
    seen[static_cast<int>(d.basis)] = true;
    total += d.shots;
  }
  if (!(seen[0] && seen[1] && seen[2])) throw InvalidArgument("mle_reconstruct: one record per basis required");

  const Objective obj{data, total};
  // Start from the Bloch-space optimum; the Newton loop below then certifies
  // the gradient in the factor parameters.
  Vec4 t = cholesky_params(bloch_space_optimum(data, total));
  Vec4 g;
  double f = obj.value(t, &g);
  double lambda = 1e-6;
  int it = 0;
  for (; it < options.max_iterations && g.norm() >= options.gradient_tolerance; ++it) {
    Eigen::Matrix4d hess;
    for (int j = 0; j < 4; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(t(j)));
      Vec4 tp = t, tm = t, gp, gm;
      tp(j) += h;
      tm(j) -= h;
      const double fp = obj.value(tp, &gp);
      const double fm = obj.value(tm, &gm);
      if (!std::isfinite(fp) || !std::isfinite(fm)) {
        hess.col(j) = Vec4::Unit(j);
      } else {
        hess.col(j) = (gp - gm) / (2.0 * h);
      }
    }
    hess = 0.5 * (hess + hess.transpose()).eval();
    bool stepped = false;
    for (int tries = 0; tries < 60 && !stepped; ++tries) {
      const Eigen::Matrix4d a = hess + lambda * Eigen::Matrix4d::Identity();
      const Eigen::LDLT<Eigen::Matrix4d> ldlt(a);
      Vec4 step = -ldlt.solve(g);
      if (ldlt.info() != Eigen::Success || !step.allFinite() || (a * step + g).norm() > 1e-6 * g.norm() + 1e-300 ||
          step.dot(g) >= 0.0) {
        lambda = std::max(lambda * 10.0, 1e-12);
        continue;
      }
      Vec4 gn;
      const double fn = obj.value(t + step, &gn);
      // f alone cannot resolve steps below sqrt(eps); near the optimum the
      // gradient decides.
      const double flat = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(f);
      if (std::isfinite(fn) && (fn < f || (fn <= f + flat && gn.norm() < g.norm()))) {
        t += step;
        f = fn;
        g = gn;
        lambda = std::max(lambda * 0.1, 1e-15);
        stepped = true;
      } else {
        lambda = std::max(lambda * 10.0, 1e-12);
      }
    }
    if (!stepped) break;
  }
  if (diagnostics) {
    diagnostics->iterations = it;
    diagnostics->gradient_norm = g.norm();
    diagnostics->negative_log_likelihood = f - std::pow(t.squaredNorm() - 1.0, 2);
  }
  if (!(g.norm() < options.gradient_tolerance)) {
    std::ostringstream msg;
    msg << "mle_reconstruct: gradient norm " << g.norm() << " after " << it << " iterations (objective " << f
        << ")";
    throw NumericFailure(msg.str());
  }
  return density_from_params(t);
}

DensityMatrix mle_reconstruct(std::span<const ShotRecord> records, const MleOptions& options) {
  const auto data = to_basis_data(records);
  return mle_reconstruct(std::span<const BasisData>(data), options);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const Matrix2 s = psd_sqrt(sigma.matrix());
  const Matrix2 m = s * rho.matrix() * s;
  // Tr sqrt(M) = sqrt(Tr M + 2 sqrt(det M)) for 2x2 PSD M; taking det M as
  // det(rho) det(sigma) avoids square roots of rounding noise for pure states.
  const double det = std::max(0.0, rho.matrix().determinant().real()) * std::max(0.0, sigma.matrix().determinant().real());
  const double f = std::sqrt(std::max(0.0, m.trace().real() + 2.0 * std::sqrt(det)));
  return std::clamp(f, 0.0, 1.0);
}

TomographyResult bootstrap_errors(std::span<const ShotRecord> records, const StateVector& target, int b,
                                  std::uint64_t seed) {
  if (b < 100) throw InvalidArgument("bootstrap_errors: b must be >= 100");
  const auto data = to_basis_data(records);
  const DensityMatrix ideal = DensityMatrix::pure(target);

  TomographyResult res{mle_reconstruct(std::span<const BasisData>(data))};
  res.fidelity_to_target = fidelity(res.rho, ideal);
  res.bootstrap_b = b;

  std::vector<double> means, sds;
  for (const auto& d : data) {
    const double m = 1.0 - 2.0 * d.excited / d.shots;
    means.push_back(m);
    sds.push_back(std::sqrt(std::max(0.0, 1.0 - m * m)) / std::sqrt(d.shots));
  }
  std::vector<double> fids(static_cast<size_t>(b), std::numeric_limits<double>::quiet_NaN());
  parallel_for(static_cast<size_t>(b), [&](size_t i) {
    Rng rng = make_rng(seed, i);
    std::vector<BasisData> sample = data;
    for (size_t k = 0; k < sample.size(); ++k) {
      std::normal_distribution<double> dist(means[k], sds[k]);
      const double z = std::clamp(sds[k] > 0.0 ? dist(rng) : means[k], -1.0, 1.0);
      sample[k].excited = 0.5 * sample[k].shots * (1.0 - z);
    }
    try {
      fids[i] = fidelity(mle_reconstruct(std::span<const BasisData>(sample)), ideal);
    } catch (const NumericFailure&) {
    }
  });
  double sum = 0.0;
  int ok = 0;
  for (double f : fids) {
    if (std::isnan(f)) {
      ++res.failures;
    } else {
      sum += f;
      ++ok;
    }
  }
  if (res.failures > b / 20) {
    std::ostringstream msg;
    msg << "bootstrap_errors: " << res.failures << " of " << b << " resamples failed to converge";
    throw NumericFailure(msg.str());
  }
  res.fidelity_mean = sum / ok;
  // centred on one sample so that identical resamples give exactly zero
  const double pivot = *std::find_if(fids.begin(), fids.end(), [](double f) { return !std::isnan(f); });
  double s1 = 0.0, s2 = 0.0;
  for (double f : fids) {
    if (std::isnan(f)) continue;
    s1 += f - pivot;
    s2 += (f - pivot) * (f - pivot);
  }
  const double var = std::max(0.0, s2 - s1 * s1 / ok);
  res.fidelity_stderr = ok > 1 ? std::sqrt(var / (ok - 1)) : 0.0;
  return res;
}

Unitary2 rotating_frame_unitary(const QubitParams& params, const PulseSpec& pulse) {
  const double t = pulse.total_duration();
  const Unitary2 u = evolution_operator(params, pulse, 0.0, t);
  const Unitary2 free = exp_minus_i({0.0, 0.0, 0.0, -0.5 * params.delta * t});
  return free.adjoint() * u;
}

Unitary2 pulse_train_unitary(const QubitParams& params, std::span<const PulseSpec> pulses) {
  Unitary2 u = Unitary2::Identity();
  double start = 0.0;
  for (const auto& p : pulses) {
    PulseSpec q = p;
    q.carrier_phase = p.carrier_phase + p.carrier * start;
    u = evolution_operator(params, q, 0.0, q.total_duration()) * u;
    start += p.total_duration();
  }
  return u;
}

PreRotations prerotation_pulses(const QubitParams& params, const PreRotationOptions& options) {
  params.check();
  PulseSpec p;
  p.amplitude_max = options.amplitude;
  p.carrier = options.carrier > 0.0 ? options.carrier : params.delta;
  p.t_rise = options.edges;
  p.t_fall = options.edges;
  if (!(p.amplitude_max > 0.0)) throw InvalidArgument("prerotation_pulses: amplitude must be positive");

  auto angle = [&](double tp) {
    PulseSpec q = p;
    q.t_plateau = tp;
    return rotation_of(rotating_frame_unitary(params, q)).angle;
  };
  // Rotating-wave estimate, then secant on the realized angle.
  double a = std::max(0.0, kPi / 2.0 / p.amplitude_max - options.edges);
  double b = a + 0.01;
  double fa = angle(a) - kPi / 2.0;
  double fb = angle(b) - kPi / 2.0;
  for (int it = 0; it < 50 && std::abs(fb) > 1e-13; ++it) {
    const double c = b - fb * (b - a) / (fb - fa);
    a = b;
    fa = fb;
    b = std::max(0.0, c);
    fb = angle(b) - kPi / 2.0;
  }
  if (std::abs(fb) > 1e-9) throw NumericFailure("prerotation_pulses: plateau calibration did not converge");
  p.t_plateau = b;

  PreRotations out;
  out.x90 = p;
  out.x90.carrier_phase = solve_phase(params, p, 0.0);
  out.y90 = p;
  out.y90.carrier_phase = solve_phase(params, p, kPi / 2.0);

  // The counter-rotating drive tilts the realized axes, so the rotating-frame
  // solution is refined by nulling the n = 5 sequences in the lab frame.
  auto secant = [](auto&& fn, double x0, double x1) {
    double f0 = fn(x0);
    double f1 = fn(x1);
    for (int it = 0; it < 30 && std::abs(f1) > 1e-12 && f1 != f0; ++it) {
      const double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
      x0 = x1;
      f0 = f1;
      x1 = x2;
      f1 = fn(x1);
    }
    return x1;
  };
  for (int round = 0; round < 3; ++round) {
    const double tp = secant(
        [&](double t) {
          PulseSpec q = out.x90;
          q.t_plateau = t;
          return angle_calibration_sequence(params, q, 5).error;
        },
        out.x90.t_plateau, out.x90.t_plateau + 1e-3);
    out.x90.t_plateau = tp;
    out.y90.t_plateau = tp;
    out.y90.carrier_phase = secant(
        [&](double ph) {
          PulseSpec q = out.y90;
          q.carrier_phase = ph;
          return axis_calibration_sequence(params, out.x90, q, 5).error;
        },
        out.y90.carrier_phase, out.y90.carrier_phase + 1e-3);
  }
  out.y90.carrier_phase = std::fmod(out.y90.carrier_phase + 2.0 * kPi, 2.0 * kPi);
  out.identity = out.x90;
  out.identity.amplitude_max = 0.0;
  out.identity.carrier_phase = 0.0;
  return out;
}

CalibrationReading angle_calibration_sequence(const Unitary2& pulse, int n) {
  if (n < 1) throw InvalidArgument("angle_calibration_sequence: n must be >= 1");
  Unitary2 u = Unitary2::Identity();
  for (int k = 0; k < 2 * n + 1; ++k) u = pulse * u;
  CalibrationReading r;
  r.p1 = std::norm(u(1, 0));
  r.amplification = 2 * n + 1;
  r.amplified = (n % 2 == 1 ? 1.0 : -1.0) * (1.0 - 2.0 * r.p1);
  r.error = r.amplified / r.amplification;
  return r;
}

CalibrationReading angle_calibration_sequence(const QubitParams& params, const PulseSpec& pulse, int n) {
  if (n < 1) throw InvalidArgument("angle_calibration_sequence: n must be >= 1");
  const std::vector<PulseSpec> train(static_cast<size_t>(2 * n + 1), pulse);
  const Unitary2 u = pulse_train_unitary(params, train);
  CalibrationReading r;
  r.p1 = std::norm(u(1, 0));
  r.amplification = 2 * n + 1;
  r.amplified = (n % 2 == 1 ? 1.0 : -1.0) * (1.0 - 2.0 * r.p1);
  r.error = r.amplified / r.amplification;
  return r;
}

CalibrationReading axis_calibration_sequence(const Unitary2& pulse_x, const Unitary2& pulse_y, int n) {
  if (n < 1) throw InvalidArgument("axis_calibration_sequence: n must be >= 1");
  const Unitary2 block = pulse_x * pulse_x * pulse_y * pulse_y;
  Unitary2 u = pulse_x;
  for (int k = 0; k < n; ++k) u = block * u;
  u = pulse_y * u;
  CalibrationReading r;
  r.p1 = std::norm(u(1, 0));
  r.amplification = 2 * n + 1;
  r.amplified = (n % 2 == 0 ? 1.0 : -1.0) * (1.0 - 2.0 * r.p1);
  r.error = r.amplified / r.amplification;
  return r;
}

CalibrationReading axis_calibration_sequence(const QubitParams& params, const PulseSpec& pulse_x,
                                             const PulseSpec& pulse_y, int n) {
  if (n < 1) throw InvalidArgument("axis_calibration_sequence: n must be >= 1");
  std::vector<PulseSpec> train{pulse_x};
  for (int k = 0; k < n; ++k) {
    train.insert(train.end(), {pulse_y, pulse_y, pulse_x, pulse_x});
  }
  train.push_back(pulse_y);
  const Unitary2 u = pulse_train_unitary(params, train);
  CalibrationReading r;
  r.p1 = std::norm(u(1, 0));
  r.amplification = 2 * n + 1;
  r.amplified = (n % 2 == 0 ? 1.0 : -1.0) * (1.0 - 2.0 * r.p1);
  r.error = r.amplified / r.amplification;
  return r;
}

}  // namespace floqsim
