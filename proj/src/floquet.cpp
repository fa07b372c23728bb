#include "floqsim/floquet.hpp"

#include "floqsim/errors.hpp"
#include "floqsim/integrator.hpp"
#include "floqsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace floqsim {

namespace {

std::string describe(double delta, double amp, double omega, int n) {
  std::ostringstream s;
  s << "(delta=" << delta << ", A=" << amp << ", omega=" << omega << ", N=" << n << " rad/ns)";
  return s.str();
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

// One generalized-parity sector of H_F. The operator P = sum_n (-1)^n sx
// (rotated basis) commutes with H_F; its eigenstates (n, s) with
// sx|s> = s|s> and (-1)^n s = p form a chain coupled only between
// neighbouring n, so each sector is a symmetric tridiagonal matrix.
struct Sector {
  int truncation = 0;
  int parity = 1;
  Eigen::VectorXd diag;
  Eigen::VectorXd offdiag;

  int sign_of(int n) const { return (n % 2 == 0) ? parity : -parity; }
};

// <a|M|b> for rotated-basis sx eigenvectors |+-> = (1, +-1)/sqrt2.
double sx_element(const Eigen::Matrix2d& m, int a, int b) {
  return 0.5 * (m(0, 0) + b * m(0, 1) + a * m(1, 0) + a * b * m(1, 1));
}

Sector extract_sector(const FloquetMatrix& fm, int parity) {
  const int big_n = fm.truncation();
  const int len = 2 * big_n + 1;
  Sector s;
  s.truncation = big_n;
  s.parity = parity;
  s.diag.resize(len);
  s.offdiag.resize(len - 1);
  const auto& h = fm.entries();
  for (int n = -big_n; n <= big_n; ++n) {
    const int r = fm.row_of(n);
    const Eigen::Matrix2d block = h.block<2, 2>(r, r);
    const int sn = s.sign_of(n);
    s.diag(n + big_n) = sx_element(block, sn, sn);
    if (n < big_n) {
      const Eigen::Matrix2d coupling = h.block<2, 2>(r + 2, r);
      s.offdiag(n + big_n) = sx_element(coupling, s.sign_of(n + 1), sn);
    }
  }
  return s;
}

// Positions of chain entries in ascending order of their A = 0 values.
// Ties are ordered by chain index.
std::vector<int> zero_drive_order(const Sector& s, double scale) {
  const int len = static_cast<int>(s.diag.size());
  std::vector<int> idx(len);
  std::iota(idx.begin(), idx.end(), 0);
  const double tol = 1e-12 * scale;
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (std::abs(s.diag(a) - s.diag(b)) <= tol) return a < b;
    return s.diag(a) < s.diag(b);
  });
  return idx;
}

// Chain positions of the states that carry the two branches at A = 0:
// (n = 0, +) at -delta/2 and (n = -1, -) at -omega + delta/2.
struct BranchSeeds {
  int chain0;  // eps0
  int chain1;  // eps1
};

BranchSeeds branch_seeds(double delta, double omega, int truncation) {
  const int zero_plus = truncation;       // n = 0
  const int minus_one = truncation - 1;   // n = -1
  if (omega <= delta) return {zero_plus, minus_one};
  return {minus_one, zero_plus};
}

void fix_phase(Eigen::VectorXd& v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  if (v(k) < 0.0) v = -v;
}

FourierTable sector_vector_to_table(const Sector& s, const Eigen::VectorXd& v) {
  const int big_n = s.truncation;
  std::vector<Vector2> coeffs(static_cast<size_t>(2 * big_n + 1));
  for (int n = -big_n; n <= big_n; ++n) {
    const double c = v(n + big_n) * kInvSqrt2;
    coeffs[static_cast<size_t>(n + big_n)] = Vector2(c, s.sign_of(n) * c);
  }
  return FourierTable(big_n, std::move(coeffs));
}

double edge_weight(const Eigen::VectorXd& v, int truncation) {
  const int margin = 5;
  double w = 0.0;
  for (int n = -truncation; n <= truncation; ++n) {
    if (std::abs(n) > truncation - margin) w += v(n + truncation) * v(n + truncation);
  }
  return w;
}

}  // namespace

FloquetMatrix::FloquetMatrix(double delta, double amp, double omega, int truncation)
    : truncation_(truncation), delta_(delta), amplitude_(amp), omega_(omega) {
  const int dim = dimension();
  entries_ = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = -truncation; n <= truncation; ++n) {
    const int r = row_of(n);
    entries_.block<2, 2>(r, r) = floquet_block(delta, n, omega);
    if (n < truncation) {
      // -A/2 sz between neighbouring photon blocks
      entries_(r, r + 2) = entries_(r + 2, r) = -0.5 * amp;
      entries_(r + 1, r + 3) = entries_(r + 3, r + 1) = 0.5 * amp;
    }
  }
}

FloquetMatrix build_floquet_matrix(double delta, double amp, double omega, int truncation_n) {
  if (truncation_n < 1) throw InvalidArgument("build_floquet_matrix: truncation_n must be >= 1");
  if (!(omega > 0.0)) throw InvalidArgument("build_floquet_matrix: omega must be positive");
  if (!std::isfinite(delta) || !std::isfinite(amp)) {
    throw InvalidArgument("build_floquet_matrix: non-finite parameters");
  }
  return FloquetMatrix(delta, amp, omega, truncation_n);
}

Eigen::Matrix2d floquet_block(double delta, int n, double omega) {
  Eigen::Matrix2d b;
  b << n * omega, -0.5 * delta, -0.5 * delta, n * omega;
  return b;
}

Eigen::VectorXd dense_eigenvalues(const FloquetMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericFailure("dense_eigenvalues: eigensolver did not converge " +
                         describe(m.delta(), m.amplitude(), m.omega(), m.truncation()));
  }
  return solver.eigenvalues();
}

FourierTable::FourierTable(int truncation, std::vector<Vector2> coefficients)
    : truncation_(truncation), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != static_cast<size_t>(2 * truncation + 1)) {
    throw InvalidArgument("FourierTable: expected 2N+1 coefficients");
  }
}

Vector2 FourierTable::evaluate_rotated(double drive_phase) const {
  Vector2 sum = Vector2::Zero();
  for (int n = -truncation_; n <= truncation_; ++n) {
    sum += std::polar(1.0, n * drive_phase) * at(n);
  }
  return sum;
}

Vector2 FourierTable::evaluate_lab(double drive_phase) const {
  return rotated_to_lab(evaluate_rotated(drive_phase));
}

double FourierTable::norm() const {
  double s = 0.0;
  for (const auto& c : coefficients_) s += c.squaredNorm();
  return std::sqrt(s);
}

Vector2 rotated_to_lab(const Vector2& r) {
  // psi = exp(+i pi/4 sy) psi_rot
  return Vector2(kInvSqrt2 * (r(0) + r(1)), kInvSqrt2 * (r(1) - r(0)));
}

Vector2 lab_to_rotated(const Vector2& l) {
  return Vector2(kInvSqrt2 * (l(0) - l(1)), kInvSqrt2 * (l(0) + l(1)));
}

Vector2 FloquetSpectrum::periodic_state(int j, double drive_phase) const {
  return (j == 0 ? u0 : u1).evaluate_lab(drive_phase);
}

FloquetSpectrum quasienergies(const FloquetMatrix& m) {
  const int big_n = m.truncation();
  const double delta = m.delta();
  const double omega = m.omega();
  const double amp = m.amplitude();
  if (big_n < 1) throw InvalidArgument("quasienergies: truncation must be >= 1");

  const Sector sector = extract_sector(m, +1);
  const double scale = std::abs(delta) + omega * (big_n + 1) + std::abs(amp);
  const BranchSeeds seeds = branch_seeds(delta, omega, big_n);

  const std::vector<int> order = zero_drive_order(sector, scale);
  auto rank_of = [&](int chain) {
    return static_cast<int>(std::find(order.begin(), order.end(), chain) - order.begin());
  };
  int rank0 = rank_of(seeds.chain0);
  int rank1 = rank_of(seeds.chain1);
  if (rank0 > rank1) std::swap(rank0, rank1);  // only possible for a tied pair

  FloquetSpectrum out;
  out.delta = delta;
  out.amplitude = amp;
  out.omega = omega;

  const int len = 2 * big_n + 1;
  Eigen::VectorXd v0 = Eigen::VectorXd::Zero(len);
  Eigen::VectorXd v1 = Eigen::VectorXd::Zero(len);

  if (amp == 0.0) {
    // Diagonal sector: exact values, unit eigenvectors.
    out.eps0 = sector.diag(seeds.chain0);
    out.eps1 = sector.diag(seeds.chain1);
    if (std::abs(out.eps1 - out.eps0) <= 1e-12 * scale) {
      // A -> 0+ limit: diagonalize dH/dA = -1/2 (chain coupling) inside the
      // degenerate pair. The seeds are chain neighbours, so the coupling is
      // nonzero and the limit is well defined.
      v0(seeds.chain0) = kInvSqrt2;
      v0(seeds.chain1) = kInvSqrt2;
      v1(seeds.chain0) = kInvSqrt2;
      v1(seeds.chain1) = -kInvSqrt2;
      out.eps1 = out.eps0;
    } else {
      v0(seeds.chain0) = 1.0;
      v1(seeds.chain1) = 1.0;
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(sector.diag, sector.offdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
      throw NumericFailure("quasienergies: eigensolver did not converge " +
                           describe(delta, amp, omega, big_n));
    }
    out.eps0 = solver.eigenvalues()(rank0);
    out.eps1 = solver.eigenvalues()(rank1);
    v0 = solver.eigenvectors().col(rank0);
    v1 = solver.eigenvectors().col(rank1);

    // Residual against the tridiagonal sector operator.
    const double hnorm = sector.diag.cwiseAbs().maxCoeff() + 2.0 * std::abs(0.5 * amp);
    for (int k : {rank0, rank1}) {
      const Eigen::VectorXd v = solver.eigenvectors().col(k);
      Eigen::VectorXd hv = sector.diag.cwiseProduct(v);
      hv.head(len - 1) += sector.offdiag.cwiseProduct(v.tail(len - 1));
      hv.tail(len - 1) += sector.offdiag.cwiseProduct(v.head(len - 1));
      const double res = (hv - solver.eigenvalues()(k) * v).norm();
      if (res > 1e-9 * hnorm) {
        throw NumericFailure("quasienergies: eigenpair residual too large " +
                             describe(delta, amp, omega, big_n));
      }
    }
  }

  if (edge_weight(v0, big_n) > 1e-8 || edge_weight(v1, big_n) > 1e-8) {
    throw NumericFailure("quasienergies: branch states reach the truncation edge; increase N " +
                         describe(delta, amp, omega, big_n));
  }
  fix_phase(v0);
  fix_phase(v1);
  out.delta_eps = out.eps1 - out.eps0;
  out.u0 = sector_vector_to_table(sector, v0);
  out.u1 = sector_vector_to_table(sector, v1);
  return out;
}

FloquetSpectrum floquet_spectrum(double delta, double amp, double omega, int truncation_n) {
  return quasienergies(build_floquet_matrix(delta, amp, omega, truncation_n));
}

namespace {

Eigen::VectorXd table_to_dense(const FourierTable& t) {
  Eigen::VectorXd v(2 * static_cast<Eigen::Index>(t.coefficients().size()));
  for (size_t i = 0; i < t.coefficients().size(); ++i) {
    v(static_cast<Eigen::Index>(2 * i)) = t.coefficients()[i](0).real();
    v(static_cast<Eigen::Index>(2 * i + 1)) = t.coefficients()[i](1).real();
  }
  return v;
}

FourierTable dense_to_table(const Eigen::VectorXd& v, int truncation) {
  std::vector<Vector2> c(static_cast<size_t>(2 * truncation + 1));
  for (size_t i = 0; i < c.size(); ++i) {
    c[i] = Vector2(v(static_cast<Eigen::Index>(2 * i)), v(static_cast<Eigen::Index>(2 * i + 1)));
  }
  return FourierTable(truncation, std::move(c));
}

struct DenseStep {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

DenseStep dense_solve(double delta, double amp, double omega, int big_n) {
  const FloquetMatrix m = build_floquet_matrix(delta, amp, omega, big_n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.entries());
  if (solver.info() != Eigen::Success) {
    throw NumericFailure("track_branches: eigensolver did not converge " +
                         describe(delta, amp, omega, big_n));
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Column of `vectors` with the largest |overlap| against `ref`.
std::pair<Eigen::Index, double> best_match(const Eigen::MatrixXd& vectors, const Eigen::VectorXd& ref) {
  Eigen::Index k = 0;
  const double best = (vectors.transpose() * ref).cwiseAbs().maxCoeff(&k);
  return {k, best};
}

}  // namespace

std::vector<FloquetSpectrum> track_branches(double delta, double omega,
                                            std::span<const double> amplitudes,
                                            int truncation_n) {
  std::vector<FloquetSpectrum> out;
  if (amplitudes.empty()) return out;
  if (!(omega > 0.0)) throw InvalidArgument("track_branches: omega must be positive");
  if (amplitudes.front() < 0.0 || !std::is_sorted(amplitudes.begin(), amplitudes.end())) {
    throw InvalidArgument("track_branches: amplitudes must be non-negative and increasing");
  }

  const FloquetSpectrum start = floquet_spectrum(delta, 0.0, omega, truncation_n);
  Eigen::VectorXd ref0 = table_to_dense(start.u0);
  Eigen::VectorXd ref1 = table_to_dense(start.u1);
  double e0 = start.eps0;
  double e1 = start.eps1;
  double a = 0.0;
  const double max_step = std::min(0.02 * omega, units::ghz_to_rad_per_ns(0.05));
  const double min_step = 1e-9 * max_step;

  auto record = [&](double amp) {
    FloquetSpectrum s;
    s.delta = delta;
    s.amplitude = amp;
    s.omega = omega;
    s.eps0 = e0;
    s.eps1 = e1;
    s.delta_eps = e1 - e0;
    Eigen::VectorXd v0 = ref0, v1 = ref1;
    fix_phase(v0);
    fix_phase(v1);
    s.u0 = dense_to_table(v0, truncation_n);
    s.u1 = dense_to_table(v1, truncation_n);
    out.push_back(std::move(s));
  };

  for (double target : amplitudes) {
    while (a < target) {
      double step = std::min(max_step, target - a);
      while (true) {
        const double next = (target - a <= step) ? target : a + step;
        DenseStep d = dense_solve(delta, next, omega, truncation_n);
        auto [k0, o0] = best_match(d.vectors, ref0);
        auto [k1, o1] = best_match(d.vectors, ref1);
        if ((o0 >= 0.9 && o1 >= 0.9 && k0 != k1) || step <= min_step) {
          if (k0 == k1) {
            throw NumericFailure("track_branches: branches merged " +
                                 describe(delta, next, omega, truncation_n));
          }
          Eigen::VectorXd n0 = d.vectors.col(k0);
          Eigen::VectorXd n1 = d.vectors.col(k1);
          if (n0.dot(ref0) < 0.0) n0 = -n0;
          if (n1.dot(ref1) < 0.0) n1 = -n1;
          ref0 = n0;
          ref1 = n1;
          e0 = d.values(k0);
          e1 = d.values(k1);
          a = next;
          break;
        }
        step *= 0.5;
      }
    }
    record(target);
  }
  return out;
}

double reduce_mod(double x, double omega) {
  double r = std::fmod(x, omega);
  if (r > 0.5 * omega) r -= omega;
  if (r <= -0.5 * omega) r += omega;
  return r;
}

double mod_distance(double a, double b, double omega) {
  return std::abs(reduce_mod(a - b, omega));
}

MonodromyResult monodromy_quasienergies(double delta, double amp, double omega,
                                        const MonodromyOptions& options) {
  if (!(omega > 0.0)) throw InvalidArgument("monodromy_quasienergies: omega must be positive");
  const double period = units::kTwoPi / omega;
  auto ham = [&](double t) {
    return PauliCoefficients{0.0, amp * std::cos(omega * t), 0.0, -0.5 * delta};
  };

  auto evaluate = [&](long steps) {
    MonodromyResult r;
    r.step = period / static_cast<double>(steps);
    r.propagator = propagate_interval(ham, 0.0, period, steps);
    r.unitarity_defect = unitarity_defect(r.propagator);
    if (r.unitarity_defect > 1e-8) {
      std::ostringstream msg;
      msg << "monodromy_quasienergies: unitarity defect " << r.unitarity_defect
          << " exceeds 1e-8; use a smaller integrator step than " << r.step << " ns";
      throw AccuracyError(msg.str());
    }
    // psi(T) = exp(-i eps T) psi(0)
    Eigen::ComplexEigenSolver<Matrix2> es(r.propagator);
    double e[2];
    for (int i = 0; i < 2; ++i) e[i] = reduce_mod(-std::arg(es.eigenvalues()(i)) / period, omega);
    if (e[0] > e[1]) std::swap(e[0], e[1]);
    r.eps0 = e[0];
    r.eps1 = e[1];
    return r;
  };

  long steps = options.step > 0.0 ? std::max(1L, std::lround(std::ceil(period / options.step))) : 2000L;
  if (options.step > 0.0) return evaluate(steps);

  const long max_steps = std::lround(1.0 / options.min_step_fraction);
  MonodromyResult prev = evaluate(steps);
  while (true) {
    steps *= 2;
    if (steps > max_steps) {
      throw AccuracyError("monodromy_quasienergies: step refinement reached the floor " +
                          describe(delta, amp, omega, 0));
    }
    MonodromyResult next = evaluate(steps);
    const double change = std::max(mod_distance(next.eps0, prev.eps0, omega),
                                   mod_distance(next.eps1, prev.eps1, omega));
    if (change < options.tolerance) return next;
    prev = next;
  }
}

std::vector<double> frequency_components(double delta_eps, double omega, int n_max) {
  if (n_max < 0) throw InvalidArgument("frequency_components: n_max must be >= 0");
  std::vector<double> f;
  for (int n = 0; n <= n_max; n += 2) {
    for (double v : {n * omega, n * omega - delta_eps, n * omega + delta_eps}) {
      if (v >= 0.0) f.push_back(v);
    }
  }
  std::sort(f.begin(), f.end());
  std::vector<double> out;
  for (double v : f) {
    if (out.empty() || v - out.back() > 1e-9) out.push_back(v);
  }
  return out;
}

}  // namespace floqsim
