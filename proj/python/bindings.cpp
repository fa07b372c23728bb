#include "floqsim/analytic.hpp"
#include "floqsim/errors.hpp"
#include "floqsim/floquet.hpp"
#include "floqsim/parallel.hpp"
#include "floqsim/propagator.hpp"
#include "floqsim/qubit_model.hpp"
#include "floqsim/spectral.hpp"
#include "floqsim/tomography.hpp"
#include "floqsim/units.hpp"
#include "floqsim/version.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace floqsim;

namespace {

StateVector to_state(const Vector2& v) { return StateVector::normalized(v(0), v(1)); }

py::dict trajectory_dict(const Trajectory& tr) {
  const auto n = static_cast<py::ssize_t>(tr.times.size());
  py::array_t<double> sx(n), sy(n), sz(n);
  py::array_t<std::complex<double>> states({n, py::ssize_t{2}});
  auto s = states.mutable_unchecked<2>();
  for (py::ssize_t k = 0; k < n; ++k) {
    const auto& b = tr.bloch[static_cast<size_t>(k)];
    sx.mutable_at(k) = b.sx;
    sy.mutable_at(k) = b.sy;
    sz.mutable_at(k) = b.sz;
    s(k, 0) = tr.states[static_cast<size_t>(k)].c_g();
    s(k, 1) = tr.states[static_cast<size_t>(k)].c_e();
  }
  py::dict d;
  d["times"] = py::array_t<double>(n, tr.times.data());
  d["p1"] = py::array_t<double>(n, tr.p1.data());
  d["sx"] = sx;
  d["sy"] = sy;
  d["sz"] = sz;
  d["states"] = states;
  d["step"] = tr.step;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Driven two-level system: Floquet spectra, pulse propagation, spectra and tomography";
  m.attr("__version__") = kVersion;

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<OutOfRange>(m, "OutOfRange", PyExc_ValueError);
  py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_RuntimeError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_RuntimeError);
  py::register_exception<IllDefinedBasis>(m, "IllDefinedBasis", PyExc_RuntimeError);

  m.def("ghz_to_rad_per_ns", &units::ghz_to_rad_per_ns, py::arg("f_ghz"));
  m.def("rad_per_ns_to_ghz", &units::rad_per_ns_to_ghz, py::arg("w"));
  m.def("set_thread_count", &set_thread_count, py::arg("n"));
  m.def("thread_count", &thread_count);

  py::class_<QubitParams>(m, "QubitParams")
      .def(py::init<>())
      .def(py::init([](double delta, double ip) {
             QubitParams q;
             q.delta = delta;
             q.persistent_current = ip;
             q.check();
             return q;
           }),
           py::arg("delta"), py::arg("persistent_current") = 690.0)
      .def_readwrite("delta", &QubitParams::delta)
      .def_readwrite("persistent_current", &QubitParams::persistent_current);

  py::class_<PulseSpec>(m, "PulseSpec")
      .def(py::init([](double amp, double carrier, double tr, double tp, double tf, double phase) {
             PulseSpec p{amp, carrier, tr, tp, tf, phase};
             p.check();
             return p;
           }),
           py::arg("amplitude_max"), py::arg("carrier"), py::arg("t_rise") = 0.0, py::arg("t_plateau") = 0.0,
           py::arg("t_fall") = 0.0, py::arg("carrier_phase") = 0.0)
      .def_readwrite("amplitude_max", &PulseSpec::amplitude_max)
      .def_readwrite("carrier", &PulseSpec::carrier)
      .def_readwrite("t_rise", &PulseSpec::t_rise)
      .def_readwrite("t_plateau", &PulseSpec::t_plateau)
      .def_readwrite("t_fall", &PulseSpec::t_fall)
      .def_readwrite("carrier_phase", &PulseSpec::carrier_phase)
      .def_property_readonly("total_duration", &PulseSpec::total_duration)
      .def("__repr__", [](const PulseSpec& p) {
        return "PulseSpec(amplitude_max=" + std::to_string(p.amplitude_max) + ", carrier=" +
               std::to_string(p.carrier) + ", t_rise=" + std::to_string(p.t_rise) + ", t_plateau=" +
               std::to_string(p.t_plateau) + ", t_fall=" + std::to_string(p.t_fall) + ")";
      });

  m.def("envelope", &envelope, py::arg("pulse"), py::arg("t"));
  m.def("hamiltonian_at", &hamiltonian_at, py::arg("params"), py::arg("pulse"), py::arg("t"));
  m.def("transition_frequency", &transition_frequency, py::arg("params"), py::arg("flux_offset"));

  m.def("bessel_j", &bessel_j, py::arg("n"), py::arg("x"));
  m.def("analytic_delta_epsilon", &analytic_delta_epsilon, py::arg("delta"), py::arg("amp"), py::arg("omega"));
  m.def(
      "analytic_quasienergies",
      [](double d, double a, double w) {
        const auto q = analytic_quasienergies(d, a, w);
        return py::make_tuple(q.eps0, q.eps1);
      },
      py::arg("delta"), py::arg("amp"), py::arg("omega"));

  py::class_<FloquetSpectrum>(m, "FloquetSpectrum")
      .def_readonly("eps0", &FloquetSpectrum::eps0)
      .def_readonly("eps1", &FloquetSpectrum::eps1)
      .def_readonly("delta_eps", &FloquetSpectrum::delta_eps)
      .def_readonly("amplitude", &FloquetSpectrum::amplitude)
      .def_readonly("omega", &FloquetSpectrum::omega)
      .def("periodic_state", &FloquetSpectrum::periodic_state, py::arg("j"), py::arg("drive_phase"));

  m.def("floquet_spectrum", &floquet_spectrum, py::arg("delta"), py::arg("amp"), py::arg("omega"),
        py::arg("truncation_n") = kDefaultTruncation);
  m.def(
      "floquet_matrix",
      [](double d, double a, double w, int n) { return build_floquet_matrix(d, a, w, n).entries(); },
      py::arg("delta"), py::arg("amp"), py::arg("omega"), py::arg("truncation_n") = kDefaultTruncation);
  m.def(
      "monodromy_quasienergies",
      [](double d, double a, double w) {
        const auto r = monodromy_quasienergies(d, a, w);
        return py::make_tuple(r.eps0, r.eps1);
      },
      py::arg("delta"), py::arg("amp"), py::arg("omega"));
  m.def("frequency_components", &frequency_components, py::arg("delta_eps"), py::arg("omega"), py::arg("n_max"));

  m.def(
      "propagate",
      [](const QubitParams& q, const PulseSpec& p, const Vector2& initial, double dt) {
        return trajectory_dict(propagate(q, p, to_state(initial), dt));
      },
      py::arg("params"), py::arg("pulse"), py::arg("initial"), py::arg("sample_dt"));
  m.def(
      "sweep_pulse_duration",
      [](const QubitParams& q, const PulseSpec& p, const std::vector<double>& durations, long shots,
         std::uint64_t seed) {
        SweepOptions o;
        o.shots = shots;
        o.seed = seed;
        SweepResult r;
        {
          py::gil_scoped_release release;
          r = sweep_pulse_duration(q, p, durations, o);
        }
        py::dict d;
        d["p1"] = py::array_t<double>(static_cast<py::ssize_t>(r.p1.size()), r.p1.data());
        d["excited_counts"] = r.excited_counts;
        d["step"] = r.step;
        return d;
      },
      py::arg("params"), py::arg("pulse_template"), py::arg("durations"), py::arg("shots") = 0,
      py::arg("seed") = 0);
  m.def(
      "prepare_state",
      [](const QubitParams& q, const Vector2& target, double amp, double edges) {
        const auto r = prepare_state(q, to_state(target), amp, edges);
        return py::make_tuple(r.pulse, r.fidelity);
      },
      py::arg("params"), py::arg("target"), py::arg("amp"), py::arg("edges"));

  py::enum_<Window>(m, "Window").value("Rectangular", Window::Rectangular).value("Hann", Window::Hann);
  py::enum_<LineKind>(m, "LineKind")
      .value("Harmonic", LineKind::Harmonic)
      .value("Plus", LineKind::Plus)
      .value("Minus", LineKind::Minus)
      .value("Unassigned", LineKind::Unassigned);

  py::class_<Spectrum>(m, "Spectrum")
      .def_readonly("freqs", &Spectrum::freqs)
      .def_readonly("magnitudes", &Spectrum::magnitudes)
      .def_readonly("resolution", &Spectrum::resolution)
      .def_readonly("bin_spacing", &Spectrum::bin_spacing)
      .def("energy", &Spectrum::energy);
  py::class_<Peak>(m, "Peak")
      .def_readonly("frequency", &Peak::frequency)
      .def_readonly("amplitude", &Peak::amplitude)
      .def_readonly("kind", &Peak::kind)
      .def_readonly("n", &Peak::n)
      .def_readonly("predicted", &Peak::predicted);
  py::class_<PeakSet>(m, "PeakSet")
      .def_readonly("peaks", &PeakSet::peaks)
      .def_readonly("resolution", &PeakSet::resolution)
      .def_readonly("violation_score", &PeakSet::violation_score);

  m.def(
      "dft",
      [](const std::vector<double>& t, const std::vector<double>& v, Window w, int pad) { return dft(t, v, w, pad); },
      py::arg("times"), py::arg("values"), py::arg("window") = Window::Hann, py::arg("zero_pad_factor") = 4);
  m.def("find_peaks", &find_peaks, py::arg("spectrum"), py::arg("min_prominence"));
  m.def("classify_peaks", &classify_peaks, py::arg("peaks"), py::arg("omega"), py::arg("delta_eps"),
        py::arg("n_max"));
  m.def(
      "fast_component_amplitudes",
      [](const std::vector<double>& t, const std::vector<double>& v, double w, double de) {
        const auto f = fast_component_amplitudes(t, v, w, de);
        py::dict d;
        d["offset"] = f.offset;
        d["slow"] = f.slow;
        d["minus"] = f.minus;
        d["plus"] = f.plus;
        d["rms_residual"] = f.rms_residual;
        return d;
      },
      py::arg("times"), py::arg("values"), py::arg("omega"), py::arg("delta_eps"));

  py::enum_<Basis>(m, "Basis").value("Z", Basis::Z).value("X90", Basis::X90).value("Y90", Basis::Y90);
  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<const Matrix2&, double>(), py::arg("rho"), py::arg("tolerance") = DensityMatrix::kTolerance)
      .def_static("pure", [](const Vector2& v) { return DensityMatrix::pure(to_state(v)); }, py::arg("state"))
      .def_static("from_bloch", &DensityMatrix::from_bloch, py::arg("x"), py::arg("y"), py::arg("z"))
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def("bloch", &DensityMatrix::bloch)
      .def("min_eigenvalue", &DensityMatrix::min_eigenvalue)
      .def("purity", &DensityMatrix::purity);
  py::class_<ShotRecord>(m, "ShotRecord")
      .def(py::init([](Basis b, long shots, long excited) { return ShotRecord{b, shots, excited, 0}; }),
           py::arg("basis"), py::arg("shots"), py::arg("excited_counts"))
      .def_readonly("basis", &ShotRecord::basis)
      .def_readonly("shots", &ShotRecord::shots)
      .def_readonly("excited_counts", &ShotRecord::excited_counts)
      .def_readonly("seed", &ShotRecord::seed);

  m.def(
      "simulate_shots",
      [](const DensityMatrix& rho, Basis b, long shots, std::uint64_t seed) {
        return simulate_shots(rho, b, shots, seed);
      },
      py::arg("rho"), py::arg("basis"), py::arg("shots"), py::arg("seed"));
  m.def(
      "mle_reconstruct", [](const std::vector<ShotRecord>& r) { return mle_reconstruct(r); }, py::arg("records"));
  m.def("fidelity", &fidelity, py::arg("rho"), py::arg("sigma"));
  m.def(
      "bootstrap_errors",
      [](const std::vector<ShotRecord>& r, const Vector2& target, int b, std::uint64_t seed) {
        const auto res = bootstrap_errors(r, to_state(target), b, seed);
        py::dict d;
        d["rho"] = res.rho;
        d["fidelity"] = res.fidelity_to_target;
        d["stderr"] = res.fidelity_stderr;
        d["mean"] = res.fidelity_mean;
        d["failures"] = res.failures;
        return d;
      },
      py::arg("records"), py::arg("target"), py::arg("b"), py::arg("seed"));
}
