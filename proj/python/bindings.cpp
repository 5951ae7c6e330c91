#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "homsim/biphoton.hpp"
#include "homsim/config.hpp"
#include "homsim/errors.hpp"
#include "homsim/interferometer.hpp"
#include "homsim/oracles.hpp"
#include "homsim/polarization.hpp"
#include "homsim/quadrature.hpp"
#include "homsim/spectra.hpp"

namespace py = pybind11;
using namespace homsim;

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

PYBIND11_MODULE(_core, m) {
    m.doc() = "two-photon interference rates: spectra, beam splitter mixing, "
              "coincidence curves and polarization-resolved variants";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "SpectrumDomainError", PyExc_ValueError);
    py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
    py::register_exception<NumericalConsistencyError>(m, "NumericalConsistencyError",
                                                      PyExc_ArithmeticError);
    py::register_exception<InvalidBeamSplitterError>(m, "InvalidBeamSplitterError",
                                                     PyExc_ValueError);
    py::register_exception<UnsupportedDecompositionError>(m, "UnsupportedDecompositionError",
                                                          PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

    py::enum_<SpectrumKind>(m, "SpectrumKind")
        .value("SymmetricGaussianProduct", SpectrumKind::SymmetricGaussianProduct)
        .value("AsymmetricGaussianProduct", SpectrumKind::AsymmetricGaussianProduct)
        .value("TimeShiftedProduct", SpectrumKind::TimeShiftedProduct)
        .value("RegularizedSpdc", SpectrumKind::RegularizedSpdc)
        .value("SymmetricBasisPair", SpectrumKind::SymmetricBasisPair)
        .value("Tabulated", SpectrumKind::Tabulated);

    py::class_<JointSpectrum>(m, "JointSpectrum")
        .def_static("symmetric_gaussian", &JointSpectrum::symmetric_gaussian, py::arg("omega"),
                    py::arg("sigma"))
        .def_static("asymmetric_gaussian", &JointSpectrum::asymmetric_gaussian, py::arg("omega"),
                    py::arg("omega_tilde"), py::arg("sigma"))
        .def_static("time_shifted", &JointSpectrum::time_shifted, py::arg("omega"),
                    py::arg("sigma"), py::arg("time_shift"))
        .def_static("regularized_spdc", &JointSpectrum::regularized_spdc, py::arg("omega0"),
                    py::arg("sigma"), py::arg("epsilon") = 0.0)
        .def_static("symmetric_basis_pair", &JointSpectrum::symmetric_basis_pair,
                    py::arg("omega"), py::arg("omega_tilde"), py::arg("width") = 0.01)
        .def_static("tabulated_from_file", &JointSpectrum::tabulated_from_file, py::arg("path"))
        .def_property_readonly("kind", &JointSpectrum::kind)
        .def("amplitude", &JointSpectrum::amplitude, py::arg("omega"), py::arg("omega_tilde"))
        .def("support", &JointSpectrum::support)
        .def("is_symmetric", &JointSpectrum::is_symmetric, py::arg("tol") = 1e-12)
        .def("describe", &JointSpectrum::describe)
        .def("__repr__", &JointSpectrum::describe);

    py::class_<SpectralDensity>(m, "SpectralDensity")
        .def(py::init<>())
        .def_static("unit", &SpectralDensity::unit)
        .def_static("constant", &SpectralDensity::constant, py::arg("value"))
        .def_static("gaussian", &SpectralDensity::gaussian, py::arg("center"), py::arg("width"))
        .def("__call__", &SpectralDensity::operator(), py::arg("omega"))
        .def("describe", &SpectralDensity::describe);

    m.def("eval_f", &eval_f, py::arg("spectrum"), py::arg("omega"), py::arg("omega_tilde"));
    m.def("eval_F", &eval_F, py::arg("spectrum"), py::arg("density"), py::arg("omega"),
          py::arg("omega_tilde"));
    m.def("asymmetry_G", &asymmetry_G, py::arg("spectrum"), py::arg("density"), py::arg("omega"),
          py::arg("omega_tilde"));
    m.def("symmetrize",
          py::overload_cast<const JointSpectrum&, double, double, int>(&symmetrize),
          py::arg("spectrum"), py::arg("lo"), py::arg("hi"), py::arg("n"));

    py::class_<Geometry>(m, "Geometry")
        .def(py::init([](double s1, double l1, double s2, double l2) {
                 Geometry g{s1, l1, s2, l2};
                 g.validate();
                 return g;
             }),
             py::arg("s1") = 0.0, py::arg("l1") = 0.0, py::arg("s2") = 0.0, py::arg("l2") = 0.0)
        .def_readonly("s1", &Geometry::s1)
        .def_readonly("l1", &Geometry::l1)
        .def_readonly("s2", &Geometry::s2)
        .def_readonly("l2", &Geometry::l2)
        .def_property_readonly("path_difference", &Geometry::path_difference);

    py::class_<DelayCoordinates>(m, "DelayCoordinates")
        .def_readonly("tau1", &DelayCoordinates::tau1)
        .def_readonly("tau1p", &DelayCoordinates::tau1p)
        .def_readonly("tau2", &DelayCoordinates::tau2)
        .def_readonly("tau2p", &DelayCoordinates::tau2p);
    m.def("delays", &delays, py::arg("geometry"), py::arg("t1"), py::arg("t2"));
    m.def("geometry_for_path_difference", &geometry_for_path_difference, py::arg("d"),
          py::arg("s2") = 0.0, py::arg("l2") = 0.0);

    py::class_<BeamSplitter>(m, "BeamSplitter")
        .def(py::init<double, double>(), py::arg("reflectivity"), py::arg("transmissivity"))
        .def_static("balanced", &BeamSplitter::balanced)
        .def_property_readonly("reflectivity", &BeamSplitter::reflectivity)
        .def_property_readonly("transmissivity", &BeamSplitter::transmissivity)
        .def("is_balanced", &BeamSplitter::is_balanced, py::arg("tol") = 1e-12);

    py::class_<MixingCoefficients>(m, "MixingCoefficients")
        .def_readonly("port1_a", &MixingCoefficients::port1_a)
        .def_readonly("port1_b", &MixingCoefficients::port1_b)
        .def_readonly("port2_a", &MixingCoefficients::port2_a)
        .def_readonly("port2_b", &MixingCoefficients::port2_b);
    m.def("mix_amplitudes", &mix_amplitudes, py::arg("splitter"));

    py::class_<BiphotonSystem>(m, "BiphotonSystem")
        .def(py::init([](JointSpectrum spec, SpectralDensity density, BeamSplitter splitter,
                         double tolerance) {
                 return BiphotonSystem{std::move(spec), std::move(density), splitter,
                                       Geometry{}, tolerance};
             }),
             py::arg("spectrum"), py::arg("density") = SpectralDensity::unit(),
             py::arg("splitter") = BeamSplitter::balanced(), py::arg("tolerance") = 1e-8)
        .def_readonly("spectrum", &BiphotonSystem::spectrum)
        .def_readonly("splitter", &BiphotonSystem::splitter)
        .def_readonly("tolerance", &BiphotonSystem::tolerance);

    m.def("spectral_norm", &spectral_norm, py::arg("system"));
    m.def("overlap_kernel", &overlap_kernel, py::arg("system"), py::arg("d"));
    m.def("wavepacket", &wavepacket, py::arg("system"), py::arg("tau1p"), py::arg("tau2p"),
          py::arg("d"));
    m.def("psi_split", &psi_split, py::arg("system"), py::arg("tau1p"), py::arg("tau2p"),
          py::arg("d"));
    m.def("rate_spectral", &rate_spectral, py::arg("system"), py::arg("d"));
    m.def("rate_timedomain", &rate_timedomain, py::arg("system"), py::arg("d"),
          py::call_guard<py::gil_scoped_release>());
    m.def("component_rate", &component_rate, py::arg("omega"), py::arg("omega_tilde"),
          py::arg("d"));
    m.def("asymmetry_norm", &asymmetry_norm, py::arg("system"));

    py::class_<CoincidencePoint>(m, "CoincidencePoint")
        .def_readonly("d", &CoincidencePoint::d)
        .def_readonly("rate", &CoincidencePoint::rate)
        .def_readonly("rate_normalized", &CoincidencePoint::rate_normalized);

    py::class_<CoincidenceCurve>(m, "CoincidenceCurve")
        .def_property_readonly("points", &CoincidenceCurve::points)
        .def_property_readonly("normalization", &CoincidenceCurve::normalization)
        .def_property_readonly("description", &CoincidenceCurve::description)
        .def("to_csv", &CoincidenceCurve::to_csv_string)
        .def_static("from_csv", &CoincidenceCurve::from_csv_string, py::arg("text"))
        .def("__len__", [](const CoincidenceCurve& c) { return c.points().size(); });

    m.def("sweep", &sweep, py::arg("system"), py::arg("d_values"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<AnalyzerPair>(m, "AnalyzerPair")
        .def(py::init<double, double>(), py::arg("theta1"), py::arg("theta2"))
        .def_readonly("theta1", &AnalyzerPair::theta1)
        .def_readonly("theta2", &AnalyzerPair::theta2);

    py::enum_<PairingSign>(m, "PairingSign")
        .value("Singlet", PairingSign::Singlet)
        .value("Triplet", PairingSign::Triplet);

    py::class_<PolarizedBiphoton>(m, "PolarizedBiphoton")
        .def(py::init([](JointSpectrum spec, PairingSign sign, double tolerance) {
                 return PolarizedBiphoton{std::move(spec), sign, tolerance};
             }),
             py::arg("spectrum"), py::arg("sign") = PairingSign::Singlet,
             py::arg("tolerance") = 1e-8)
        .def_readonly("spectrum", &PolarizedBiphoton::spectrum)
        .def_readonly("sign", &PolarizedBiphoton::sign);

    m.def("xi", &xi, py::arg("pair"));
    m.def("eta", &eta, py::arg("polarized"), py::arg("d"));
    m.def("coincidence_rate_polarized", &coincidence_rate_polarized, py::arg("polarized"),
          py::arg("pair"), py::arg("d"));
    m.def("eta_curvature_at_zero", &eta_curvature_at_zero, py::arg("polarized"));

    m.def("symmetric_gaussian_rc", &symmetric_gaussian_rc, py::arg("sigma"), py::arg("d"));
    m.def("asymmetric_gaussian_rc", &asymmetric_gaussian_rc, py::arg("omega"), py::arg("y_asym"),
          py::arg("sigma"), py::arg("d"));
    m.def("time_shift_identity_check", &time_shift_identity_check, py::arg("sigma"),
          py::arg("time_shift"), py::arg("d"));

    m.def("run_config_text", [](const std::string& text, const std::string& mode) {
        RunConfig cfg = parse_config_text(text, "<string>");
        cfg.mode = parse_mode(mode);
        return run(cfg);
    }, py::arg("json_text"), py::arg("mode"),
       "parse a JSON run configuration and execute it; returns the exit status");

#ifdef MODULE_VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(MODULE_VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
