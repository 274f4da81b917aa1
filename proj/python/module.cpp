#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lopsim/circuit.hpp"
#include "lopsim/classical.hpp"
#include "lopsim/errors.hpp"
#include "lopsim/quantum.hpp"
#include "lopsim/rng.hpp"
#include "lopsim/statistics.hpp"
#include "lopsim/text.hpp"
#include "lopsim/transfer.hpp"

namespace py = pybind11;

namespace {

py::dict occupation_map_to_dict(const std::map<lopsim::FockOccupation, lopsim::Complex>& m) {
  py::dict d;
  for (const auto& [occ, amp] : m) d[py::tuple(py::cast(occ))] = amp;
  return d;
}

py::dict probability_map_to_dict(const std::map<lopsim::FockOccupation, double>& m) {
  py::dict d;
  for (const auto& [occ, p] : m) d[py::tuple(py::cast(occ))] = p;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  using namespace lopsim;

  m.doc() = "Passive linear-optics interferometer simulator: one circuit, three "
            "semantics (classical fields, coherent states, Fock states).";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_RuntimeError);

  m.attr("UNITARITY_TOL") = kUnitarityTol;
  m.attr("MAX_MODES") = kMaxModes;
  m.attr("MAX_FOCK_PHOTONS") = kMaxFockPhotons;

  py::class_<UnitarityReport>(m, "UnitarityReport")
      .def_readonly("max_deviation", &UnitarityReport::max_deviation)
      .def_readonly("tolerance", &UnitarityReport::tolerance)
      .def_readonly("pass_", &UnitarityReport::pass)
      .def("__bool__", [](const UnitarityReport& r) { return r.pass; })
      .def("__repr__", [](const UnitarityReport& r) {
        return "UnitarityReport(max_deviation=" + format_double(r.max_deviation) +
               ", tolerance=" + format_double(r.tolerance) +
               (r.pass ? ", pass)" : ", FAIL)");
      });

  py::class_<ElementMatrix>(m, "ElementMatrix")
      .def_property_readonly("matrix", [](const ElementMatrix& e) { return e.matrix; })
      .def_property_readonly("dim", &ElementMatrix::dim);

  py::class_<TransferMatrix>(m, "TransferMatrix")
      .def(py::init<Eigen::MatrixXcd>(), py::arg("matrix"))
      .def_static("identity", &TransferMatrix::identity, py::arg("modes"))
      .def_property_readonly("modes", &TransferMatrix::modes)
      .def_property_readonly("matrix",
                             [](const TransferMatrix& u) { return u.matrix(); })
      .def("__repr__", [](const TransferMatrix& u) {
        return "TransferMatrix(modes=" + std::to_string(u.modes()) + ")";
      });

  py::enum_<ElementKind>(m, "ElementKind")
      .value("BEAM_SPLITTER", ElementKind::BeamSplitter)
      .value("PHASE", ElementKind::Phase);

  py::class_<CircuitElement>(m, "CircuitElement")
      .def_static("beam_splitter", &CircuitElement::beam_splitter, py::arg("mode_a"),
                  py::arg("mode_b"), py::arg("theta"), py::arg("aux_phase") = 0.0)
      .def_static("phase", &CircuitElement::phase, py::arg("mode"), py::arg("phi"))
      .def_readonly("kind", &CircuitElement::kind)
      .def_readonly("mode_a", &CircuitElement::mode_a)
      .def_readonly("mode_b", &CircuitElement::mode_b)
      .def_readonly("theta", &CircuitElement::theta)
      .def_readonly("aux_phase", &CircuitElement::aux_phase)
      .def_readonly("phi", &CircuitElement::phi)
      .def("__eq__",
           [](const CircuitElement& a, const CircuitElement& b) { return a == b; },
           py::is_operator());

  py::class_<CircuitSpec>(m, "CircuitSpec")
      .def(py::init<>())
      .def_readwrite("modes", &CircuitSpec::modes)
      .def_readwrite("elements", &CircuitSpec::elements)
      .def("__eq__", [](const CircuitSpec& a, const CircuitSpec& b) { return a == b; },
           py::is_operator());

  py::class_<FockBasisVector>(m, "FockBasisVector")
      .def(py::init<int, int>(), py::arg("modes"), py::arg("total_photons"))
      .def_property_readonly("modes", &FockBasisVector::modes)
      .def_property_readonly("total_photons", &FockBasisVector::total_photons)
      .def_property_readonly("is_normalized", &FockBasisVector::is_normalized)
      .def("set_amplitude", &FockBasisVector::set_amplitude, py::arg("occupation"),
           py::arg("amplitude"))
      .def("add_amplitude", &FockBasisVector::add_amplitude, py::arg("occupation"),
           py::arg("amplitude"))
      .def("amplitude", &FockBasisVector::amplitude, py::arg("occupation"))
      .def("norm_sq", &FockBasisVector::norm_sq)
      .def("mark_normalized", &FockBasisVector::mark_normalized,
           py::arg("tol") = kUnitarityTol)
      .def("terms", [](const FockBasisVector& s) { return occupation_map_to_dict(s.terms()); })
      .def("probabilities",
           [](const FockBasisVector& s) { return probability_map_to_dict(s.probabilities()); })
      .def("__repr__", [](const FockBasisVector& s) {
        return "FockBasisVector(modes=" + std::to_string(s.modes()) +
               ", total_photons=" + std::to_string(s.total_photons()) + ", " +
               std::to_string(s.terms().size()) + " terms)";
      });

  py::class_<TruncatedModeOperator>(m, "TruncatedModeOperator")
      .def_readonly("cutoff", &TruncatedModeOperator::cutoff)
      .def_readonly("matrix", &TruncatedModeOperator::matrix);

  py::class_<PoissonDistribution>(m, "PoissonDistribution")
      .def_readonly("probability", &PoissonDistribution::probability)
      .def_readonly("tail_mass", &PoissonDistribution::tail_mass);

  py::class_<DisplacedAnnihilation>(m, "DisplacedAnnihilation")
      .def_readonly("op", &DisplacedAnnihilation::op)
      .def_readonly("tail_mass", &DisplacedAnnihilation::tail_mass)
      .def_readonly("cutoff_adequate", &DisplacedAnnihilation::cutoff_adequate);

  py::class_<CountRecord>(m, "CountRecord")
      .def_readonly("frames", &CountRecord::frames)
      .def_readonly("seed", &CountRecord::seed)
      .def_readonly("singles", &CountRecord::singles)
      .def_readonly("coincidences", &CountRecord::coincidences)
      .def("__eq__", [](const CountRecord& a, const CountRecord& b) { return a == b; },
           py::is_operator());

  py::class_<Fringe>(m, "Fringe")
      .def(py::init<>())
      .def(py::init([](std::vector<double> phase, std::vector<double> value) {
             Fringe f;
             f.phase = std::move(phase);
             f.value = std::move(value);
             return f;
           }),
           py::arg("phase"), py::arg("value"))
      .def_readwrite("phase", &Fringe::phase)
      .def_readwrite("value", &Fringe::value);

  py::class_<AnticorrelationReport>(m, "AnticorrelationReport")
      .def_readonly("p_first", &AnticorrelationReport::p_first)
      .def_readonly("p_second", &AnticorrelationReport::p_second)
      .def_readonly("p_coincidence", &AnticorrelationReport::p_coincidence)
      .def_readonly("value", &AnticorrelationReport::value);

  py::class_<HomPoint>(m, "HomPoint")
      .def_readonly("transmittance", &HomPoint::transmittance)
      .def_readonly("p11", &HomPoint::p11)
      .def_readonly("p20", &HomPoint::p20)
      .def_readonly("p02", &HomPoint::p02);

  py::class_<EquivalenceReport>(m, "EquivalenceReport")
      .def_readonly("trials", &EquivalenceReport::trials)
      .def_readonly("max_modes", &EquivalenceReport::max_modes)
      .def_readonly("seed", &EquivalenceReport::seed)
      .def_readonly("max_deviation", &EquivalenceReport::max_deviation);

  py::class_<CounterRng>(m, "CounterRng")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
           py::arg("stream") = 0)
      .def("next_u64", &CounterRng::next_u64)
      .def("uniform", &CounterRng::uniform)
      .def("below", &CounterRng::below, py::arg("n"))
      .def("angle", &CounterRng::angle);

  m.def("sample_poisson", &sample_poisson, py::arg("mean"), py::arg("rng"));

  m.def("validate_unitary", &validate_unitary, py::arg("matrix"),
        py::arg("tol") = kUnitarityTol);
  m.def("make_beam_splitter", &make_beam_splitter, py::arg("theta"),
        py::arg("aux_phase") = 0.0);
  m.def("make_phase", &make_phase, py::arg("phi"));
  m.def("embed", &embed, py::arg("element"), py::arg("modes"), py::arg("total_modes"));
  m.def("compose", &compose, py::arg("later"), py::arg("earlier"));

  m.def("parse_circuit", &parse_circuit, py::arg("text"));
  m.def("to_text", &to_text, py::arg("spec"));
  m.def("compile", &lopsim::compile, py::arg("spec"));
  m.def("mach_zehnder", &mach_zehnder, py::arg("theta1"), py::arg("theta2"),
        py::arg("k_l1"), py::arg("k_l2"), py::arg("phi"));
  m.def("random_circuit", &random_circuit, py::arg("modes"), py::arg("depth"),
        py::arg("rng"));

  m.def("propagate_classical", &propagate_classical, py::arg("u"), py::arg("field"));
  m.def("intensities", &intensities, py::arg("field"));
  m.def("output_fractions", &output_fractions, py::arg("u"), py::arg("field"));

  m.def("propagate_coherent", &propagate_coherent, py::arg("u"), py::arg("alphas"));
  m.def("poisson_number_distribution", &poisson_number_distribution, py::arg("alpha"),
        py::arg("n_max"));
  m.def("single_photon_distribution", &single_photon_distribution, py::arg("u"),
        py::arg("in_mode"));
  m.def("permanent", &permanent, py::arg("matrix"));
  m.def("fock_evolve", &fock_evolve, py::arg("u"), py::arg("occupation"));
  m.def("fock_evolve_bruteforce", &fock_evolve_bruteforce, py::arg("u"),
        py::arg("occupation"));
  m.def("two_photon_component_coherent", &two_photon_component_coherent,
        py::arg("alpha1"), py::arg("alpha2"));
  m.def("coincidence_coefficient", &coincidence_coefficient, py::arg("t"), py::arg("r"),
        py::arg("alpha1"), py::arg("alpha2"));
  m.def("annihilation_matrix", &annihilation_matrix, py::arg("cutoff"));
  m.def("displacement_matrix", &displacement_matrix, py::arg("alpha"),
        py::arg("cutoff"));
  m.def("displaced_annihilation", &displaced_annihilation, py::arg("alpha"),
        py::arg("cutoff") = kDefaultCutoff);

  m.def("coincidence_probability", &coincidence_probability, py::arg("state"),
        py::arg("det_i"), py::arg("det_j"));
  m.def("anticorrelation_single_photon", &anticorrelation_single_photon, py::arg("u"),
        py::arg("in_mode"), py::arg("det_i") = 0, py::arg("det_j") = 1);
  m.def("anticorrelation_coherent", &anticorrelation_coherent, py::arg("u"),
        py::arg("alphas"), py::arg("det_i") = 0, py::arg("det_j") = 1);
  m.def("hom_scan", &hom_scan, py::arg("transmittance_grid"));
  m.def("sample_frames", &sample_frames, py::arg("u"), py::arg("alphas"),
        py::arg("frames"), py::arg("seed"));
  m.def("sample_frame_range", &sample_frame_range, py::arg("u"), py::arg("alphas"),
        py::arg("first_frame"), py::arg("last_frame"), py::arg("seed"));
  m.def("merge", &merge, py::arg("a"), py::arg("b"));
  m.def("fringe_visibility", &fringe_visibility, py::arg("fringe"));
  m.def("equivalence_check", &equivalence_check, py::arg("trials"),
        py::arg("max_modes"), py::arg("seed"));
}
