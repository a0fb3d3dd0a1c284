#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ghzledger/catalog.hpp"
#include "ghzledger/entropy.hpp"
#include "ghzledger/json_io.hpp"
#include "ghzledger/ledger.hpp"
#include "ghzledger/lp.hpp"
#include "ghzledger/ppt.hpp"
#include "ghzledger/ree.hpp"

namespace py = pybind11;
using namespace ghzledger;

namespace {

std::vector<Party> parties_from_pairs(const std::vector<std::pair<std::string, int>>& pairs) {
  std::vector<Party> out;
  for (const auto& [label, dim] : pairs) out.push_back({label, dim});
  return out;
}

PartySubset subset(const std::vector<std::string>& labels) {
  return PartySubset{labels};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entropy accounting and relative-entropy entanglement bounds for "
            "small multipartite states";

  py::register_exception<precondition_error>(m, "PreconditionError", PyExc_ValueError);

  py::class_<Party>(m, "Party")
      .def(py::init<std::string, int>(), py::arg("label"), py::arg("dim"))
      .def_readonly("label", &Party::label)
      .def_readonly("dim", &Party::dim)
      .def("__repr__",
           [](const Party& p) { return "Party(" + p.label + ", " + std::to_string(p.dim) + ")"; });

  py::class_<PureState>(m, "PureState")
      .def(py::init([](const std::vector<std::pair<std::string, int>>& parties,
                       const Eigen::VectorXcd& amplitudes) {
             return PureState(parties_from_pairs(parties), amplitudes);
           }),
           py::arg("parties"), py::arg("amplitudes"))
      .def_property_readonly("parties", &PureState::parties)
      .def_property_readonly("amplitudes", &PureState::amplitudes)
      .def_property_readonly("dim", &PureState::dim)
      .def("__repr__", [](const PureState& s) {
        std::string r = "PureState(";
        for (const auto& p : s.parties()) r += p.label + ":" + std::to_string(p.dim) + " ";
        r.back() = ')';
        return r;
      });

  py::class_<DensityOperator>(m, "DensityOperator")
      .def(py::init([](const std::vector<std::pair<std::string, int>>& parties,
                       const Eigen::MatrixXcd& matrix) {
             return DensityOperator(parties_from_pairs(parties), matrix);
           }),
           py::arg("parties"), py::arg("matrix"))
      .def_property_readonly("parties", &DensityOperator::parties)
      .def_property_readonly("matrix", &DensityOperator::matrix)
      .def_property_readonly("dim", &DensityOperator::dim);

  py::class_<SchmidtForm>(m, "SchmidtForm")
      .def_readonly("coefficients", &SchmidtForm::coefficients)
      .def_readonly("left_vectors", &SchmidtForm::left_vectors)
      .def_readonly("right_vectors", &SchmidtForm::right_vectors);

  py::enum_<MultiSchmidtResult::Verdict>(m, "SchmidtVerdict")
      .value("Decomposable", MultiSchmidtResult::Verdict::Decomposable)
      .value("NotDecomposable", MultiSchmidtResult::Verdict::NotDecomposable)
      .value("Undetermined", MultiSchmidtResult::Verdict::Undetermined);

  py::class_<MultiSchmidtResult>(m, "MultiSchmidtResult")
      .def_readonly("verdict", &MultiSchmidtResult::verdict)
      .def_readonly("coefficients", &MultiSchmidtResult::coefficients)
      .def_readonly("local_bases", &MultiSchmidtResult::local_bases)
      .def("decomposable", &MultiSchmidtResult::decomposable);

  // state-core operations
  m.def(
      "compose",
      [](const std::vector<PureState>& factors) {
        return compose(std::span<const PureState>(factors.data(), factors.size()));
      },
      py::arg("factors"));
  m.def(
      "partial_trace",
      [](const PureState& s, const std::vector<std::string>& keep) {
        return partial_trace(s, subset(keep));
      },
      py::arg("state"), py::arg("keep"));
  m.def(
      "partial_trace_density",
      [](const DensityOperator& r, const std::vector<std::string>& keep) {
        return partial_trace(r, subset(keep));
      },
      py::arg("rho"), py::arg("keep"));
  m.def("to_density", &to_density, py::arg("state"));
  m.def("tensor", &tensor, py::arg("a"), py::arg("b"));
  m.def(
      "schmidt",
      [](const PureState& s, const std::vector<std::string>& left) {
        return schmidt(s, subset(left));
      },
      py::arg("state"), py::arg("cut_left"));
  m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
  m.def("multi_schmidt_decompose", &multi_schmidt_decompose, py::arg("state"));

  // entropy
  py::class_<EntropyValue>(m, "EntropyValue")
      .def_readonly("bits", &EntropyValue::bits)
      .def_readonly("source", &EntropyValue::source)
      .def("__float__", [](const EntropyValue& e) { return e.bits; });
  m.def("von_neumann", &von_neumann, py::arg("rho"));
  m.def(
      "shannon", [](const std::vector<double>& p) { return shannon(p); }, py::arg("p"));
  m.def(
      "relative_entropy",
      [](const DensityOperator& rho, const DensityOperator& sigma) -> py::object {
        const auto v = relative_entropy(rho, sigma);
        if (!v) return py::float_(std::numeric_limits<double>::infinity());
        return py::float_(*v);
      },
      py::arg("rho"), py::arg("sigma"), "Returns math.inf on support failure");

  // ppt
  py::class_<PptVerdict>(m, "PptVerdict")
      .def_readonly("min_pt_eigenvalue", &PptVerdict::min_pt_eigenvalue)
      .def_readonly("is_ppt", &PptVerdict::is_ppt);
  py::enum_<SepVerdict>(m, "SepVerdict")
      .value("Separable", SepVerdict::Separable)
      .value("Entangled", SepVerdict::Entangled)
      .value("Unknown", SepVerdict::Unknown);
  m.def(
      "partial_transpose",
      [](const DensityOperator& r, const std::vector<std::string>& s) {
        return partial_transpose(r, subset(s));
      },
      py::arg("rho"), py::arg("transpose_subset"));
  m.def(
      "ppt_test",
      [](const DensityOperator& r, const std::vector<std::string>& cut) {
        return ppt_test(r, subset(cut));
      },
      py::arg("rho"), py::arg("cut_left"));
  m.def(
      "separable_2x2_or_2x3",
      [](const DensityOperator& r, const std::vector<std::string>& cut) {
        return separable_2x2_or_2x3(r, subset(cut));
      },
      py::arg("rho"), py::arg("cut_left"));

  // ree
  py::class_<ReeOptions>(m, "ReeOptions")
      .def(py::init<>())
      .def_readwrite("tol", &ReeOptions::tol)
      .def_readwrite("max_iter", &ReeOptions::max_iter)
      .def_readwrite("restarts", &ReeOptions::restarts)
      .def_readwrite("sweeps", &ReeOptions::sweeps)
      .def_readwrite("seed", &ReeOptions::seed)
      .def_readwrite("dim_cap", &ReeOptions::dim_cap)
      .def_readwrite("certify_tol", &ReeOptions::certify_tol)
      .def_readwrite("max_proj", &ReeOptions::max_proj);

  py::enum_<BoundDirection>(m, "BoundDirection")
      .value("UpperBound", BoundDirection::UpperBound)
      .value("LowerBound", BoundDirection::LowerBound)
      .value("Exact", BoundDirection::Exact);

  py::class_<OptimizerReport>(m, "OptimizerReport")
      .def_readonly("value", &OptimizerReport::value)
      .def_readonly("direction", &OptimizerReport::direction)
      .def_readonly("iterations", &OptimizerReport::iterations)
      .def_readonly("gap", &OptimizerReport::gap)
      .def_readonly("converged", &OptimizerReport::converged)
      .def_readonly("witness", &OptimizerReport::witness);

  py::class_<SandwichReport>(m, "SandwichReport")
      .def_readonly("upper", &SandwichReport::upper)
      .def_readonly("lower", &SandwichReport::lower)
      .def_readonly("value", &SandwichReport::value)
      .def_readonly("direction", &SandwichReport::direction)
      .def("exact", &SandwichReport::exact)
      .def("width", &SandwichReport::width);

  py::class_<MaxCorrelatedForm>(m, "MaxCorrelatedForm")
      .def(py::init<Eigen::MatrixXcd>(), py::arg("coeff"))
      .def(py::init<Eigen::MatrixXcd, Eigen::MatrixXcd, Eigen::MatrixXcd>(), py::arg("coeff"),
           py::arg("basis_a"), py::arg("basis_b"))
      .def("to_density", &MaxCorrelatedForm::to_density);

  m.def(
      "ree_pure",
      [](const PureState& s, const std::vector<std::string>& cut) {
        return ree_pure(s, subset(cut));
      },
      py::arg("state"), py::arg("cut_left"));
  m.def("ree_max_correlated", &ree_max_correlated, py::arg("form"));
  m.def(
      "ree_upper",
      [](const DensityOperator& r, const std::vector<std::string>& cut, const ReeOptions& o) {
        return ree_upper(r, subset(cut), o);
      },
      py::arg("rho"), py::arg("cut_left"), py::arg("opts") = ReeOptions{});
  m.def(
      "rains_bound",
      [](const DensityOperator& r, const std::vector<std::string>& cut, const ReeOptions& o) {
        return rains_bound(r, subset(cut), o);
      },
      py::arg("rho"), py::arg("cut_left"), py::arg("opts") = ReeOptions{});
  m.def(
      "ree_sandwich",
      [](const DensityOperator& r, const std::vector<std::string>& cut, const ReeOptions& o) {
        return ree_sandwich(r, subset(cut), o);
      },
      py::arg("rho"), py::arg("cut_left"), py::arg("opts") = ReeOptions{});

  py::class_<AdditivityReport>(m, "AdditivityReport")
      .def_readonly("gap", &AdditivityReport::gap)
      .def_readonly("certified", &AdditivityReport::certified)
      .def_readonly("joint", &AdditivityReport::joint)
      .def_readonly("left", &AdditivityReport::left)
      .def_readonly("right", &AdditivityReport::right);
  m.def("additivity_gap", &additivity_gap, py::arg("rho12"), py::arg("rho34"),
        py::arg("opts") = ReeOptions{});

  // ledger
  py::enum_<LedgerVerdict>(m, "LedgerVerdict")
      .value("ViolatesE4", LedgerVerdict::ViolatesE4)
      .value("LPInfeasible", LedgerVerdict::LPInfeasible)
      .value("NecessaryConditionsPass", LedgerVerdict::NecessaryConditionsPass);

  py::class_<EntanglementLedger>(m, "EntanglementLedger")
      .def_readonly("one_party", &EntanglementLedger::one_party)
      .def_readonly("two_party", &EntanglementLedger::two_party)
      .def_readonly("e4", &EntanglementLedger::e4)
      .def_readonly("lp_feasible", &EntanglementLedger::lp_feasible)
      .def_readonly("lp_witness", &EntanglementLedger::lp_witness)
      .def_readonly("e2_total", &EntanglementLedger::e2_total)
      .def_readonly("e3_total", &EntanglementLedger::e3_total)
      .def_readonly("verdict", &EntanglementLedger::verdict)
      .def_readonly("variable_names", &EntanglementLedger::variable_names);

  py::class_<TripartiteLedger>(m, "TripartiteLedger")
      .def_readonly("er_ab", &TripartiteLedger::er_ab)
      .def_readonly("er_ac", &TripartiteLedger::er_ac)
      .def_readonly("er_bc", &TripartiteLedger::er_bc)
      .def_readonly("one_party", &TripartiteLedger::one_party)
      .def_readonly("e3_candidates", &TripartiteLedger::e3_candidates)
      .def_readonly("slacks", &TripartiteLedger::slacks)
      .def_readonly("eq_f_values", &TripartiteLedger::eq_f_values)
      .def_readonly("spread", &TripartiteLedger::spread)
      .def_readonly("inconclusive", &TripartiteLedger::inconclusive);

  py::class_<Prop4Report>(m, "Prop4Report")
      .def_readonly("separability", &Prop4Report::separability)
      .def_readonly("n_separable", &Prop4Report::n_separable)
      .def_readonly("skipped", &Prop4Report::skipped)
      .def_readonly("notice", &Prop4Report::notice)
      .def_readonly("eq_f_values", &Prop4Report::eq_f_values)
      .def_readonly("spread", &Prop4Report::spread)
      .def_readonly("h_value", &Prop4Report::h_value)
      .def_readonly("holds", &Prop4Report::holds);

  py::class_<Prop2Report>(m, "Prop2Report")
      .def_readonly("theta_ok", &Prop2Report::theta_ok)
      .def_readonly("theta_verdict", &Prop2Report::theta_verdict)
      .def_readonly("expected", &Prop2Report::expected)
      .def_readonly("measured", &Prop2Report::measured)
      .def_readonly("abs_error", &Prop2Report::abs_error)
      .def_readonly("certified", &Prop2Report::certified);

  m.def("four_party_essential", &four_party_essential, py::arg("state"));
  m.def("ghz_reducibility_certificate", &ghz_reducibility_certificate, py::arg("state"),
        py::arg("lp_tol") = 1e-7);
  m.def("three_party_ledger", &three_party_ledger, py::arg("state"),
        py::arg("opts") = ReeOptions{});
  m.def("prop4_check", &prop4_check, py::arg("state"), py::arg("opts") = ReeOptions{});
  m.def("prop2_probe", &prop2_probe, py::arg("m"), py::arg("n"), py::arg("l"), py::arg("k"),
        py::arg("psi_ab") = std::nullopt, py::arg("phi_ac") = std::nullopt,
        py::arg("phi_bc") = std::nullopt, py::arg("theta_abc"), py::arg("opts") = ReeOptions{});

  // catalog
  m.def("ghz", &ghz, py::arg("n"));
  m.def("epr", &epr);
  m.def("counterexample_4party", &counterexample_4party);
  m.def(
      "schmidt_state",
      [](const std::vector<double>& p, int n) { return schmidt_state(p, n); }, py::arg("p"),
      py::arg("n_parties"));
  m.def("max_correlated", &max_correlated, py::arg("a"));
  m.def(
      "appendix_b_state",
      [](const std::vector<double>& p, const Eigen::MatrixXcd& gram) {
        return appendix_b_state(p, gram);
      },
      py::arg("p"), py::arg("gram"));
  m.def(
      "haar_random_state",
      [](const std::vector<std::pair<std::string, int>>& parties, std::uint64_t seed) {
        return haar_random_state(parties_from_pairs(parties), seed);
      },
      py::arg("parties"), py::arg("seed"));

  // json
  m.def("state_to_json", [](const PureState& s) { return state_to_json(s).dump(2); });
  m.def("state_from_json",
        [](const std::string& text) { return state_from_json(nlohmann::json::parse(text)); });

  m.attr("__version__") = "0.1.0";
}
