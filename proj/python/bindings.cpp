#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "infodist/catalog.hpp"
#include "infodist/distance.hpp"
#include "infodist/error.hpp"
#include "infodist/game_value.hpp"
#include "infodist/nonzero_sum.hpp"
#include "infodist/structure_analysis.hpp"

namespace py = pybind11;
using namespace infodist;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<double> flat3(const Array& a, int& n0, int& n1, int& n2) {
  if (a.ndim() != 3) throw Error("ShapeMismatch", "expected a 3-dimensional array");
  n0 = static_cast<int>(a.shape(0));
  n1 = static_cast<int>(a.shape(1));
  n2 = static_cast<int>(a.shape(2));
  return {a.data(), a.data() + a.size()};
}

Array to_array(const std::vector<double>& v, std::vector<py::ssize_t> shape) {
  Array out(shape);
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

InformationStructure make_structure(const Array& probs, std::optional<std::vector<std::string>> states) {
  int K = 0, C = 0, D = 0;
  std::vector<double> p = flat3(probs, K, C, D);
  return InformationStructure(states ? *states : default_state_labels(K), C, D, std::move(p));
}

ZeroSumGame make_game(const Array& payoffs, double bound) {
  int K = 0, I = 0, J = 0;
  std::vector<double> g = flat3(payoffs, K, I, J);
  return ZeroSumGame(K, I, J, std::move(g), bound);
}

}  // namespace

PYBIND11_MODULE(_infodist, m) {
  m.doc() = "Value-based distances between two-player information structures";

  // Leaked on purpose: the type must outlive interpreter teardown.
  static PyObject* error_type = PyErr_NewException("infodist.InfodistError", PyExc_ValueError, nullptr);
  m.attr("InfodistError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("kind") = e.kind();
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::enum_<Side>(m, "Side").value("PLAYER1", Side::Player1).value("PLAYER2", Side::Player2);

  py::class_<InformationStructure>(m, "InformationStructure")
      .def(py::init(&make_structure), py::arg("probs"), py::arg("states") = py::none(),
           "probs has shape (states, signals1, signals2) and sums to 1.")
      .def_property_readonly("states", &InformationStructure::state_labels)
      .def_property_readonly("signals1", &InformationStructure::signals1)
      .def_property_readonly("signals2", &InformationStructure::signals2)
      .def_property_readonly("probs", [](const InformationStructure& u) {
        return to_array(u.probs(), {u.states(), u.signals1(), u.signals2()});
      })
      .def("__repr__", [](const InformationStructure& u) {
        return "InformationStructure(states=" + std::to_string(u.states()) + ", signals1=" +
               std::to_string(u.signals1()) + ", signals2=" + std::to_string(u.signals2()) + ")";
      });

  py::class_<ZeroSumGame>(m, "ZeroSumGame")
      .def(py::init(&make_game), py::arg("payoffs"), py::arg("bound") = 1.0,
           "payoffs has shape (states, actions1, actions2); player 1 maximizes.")
      .def_property_readonly("payoffs", [](const ZeroSumGame& g) {
        return to_array(g.payoffs(), {g.states(), g.actions1(), g.actions2()});
      });

  py::class_<BimatrixGame>(m, "BimatrixGame")
      .def(py::init<ZeroSumGame, ZeroSumGame>(), py::arg("g1"), py::arg("g2"))
      .def_readonly("g1", &BimatrixGame::g1)
      .def_readonly("g2", &BimatrixGame::g2);

  py::class_<Garbling>(m, "Garbling")
      .def(py::init<int, int, std::vector<double>>(), py::arg("source"), py::arg("target"), py::arg("rows"))
      .def_property_readonly("matrix", [](const Garbling& q) { return to_array(q.data(), {q.source(), q.target()}); });

  py::class_<ValueResult>(m, "ValueResult")
      .def_readonly("value", &ValueResult::value)
      .def_readonly("strategy1", &ValueResult::strategy1)
      .def_readonly("strategy2", &ValueResult::strategy2);

  py::class_<GapCertificate>(m, "GapCertificate")
      .def_readonly("gap", &GapCertificate::gap)
      .def_readonly("common", &GapCertificate::common)
      .def_readonly("q1", &GapCertificate::q1)
      .def_readonly("q2", &GapCertificate::q2);

  py::class_<Comparison>(m, "Comparison")
      .def_readonly("better", &Comparison::better)
      .def_readonly("gap", &Comparison::gap);

  py::class_<SignalPartition>(m, "SignalPartition")
      .def_readonly("class1", &SignalPartition::class1)
      .def_readonly("class2", &SignalPartition::class2)
      .def_readonly("classes1", &SignalPartition::classes1)
      .def_readonly("classes2", &SignalPartition::classes2);

  m.def("garble", &garble, py::arg("u"), py::arg("side"), py::arg("q"));
  m.def("l1_distance", &l1_distance, py::arg("u"), py::arg("v"));
  m.def("value", &value, py::arg("u"), py::arg("g"));
  m.def("guarantee", &guarantee, py::arg("u"), py::arg("g"), py::arg("strategy"), py::arg("side"));
  m.def("value_distance", &value_distance, py::arg("u"), py::arg("v"));
  m.def("one_sided_gap", &one_sided_gap, py::arg("u"), py::arg("v"));
  m.def("witness_game", &witness_game, py::arg("u"), py::arg("v"));
  m.def("is_better", &is_better, py::arg("u"), py::arg("v"));
  m.def("single_agent_distance", &single_agent_distance, py::arg("u"), py::arg("v"));
  m.def("hierarchy_partition", &hierarchy_partition, py::arg("u"));
  m.def("reduce_redundancy", &reduce_redundancy, py::arg("u"));
  m.def("dnzs", &dnzs, py::arg("u"), py::arg("v"));

  m.def("feasible_set", [](const InformationStructure& u, const BimatrixGame& g) {
    std::vector<std::pair<double, double>> out;
    for (const Point& p : feasible_set(u, g).vertices) out.emplace_back(p.x, p.y);
    return out;
  }, py::arg("u"), py::arg("g"), "Vertices of the feasible payoff polygon, counter-clockwise.");

  m.def("appendix_f", [] {
    const AppendixF f = appendix_f();
    return py::make_tuple(f.u1, f.u2, f.u2prime);
  });
  m.def("appendix_f_game", &appendix_f_game);
  m.def("blackwell_structure", [](int n, int m_, double p, double r) { return blackwell_structure({n, m_, p, r}); },
        py::arg("n"), py::arg("m") = 0, py::arg("p") = 0.75, py::arg("r") = 0.75);
  m.def("blackwell_d1_closed_form", &blackwell_d1_closed_form, py::arg("n"), py::arg("l"), py::arg("p"));
  m.def("no_information", &no_information, py::arg("states") = 2);
  m.def("exa6_structure", &exa6_structure, py::arg("n"));
  m.def("email_game", &email_game, py::arg("eps"), py::arg("p"), py::arg("M"));
  m.def("common_knowledge", &common_knowledge, py::arg("prior"));
}
