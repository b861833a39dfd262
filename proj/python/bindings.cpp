#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wpn/cli.hpp"
#include "wpn/kmtree.hpp"
#include "wpn/reduce.hpp"

namespace py = pybind11;
using namespace wpn;

// JSON crosses the boundary as text; the Python side decodes it.
PYBIND11_MODULE(_wpn, m) {
  m.doc() = "omega Petri net analysis";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<WellFormednessError>(m, "WellFormednessError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<UnsupportedArcs>(m, "UnsupportedArcs", PyExc_ValueError);
  py::register_exception<UnsupportedNet>(m, "UnsupportedNet", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<ExtNet>(m, "Net")
      .def_static("parse", &parse_net, py::arg("text"))
      .def("emit", [](const ExtNet& n) { return emit_net(n); })
      .def_readonly("name", &ExtNet::name)
      .def_readonly("places", &ExtNet::places)
      .def_property_readonly("transitions",
                             [](const ExtNet& n) {
                               std::vector<std::string> names;
                               for (const auto& t : n.transitions) names.push_back(t.name);
                               return names;
                             })
      .def_property_readonly("initial", [](const ExtNet& n) { return n.initial.tokens; })
      .def_property_readonly("net_class", [](const ExtNet& n) { return n.classify().name(); })
      .def("__eq__", [](const ExtNet& a, const ExtNet& b) { return a == b; })
      .def("__repr__", [](const ExtNet& n) {
        return "<Net " + n.name + " " + std::to_string(n.places.size()) + " places, " +
               std::to_string(n.transitions.size()) + " transitions>";
      });

  m.def(
      "check",
      [](const ExtNet& net, const std::string& problem, std::uint64_t budget, bool timing) {
        py::gil_scoped_release release;
        return check_command(net, problem, budget, timing).dump();
      },
      py::arg("net"), py::arg("problem"), py::arg("budget") = 10, py::arg("timing") = true);

  m.def(
      "kmtree",
      [](const ExtNet& net) {
        py::gil_scoped_release release;
        return kmtree_command(net).dump();
      },
      py::arg("net"));
  m.def("kmtree_dot", &kmtree_dot_command, py::arg("net"));

  m.def(
      "coverability_set",
      [](const ExtNet& net) {
        std::vector<std::string> out;
        for (const auto& l : coverability_set(build_km(to_net(net)))) out.push_back(label_string(l));
        return out;
      },
      py::arg("net"));

  m.def(
      "reduce", [](const ExtNet& net, const std::string& to) { return parse_net(reduce_command(net, to)); },
      py::arg("net"), py::arg("to"));

  m.def(
      "explore",
      [](const ExtNet& net, std::size_t depth, Tokens cap, std::size_t max_states, unsigned threads) {
        py::gil_scoped_release release;
        return explore_command(net, {depth, cap, max_states, threads}).dump();
      },
      py::arg("net"), py::arg("depth") = 6, py::arg("cap") = 2, py::arg("max_states") = 200000,
      py::arg("threads") = 1);

  m.def(
      "bounds",
      [](const ExtNet& net, std::uint64_t c) {
        py::gil_scoped_release release;
        return bounds_command(net, c).dump();
      },
      py::arg("net"), py::arg("c") = 2);
}
