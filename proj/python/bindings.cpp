// Python module: formulas as objects, frames/models/reports as JSON text.
// The Python package wraps the JSON side with dicts.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modaldef/corpus.hpp"
#include "modaldef/definability.hpp"
#include "modaldef/error.hpp"
#include "modaldef/io.hpp"
#include "modaldef/team.hpp"
#include "modaldef/transform.hpp"

namespace py = pybind11;
using namespace modaldef;

namespace {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::vector<std::string>> clauses_out(const ClosedClauseSet& cs) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : cs) {
    auto& row = out.emplace_back();
    for (const auto& g : c) row.push_back(render(g));
  }
  return out;
}

ClosedClause clause_in(const std::vector<Formula>& parts) { return ClosedClause(parts.begin(), parts.end()); }

}  // namespace

PYBIND11_MODULE(_modaldef, m) {
  m.doc() = "Modal definability toolkit (native core)";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<FragmentError>(m, "FragmentError", base.ptr());
  py::register_exception<InputError>(m, "InputError", base.ptr());

  py::class_<Formula>(m, "Formula")
      .def_property_readonly("kind", [](const Formula& f) { return kind_name(f.kind()); })
      .def_property_readonly("fragment", [](const Formula& f) { return fragment_name(classify(f)); })
      .def_property_readonly("modal_depth", [](const Formula& f) { return modal_depth(f); })
      .def_property_readonly("propositions", [](const Formula& f) { return propositions(f); })
      .def_property_readonly("children",
                             [](const Formula& f) { return std::vector<Formula>(f.children().begin(), f.children().end()); })
      .def("__str__", [](const Formula& f) { return render(f); })
      .def("__repr__", [](const Formula& f) { return "Formula(" + py::repr(py::str(render(f))).cast<std::string>() + ")"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__hash__", [](const Formula& f) { return f.hash(); });

  m.def("parse", [](const std::string& text, bool allow_reserved) {
    return parse(text, ParseOptions{.allow_reserved = allow_reserved});
  }, py::arg("text"), py::arg("allow_reserved") = false);
  m.def("render", &render);
  m.def("negate", &negate);
  m.def("fragment_leq", [](const std::string& a, const std::string& b) {
    return fragment_leq(fragment_from_name(a), fragment_from_name(b));
  });

  m.def("eval_world", [](const std::string& model, const std::string& world, const Formula& f) {
    return eval_pointed(model_from_json(parse_json(model)), world, f);
  });
  m.def("eval_team", [](const std::string& model, const std::vector<std::string>& team, const Formula& f) {
    const Model md = model_from_json(parse_json(model));
    return eval_team(md, md.frame().set_of(team), f);
  });
  m.def("model_valid", [](const std::string& model, const Formula& f) {
    return model_valid(model_from_json(parse_json(model)), f);
  });
  m.def("frame_valid", [](const std::string& frame, const Formula& f) {
    return frame_valid(frame_from_json(parse_json(frame)), f);
  });
  m.def("frame_class", [](const Formula& f, std::size_t max_points) {
    std::vector<std::string> out;
    for (const auto& fr : frame_class(f, FrameUniverse{max_points})) out.push_back(frame_to_json(fr).dump());
    return out;
  });
  m.def("audit", [](const std::string& property, const Formula& f, std::size_t max_points, std::size_t max_seed) {
    return audit_to_json(audit(property_from_name(property), f, FrameUniverse{max_points}, AuditOptions{max_seed})).dump();
  }, py::arg("property"), py::arg("formula"), py::arg("max_points") = 3, py::arg("max_seed") = 0);
  m.def("equiv", [](const Formula& f, const Formula& g, const std::string& mode, std::size_t max_points) {
    const EquivMode em = equiv_mode_from_name(mode);
    return equiv_to_json(f, g, em, oracle_equiv(f, g, FrameUniverse{max_points}, em)).dump();
  }, py::arg("first"), py::arg("second"), py::arg("mode"), py::arg("max_points") = 3);
  m.def("replay", [](const std::string& report) { return replay_json(parse_json(report)); });

  m.def("to_box_form", [](const Formula& f, bool disjunctive) {
    return to_box_form(f, disjunctive ? Polarity::disjunctive : Polarity::conjunctive);
  }, py::arg("formula"), py::arg("disjunctive") = false);
  m.def("to_closed_clauses", [](const Formula& f) { return clauses_out(to_closed_clauses(f)); });
  m.def("to_idis_normal_form", &to_idis_normal_form);
  m.def("idis_to_clause", [](const Formula& f) { return clauses_out(idis_to_clause(f)); });
  m.def("clause_to_idis", [](const std::vector<Formula>& parts) { return clause_to_idis(clause_in(parts)); });
  m.def("emdl_to_mdl", py::overload_cast<const Formula&>(&emdl_to_mdl));
  m.def("dep_to_idis", &dep_to_idis);

  m.def("generate", [](const std::string& fragment, std::size_t depth, std::size_t props, std::uint64_t seed,
                       std::size_t count, std::size_t max_dep_nodes) {
    return generate(GenConfig{fragment_from_name(fragment), depth, props, seed, count, max_dep_nodes});
  }, py::arg("fragment") = "ML", py::arg("depth") = 2, py::arg("props") = 2, py::arg("seed") = 0,
     py::arg("count") = 10, py::arg("max_dep_nodes") = 2);
}
