#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "persres/serialize.hpp"

namespace py = pybind11;
using namespace persres;

namespace {

Field field_of(const std::string& name) { return Field::parse_name(name); }

mpq_class rational_of(const std::string& s) { return Field::rationals().parse(s); }

Grade grade_of(const std::vector<std::string>& coords) {
  Vec v;
  for (const auto& c : coords) v.push_back(rational_of(c));
  return Grade(std::move(v));
}

std::string dump_json(const json& j) { return j.dump(2); }

py::dict bracket_to_dict(const DistanceBracket& b) {
  py::dict d;
  d["level"] = level_name(b.level);
  d["field"] = b.field.name();
  d["lower"] = b.lower.get_str();
  d["upper"] = b.upper ? py::cast(b.upper->get_str()) : py::cast(nullptr);
  py::list ev;
  for (const auto& e : b.evidence) {
    py::dict entry;
    entry["epsilon"] = e.epsilon.get_str();
    entry["kind"] = e.kind;
    entry["detail"] = e.detail;
    ev.append(entry);
  }
  d["evidence"] = ev;
  return d;
}

py::object search_to_py(const SearchResult& r) {
  py::dict d;
  switch (r.status) {
    case SearchStatus::found: d["status"] = "found"; break;
    case SearchStatus::none: d["status"] = "none"; break;
    case SearchStatus::budget_exhausted: d["status"] = "budget-exhausted"; break;
  }
  d["candidates_tried"] = r.candidates_tried;
  if (r.certificate) d["certificate"] = dump_json(certificate_to_json(*r.certificate));
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Exact multi-parameter persistence: minimal free resolutions, graded Betti "
      "numbers and interleaving decision procedures.";

  py::class_<FreeChainComplex>(m, "ChainComplex")
      .def_static(
          "from_json",
          [](const std::string& text, const std::string& field) {
            return complex_from_json(json::parse(text), field_of(field));
          },
          py::arg("text"), py::arg("field") = "rational")
      .def("to_json", [](const FreeChainComplex& x) { return dump_json(complex_to_json(x)); })
      .def("validate", &FreeChainComplex::validate)
      .def("min_degree", &FreeChainComplex::min_degree)
      .def("terms",
           [](const FreeChainComplex& x) {
             py::dict d;
             for (const auto& [deg, mod] : x.terms) {
               py::list grades;
               for (const auto& g : mod.gens) grades.append(grade_to_display(g));
               d[py::cast(deg)] = grades;
             }
             return d;
           })
      .def("shift",
           [](const FreeChainComplex& x, const std::string& eps) { return x.shifted(rational_of(eps)); })
      .def(
          "smoothing_is_nullhomotopic",
          [](const FreeChainComplex& x, const std::string& eps) {
            auto h = is_nullhomotopic(smoothing_chain_map(x, rational_of(eps)));
            return h.has_value();
          },
          py::arg("epsilon"), "Decide s_eps ~ 0 exactly.")
      .def("__repr__", [](const FreeChainComplex& x) {
        return "<ChainComplex with " + std::to_string(x.terms.size()) + " nonzero terms>";
      });

  py::class_<Presentation>(m, "Presentation")
      .def_static(
          "from_json",
          [](const std::string& text, const std::string& field) {
            return presentation_from_json(json::parse(text), field_of(field));
          },
          py::arg("text"), py::arg("field") = "rational")
      .def_static(
          "load",
          [](const std::string& path, const std::string& field) {
            return presentation_from_json(load_json_file(path), field_of(field));
          },
          py::arg("path"), py::arg("field") = "rational")
      .def("to_json", [](const Presentation& p) { return dump_json(presentation_to_json(p)); })
      .def_property_readonly("n", &Presentation::ambient_dim)
      .def_property_readonly("num_generators", [](const Presentation& p) { return p.generators().rank(); })
      .def_property_readonly("num_relations", [](const Presentation& p) { return p.relations().rank(); })
      .def_property_readonly("field", [](const Presentation& p) { return p.field().name(); })
      .def(
          "dimension_at",
          [](const Presentation& p, const std::vector<std::string>& grade) {
            return evaluate(p, grade_of(grade)).dim();
          },
          py::arg("grade"), "Dimension of the module at a grade, e.g. ['1/2', '0'].")
      .def(
          "structure_rank",
          [](const Presentation& p, const std::vector<std::string>& s, const std::vector<std::string>& t) {
            return rank(structure_map(p, grade_of(s), grade_of(t)));
          },
          py::arg("s"), py::arg("t"))
      .def(
          "betti",
          [](const Presentation& p, std::size_t i) {
            py::dict d;
            for (const auto& [g, c] : betti(p, i)) d[py::cast(grade_to_display(g))] = c;
            return d;
          },
          py::arg("i"), "Graded Betti numbers as {'(0,0)': count, ...}.")
      .def("minimize", [](const Presentation& p) { return minimize(p); })
      .def("resolution", [](const Presentation& p) { return minimal_free_resolution(p); })
      .def("shift", [](const Presentation& p, const std::string& eps) { return p.shifted(rational_of(eps)); })
      .def("to_field", [](const Presentation& p, const std::string& f) { return p.to_field(field_of(f)); })
      .def("__eq__", [](const Presentation& a, const Presentation& b) { return a == b; })
      .def("__repr__", [](const Presentation& p) {
        return "<Presentation over " + p.field().name() + ": " + std::to_string(p.generators().rank()) +
               " generators, " + std::to_string(p.relations().rank()) + " relations>";
      });

  py::class_<Bifiltration>(m, "Bifiltration")
      .def_static("from_json",
                  [](const std::string& text) { return bifiltration_from_json(json::parse(text)); })
      .def_static("load", [](const std::string& path) { return bifiltration_from_json(load_json_file(path)); })
      .def("to_json", [](const Bifiltration& k) { return dump_json(bifiltration_to_json(k)); })
      .def_property_readonly("num_simplices", [](const Bifiltration& k) { return k.simplices.size(); })
      .def(
          "homology",
          [](const Bifiltration& k, std::size_t i, const std::string& field) {
            return homology_presentation(k, i, field_of(field));
          },
          py::arg("i"), py::arg("field") = "rational")
      .def(
          "perturb",
          [](const Bifiltration& k, const std::string& delta, std::uint64_t seed) {
            return perturb(k, rational_of(delta), seed);
          },
          py::arg("delta"), py::arg("seed") = 0)
      .def("__repr__", [](const Bifiltration& k) {
        return "<Bifiltration with " + std::to_string(k.simplices.size()) + " simplices>";
      });

  m.def(
      "search_interleaving",
      [](const Presentation& a, const Presentation& b, const std::string& eps, const std::string& level,
         const std::string& field, unsigned long long budget) {
        mpq_class e = rational_of(eps);
        Field f = field_of(field);
        Level lv = parse_level(level);
        SearchResult r;
        if (lv == Level::module) {
          r = search_module_interleaving(a, b, e, f, budget);
        } else if (lv == Level::homotopy) {
          FreeChainComplex px = minimal_free_resolution(a.to_field(f));
          FreeChainComplex py_ = minimal_free_resolution(b.to_field(f));
          r = search_homotopy_interleaving(px, py_, e, f, budget);
        } else {
          r = derived_interleaving_search(a, b, e, f, budget);
        }
        return search_to_py(r);
      },
      py::arg("m"), py::arg("n"), py::arg("epsilon"), py::arg("level") = "module",
      py::arg("field") = "gf:2", py::arg("budget") = 65536,
      "Exact eps-interleaving search; a 'none' is conclusive over the search field.");

  m.def(
      "estimate_distance",
      [](const Presentation& a, const Presentation& b, const std::string& level, const std::string& field,
         unsigned long long budget) {
        return bracket_to_dict(estimate_distance(a, b, parse_level(level), field_of(field), budget));
      },
      py::arg("m"), py::arg("n"), py::arg("level") = "module", py::arg("field") = "gf:2",
      py::arg("budget") = 65536, "Verified interleaving-distance bracket with evidence.");

  m.def(
      "rank_obstruction",
      [](const Presentation& a, const Presentation& b, const std::string& eps) {
        return rank_obstruction(a, b, rational_of(eps));
      },
      py::arg("m"), py::arg("n"), py::arg("epsilon"),
      "True when an eps-interleaving is provably impossible.");

  m.def(
      "isometry_check",
      [](const Presentation& a, const Presentation& b, const std::vector<std::string>& eps_list,
         const std::string& field, unsigned long long budget) {
        std::vector<mpq_class> eps;
        for (const auto& s : eps_list) eps.push_back(rational_of(s));
        return dump_json(isometry_report_to_json(isometry_check(a, b, eps, field_of(field), budget)));
      },
      py::arg("m"), py::arg("n"), py::arg("epsilons"), py::arg("field") = "gf:2",
      py::arg("budget") = 65536);

  m.def(
      "verify_certificate",
      [](const std::string& cert_text, const Presentation& a, const Presentation& b) {
        return reverify_certificate(json::parse(cert_text), a, b);
      },
      py::arg("certificate"), py::arg("m"), py::arg("n"));
}
