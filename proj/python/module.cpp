#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "binmat/analysis.hpp"
#include "binmat/connectivity.hpp"
#include "binmat/constructions.hpp"
#include "binmat/error.hpp"
#include "binmat/io.hpp"
#include "binmat/matroid.hpp"

namespace py = pybind11;
using namespace binmat;

namespace {

std::vector<std::vector<std::string>> named_sets(const BinaryMatroid& m, const std::vector<ElementSet>& sets) {
  std::vector<std::vector<std::string>> out;
  out.reserve(sets.size());
  for (ElementSet s : sets) out.push_back(m.names(s));
  return out;
}

BinaryMatroid from_rows(const std::vector<std::string>& rows, std::size_t cols, std::vector<std::string> labels) {
  std::vector<std::string_view> views(rows.begin(), rows.end());
  return BinaryMatroid(BitMatrix::from_strings(views, cols), std::move(labels));
}

SearchBudget budget_of(const std::string& strategy, std::uint64_t node_limit) {
  SearchBudget b;
  b.node_limit = node_limit;
  if (strategy == "exhaustive") {
    b.strategy = SearchStrategy::Exhaustive;
  } else if (strategy != "bnb") {
    throw InputError("unknown strategy '" + strategy + "'");
  }
  return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Binary matroid toolkit";

  auto base = py::register_exception<Error>(m, "BinmatError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<UnsupportedCase>(m, "UnsupportedCase", base.ptr());
  py::register_exception<SearchExhausted>(m, "SearchExhausted", base.ptr());

  py::class_<BinaryMatroid>(m, "Matroid")
      .def(py::init(&from_rows), py::arg("rows"), py::arg("cols"), py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("labels", &BinaryMatroid::labels)
      .def_property_readonly("size", &BinaryMatroid::size)
      .def_property_readonly("rows", [](const BinaryMatroid& x) { return x.matrix().to_strings(); })
      .def("__len__", &BinaryMatroid::size)
      .def("rank", [](const BinaryMatroid& x, const std::vector<std::string>& s) { return x.rank(x.resolve(s)); })
      .def("full_rank", [](const BinaryMatroid& x) { return x.rank(); })
      .def("corank", [](const BinaryMatroid& x, const std::vector<std::string>& s) { return corank(x, x.resolve(s)); })
      .def("closure",
           [](const BinaryMatroid& x, const std::vector<std::string>& s) { return x.names(closure(x, x.resolve(s))); })
      .def("coclosure",
           [](const BinaryMatroid& x, const std::vector<std::string>& s) { return x.names(coclosure(x, x.resolve(s))); })
      .def("full_closure", [](const BinaryMatroid& x,
                              const std::vector<std::string>& s) { return x.names(full_closure(x, x.resolve(s))); })
      .def("connectivity",
           [](const BinaryMatroid& x, const std::vector<std::string>& s) { return lambda(x, x.resolve(s)); })
      .def("dual", [](const BinaryMatroid& x) { return dual(x); })
      .def("delete", [](const BinaryMatroid& x, const std::vector<std::string>& s) { return deletion(x, x.resolve(s)); })
      .def("contract",
           [](const BinaryMatroid& x, const std::vector<std::string>& s) { return contraction(x, x.resolve(s)); })
      .def("restrict",
           [](const BinaryMatroid& x, const std::vector<std::string>& s) { return restriction(x, x.resolve(s)); })
      .def("simplify", [](const BinaryMatroid& x) { return simplify(x).matroid; })
      .def("si_contract", [](const BinaryMatroid& x, const std::string& e) { return si_contract(x, x.index_of(e)).matroid; })
      .def("triangles", [](const BinaryMatroid& x) { return named_sets(x, triangles(x).triangles); })
      .def("triads", [](const BinaryMatroid& x) { return named_sets(x, triads(x).triangles); })
      .def("cocircuits", [](const BinaryMatroid& x) { return named_sets(x, cocircuits(x)); })
      .def("circuits", [](const BinaryMatroid& x, std::size_t max_size) { return named_sets(x, circuits(x, max_size)); },
           py::arg("max_size"))
      .def("fans",
           [](const BinaryMatroid& x) {
             std::vector<ElementSet> out;
             for (const Fan& f : find_4fans(x)) out.push_back(f.elements());
             return named_sets(x, out);
           })
      .def("__eq__", &same_matroid)
      .def("__repr__", [](const BinaryMatroid& x) {
        return "<Matroid size=" + std::to_string(x.size()) + " rank=" + std::to_string(x.rank()) + ">";
      });

  m.def("catalog", [](const std::string& name, std::size_t n) { return catalog(CatalogId::parse(name, n)); },
        py::arg("name"), py::arg("n") = 0);
  m.def("catalog_names", [] {
    std::vector<std::string> out;
    for (const CatalogId& id : catalog_entries()) out.push_back(id.to_string());
    return out;
  });
  m.def("graphic_from_edges", [](const std::string& text) { return graphic(parse_edge_list(text)); });
  m.def("parse", [](const std::string& text) { return parse_matroid(text); });
  m.def("render", &render_matroid);
  m.def("is_isomorphic", &is_isomorphic);

  m.def(
      "is_internally_4_connected",
      [](const BinaryMatroid& x, std::uint64_t node_limit) {
        const I4cResult r = is_internally_4_connected(x, budget_of("bnb", node_limit));
        Json out{{"value", r.value}};
        out["witness"] = r.witness ? to_json(x, *r.witness) : Json(nullptr);
        return out.dump();
      },
      py::arg("matroid"), py::arg("node_limit") = SearchBudget{}.node_limit);
  m.def(
      "is_n_connected",
      [](const BinaryMatroid& x, std::size_t n, std::uint64_t node_limit) {
        return is_n_connected(x, n, budget_of("bnb", node_limit));
      },
      py::arg("matroid"), py::arg("n"), py::arg("node_limit") = SearchBudget{}.node_limit);
  m.def(
      "find_separation",
      [](const BinaryMatroid& x, std::size_t bound, std::size_t min_x, std::size_t min_y, const std::string& strategy,
         std::uint64_t node_limit) {
        const SearchResult r = find_separation(x, bound, min_x, min_y, budget_of(strategy, node_limit));
        const char* status = r.status == SearchStatus::Found ? "found"
                             : r.status == SearchStatus::None ? "none"
                                                              : "indeterminate";
        Json out{{"status", status}, {"nodes", r.nodes}};
        out["witness"] = r.witness ? to_json(x, *r.witness) : Json(nullptr);
        return out.dump();
      },
      py::arg("matroid"), py::arg("lambda_bound"), py::arg("min_x"), py::arg("min_y"), py::arg("strategy") = "bnb",
      py::arg("node_limit") = SearchBudget{}.node_limit);
  m.def("triangle_census", [](const BinaryMatroid& x) { return to_json(x, triangle_census(x)).dump(); });
  m.def(
      "audit",
      [](const std::string& name, const BinaryMatroid& x, unsigned threads) {
        AnalysisOptions a;
        a.threads = threads;
        AuditReport r;
        if (name == "odd-cocircuit") {
          r = odd_cocircuit_audit(x, a);
        } else if (name == "contraction-3conn") {
          r = contraction_3conn_audit(x, a);
        } else if (name == "four-cocircuit") {
          r = four_cocircuit_audit(x, a);
        } else if (name == "triangle-union-cocircuit") {
          r = triangle_union_cocircuit_audit(x, a);
        } else if (name == "spike-cocircuit") {
          r = spike_cocircuit_audit(x, a);
        } else if (name == "small-classification") {
          r = small_classification_check(x, a);
        } else {
          throw InputError("unknown audit '" + name + "'");
        }
        Json out = to_json(x, r);
        out["verdict"] = to_string(r.verdict());
        return out.dump();
      },
      py::arg("name"), py::arg("matroid"), py::arg("threads") = 1);
  m.def(
      "theorem",
      [](const BinaryMatroid& x, unsigned threads) {
        TheoremOptions opts;
        opts.analysis.threads = threads;
        TheoremReport r;
        {
          py::gil_scoped_release release;
          r = theorem_verifier(x, opts);
        }
        return to_json(x, r).dump();
      },
      py::arg("matroid"), py::arg("threads") = 1);
}
