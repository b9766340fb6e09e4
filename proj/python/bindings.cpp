#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tmt/io.hpp"
#include "tmt/parallel.hpp"

namespace py = pybind11;
using namespace tmt;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

json from_py(const py::object& o) { return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

py::object fraction(const Rational& q) { return py::module_::import("fractions").attr("Fraction")(rational_to_string(q)); }

py::dict laurent(const LaurentPolynomial& p) {
  py::dict d;
  for (const auto& [power, c] : p.terms()) d[py::int_(power)] = fraction(c);
  return d;
}

py::dict series_dict(const CouplingSeries& s) {
  py::dict d;
  for (const auto& [m, p] : s.coefficients) d[py::str(s.monomial_name(m))] = laurent(p);
  return d;
}

QuarticModel quartic_model(const std::string& name) {
  if (name == "restricted") return QuarticModel::Restricted;
  if (name == "full") return QuarticModel::Full;
  throw std::invalid_argument("map model must be 'restricted' or 'full'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tensor-model toolkit core";

  py::class_<Bubble>(m, "Bubble")
      .def(py::init([](int rank, int nw, int nb, const std::vector<std::tuple<int, int, int>>& edges) {
             std::vector<Edge> es;
             for (auto [w, b, c] : edges) es.push_back({w, b, c});
             return Bubble(rank, nw, nb, es);
           }),
           py::arg("rank"), py::arg("num_white"), py::arg("num_black"), py::arg("edges"))
      .def_static("dipole", &Bubble::dipole, py::arg("rank") = 4)
      .def_property_readonly("rank", &Bubble::rank)
      .def_property_readonly("num_white", &Bubble::num_white)
      .def_property_readonly("num_black", &Bubble::num_black)
      .def_property_readonly("edges",
                             [](const Bubble& b) {
                               std::vector<std::tuple<int, int, int>> out;
                               for (const auto& e : b.edges()) out.emplace_back(e.white, e.black, e.color);
                               return out;
                             })
      .def("is_valid", &Bubble::is_valid)
      .def("validity_report", [](const Bubble& b) { return validate_bubble(b).summary(); })
      .def("canonical_form", [](const Bubble& b) { return canonical_form(b); })
      .def("bicolored_faces", [](const Bubble& b, int c1, int c2) { return bicolored_faces(b, c1, c2); })
      .def("total_bicolored_faces", [](const Bubble& b) { return total_bicolored_faces(b); })
      .def("to_json", [](const Bubble& b) { return to_py(to_json(b)); })
      .def("to_dot", [](const Bubble& b) { return to_dot(b); })
      .def("__eq__", &Bubble::operator==)
      .def("__repr__", [](const Bubble& b) {
        return "<Bubble " + std::to_string(b.num_white()) + "+" + std::to_string(b.num_black()) + " vertices>";
      });

  m.def("build_necklace", &build_necklace, py::arg("partner"), py::arg("size"));
  m.def("quartic_melon", &quartic_melon, py::arg("color"));
  m.def("quartic_bubbles", &quartic_bubbles);
  m.def("tree_of_necklaces", [](const std::vector<int>& type, int color) { return realize_tree_of_necklaces(chain_tree(type, color)); },
        py::arg("type"), py::arg("color") = 1);
  m.def("tree_of_necklaces_omega", &tree_of_necklaces_omega);
  m.def("catalog_bubbles", &catalog_bubbles, py::arg("max_vertices"));
  m.def("bubble_from_json", [](const py::object& o) { return bubble_from_json(from_py(o)); });

  py::class_<ModelSpec>(m, "Model")
      .def_static("preset", &ModelSpec::preset)
      .def_static("from_json", [](const py::object& o) { return model_from_json(from_py(o)); })
      .def_property_readonly("symbols", &ModelSpec::symbols)
      .def_property_readonly("rank", [](const ModelSpec& s) { return s.rank; })
      .def("to_json", [](const ModelSpec& s) { return to_py(to_json(s)); });

  py::class_<FeynmanGraph>(m, "FeynmanGraph")
      .def_property_readonly("bubbles", [](const FeynmanGraph& g) { return g.bubbles; })
      .def_property_readonly("tags", [](const FeynmanGraph& g) { return g.tags; })
      .def_property_readonly("zero_edges", [](const FeynmanGraph& g) { return g.zero_edges; })
      .def("faces", &FeynmanGraph::faces)
      .def("total_faces", &FeynmanGraph::total_faces)
      .def("connected", &FeynmanGraph::connected)
      .def("closed", &FeynmanGraph::closed)
      .def("to_json", [](const FeynmanGraph& g) { return to_py(to_json(g)); })
      .def("to_dot", [](const FeynmanGraph& g) { return to_dot(g); });

  m.def("enumerate_closures", &enumerate_closures, py::arg("bubbles"), py::arg("free_pairs") = 0,
        py::arg("connected_only") = false, py::arg("tags") = std::vector<int>{});
  m.def("degree_exponent", &degree_exponent, py::arg("graph"), py::arg("model"), py::arg("observable_omega") = 0);
  m.def("normalized_exponent", &normalized_exponent);
  m.def("q_map", py::overload_cast<const FeynmanGraph&, const ModelSpec&>(&q_map));
  m.def("gaussian_moment", [](const std::vector<Bubble>& bs) { return laurent(gaussian_moment(bs)); });
  m.def("gaussian_moment_direct", [](const std::vector<Bubble>& bs, int n) { return fraction(gaussian_moment_direct(bs, n)); });
  m.def("expectation_series",
        [](const ModelSpec& model, const Bubble& obs, int omega, int order) {
          py::gil_scoped_release release;
          auto s = expectation_series(model, obs, omega, order);
          py::gil_scoped_acquire acquire;
          return series_dict(s);
        },
        py::arg("model"), py::arg("observable"), py::arg("observable_omega"), py::arg("order"));
  m.def("free_energy_series",
        [](const ModelSpec& model, int order) {
          py::gil_scoped_release release;
          auto s = free_energy_series(model, order);
          py::gil_scoped_acquire acquire;
          return series_dict(s);
        },
        py::arg("model"), py::arg("order"));

  py::class_<StrandedMap>(m, "StrandedMap")
      .def(py::init([](const std::vector<int>& labels, const std::vector<std::vector<int>>& rotations) {
             StrandedMap s{labels, rotations};
             s.check();
             return s;
           }),
           py::arg("labels"), py::arg("rotations"))
      .def_readonly("labels", &StrandedMap::labels)
      .def_readonly("rotations", &StrandedMap::rotations)
      .def_property_readonly("num_vertices", &StrandedMap::num_vertices)
      .def_property_readonly("num_edges", &StrandedMap::num_edges)
      .def_property_readonly("num_cilia", &StrandedMap::num_cilia)
      .def("faces", &StrandedMap::faces)
      .def("omega", &StrandedMap::omega)
      .def("to_json", [](const StrandedMap& s) { return to_py(to_json(s)); })
      .def("to_dot", [](const StrandedMap& s) { return to_dot(s); });

  m.def("from_feynman", &from_feynman);
  m.def("enumerate_maps",
        [](const std::string& model, int max_edges, int cilia) { return enumerate_maps(quartic_model(model), max_edges, cilia); },
        py::arg("model"), py::arg("max_edges"), py::arg("cilia") = 0);
  m.def("classify_lo", [](const StrandedMap& s, const std::string& model) {
    auto c = classify_lo(s, quartic_model(model));
    py::dict d;
    d["leading_order"] = c.leading_order;
    d["omega"] = c.omega;
    d["agrees_with_omega"] = c.agrees_with_omega;
    d["non_cut_monocolored"] = c.non_cut_monocolored;
    d["cycle"] = c.cycle;
    d["non_planar"] = c.non_planar.size();
    d["description"] = c.describe();
    return d;
  });
  m.def("delete_edge", [](const StrandedMap& s, int edge) {
    auto r = delete_edge(s, edge);
    py::dict d;
    d["cut_edge"] = r.cut_edge;
    d["monocolored"] = r.monocolored;
    d["omega_before"] = r.omega_before;
    d["omega_after"] = r.omega_after;
    d["holds"] = r.holds;
    d["relation"] = r.relation;
    return d;
  });

  m.def("solve_formal", [](const py::object& potential, int order, int p_max) {
    auto s = solve_formal(Potential::from_json(from_py(potential)), order, p_max);
    return to_py(to_json(s));
  }, py::arg("potential"), py::arg("order"), py::arg("p_max") = 5);
  m.def("solve_series", [](const py::object& potential, int order, int p_max) {
    auto s = solve_formal_univariate(Potential::from_json(from_py(potential)), order, p_max);
    std::vector<std::vector<double>> out;
    for (const auto& row : s) out.emplace_back(row.begin(), row.end());
    return out;
  }, py::arg("potential"), py::arg("order"), py::arg("p_max") = 1);
  m.def("solve_numeric", [](const py::object& potential, const std::map<std::string, double>& couplings, int p_max,
                            double tolerance, int max_iterations) {
    return to_py(to_json(solve_numeric(Potential::from_json(from_py(potential)), couplings, p_max, tolerance, max_iterations)));
  }, py::arg("potential"), py::arg("couplings"), py::arg("p_max"), py::arg("tolerance") = 1e-12,
        py::arg("max_iterations") = 20000);
  m.def("gamma_estimate", [](const std::vector<double>& c, double window_start) {
    return to_py(to_json(gamma_estimate(std::vector<long double>(c.begin(), c.end()), window_start)));
  }, py::arg("coefficients"), py::arg("window_start") = 0.5);
  m.def("critical_point", [](const std::vector<double>& c) {
    return to_py(to_json(critical_point(std::vector<long double>(c.begin(), c.end()))));
  });
  m.def("tune_transition", [](int order, double lo, double hi, int grid_points, int scan_order) {
    TransitionTuning t;
    {
      py::gil_scoped_release release;
      t = tune_transition(order, lo, hi, grid_points, scan_order);
    }
    py::dict d;
    d["kappa"] = t.kappa;
    d["w_c"] = t.w_c;
    d["phi_c"] = t.phi_c;
    d["dphi_c"] = t.dphi_c;
    d["s_c"] = t.s_c;
    py::list grid;
    for (const auto& p : t.grid) {
      py::dict row;
      row["kappa"] = p.kappa;
      row["indicator"] = p.indicator;
      row["fit"] = to_py(to_json(p.fit));
      grid.append(row);
    }
    d["grid"] = grid;
    return d;
  }, py::arg("order") = 300, py::arg("kappa_lo") = 1.0, py::arg("kappa_hi") = 5.0, py::arg("grid_points") = 5,
        py::arg("scan_order") = 200);
  m.def("transition_potential", [](double kappa) { return to_py(transition_family(kappa).to_json()); });
  m.def("worker_count", &worker_count);
}
