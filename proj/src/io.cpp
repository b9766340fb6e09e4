#include "tmt/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tmt {

namespace {

const char* kPalette[] = {"black", "red", "blue", "darkgreen", "orange", "purple", "brown", "cyan"};

const char* color_name(int c) { return kPalette[c % 8]; }

std::string monomial_key(const CouplingSeries& s, const Monomial& m) { return s.monomial_name(m); }

}  // namespace

json to_json(const Bubble& b) {
  json edges = json::array();
  for (const auto& e : b.edges()) edges.push_back({e.white, e.black, e.color});
  return {{"D", b.rank()}, {"num_white", b.num_white()}, {"num_black", b.num_black()}, {"edges", edges}};
}

Bubble bubble_from_json(const json& j) {
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw std::invalid_argument("bubble edge must be [white, black, color]");
    edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
  }
  const int rank = j.contains("D") ? j.at("D").get<int>() : j.value("rank", 4);
  Bubble b(rank, j.at("num_white").get<int>(), j.at("num_black").get<int>(), std::move(edges));
  auto report = validate_bubble(b, true);
  if (!report.valid) throw std::invalid_argument("invalid bubble: " + report.summary());
  return b;
}

json to_json(const FeynmanGraph& g) {
  json bubbles = json::array();
  for (const auto& b : g.bubbles) bubbles.push_back(to_json(b));
  return {{"bubbles", bubbles}, {"tags", g.tags}, {"zero_edges", g.zero_edges}};
}

FeynmanGraph feynman_from_json(const json& j) {
  FeynmanGraph g;
  for (const auto& b : j.at("bubbles")) g.bubbles.push_back(bubble_from_json(b));
  g.tags = j.value("tags", std::vector<int>(g.bubbles.size(), 0));
  g.zero_edges = j.at("zero_edges").get<std::vector<int>>();
  g.check();
  return g;
}

json to_json(const StrandedMap& m) {
  json vertices = json::array();
  for (const auto& rot : m.rotations) {
    json v = {{"rotation", json::array()}, {"cilium", nullptr}};
    for (std::size_t slot = 0; slot < rot.size(); ++slot) {
      if (rot[slot] == StrandedMap::kCilium)
        v["cilium"] = slot;
      else
        v["rotation"].push_back(rot[slot]);
    }
    vertices.push_back(v);
  }
  json edges = json::array();
  for (int e = 0; e < m.num_edges(); ++e) {
    auto ends = m.ends(e);
    edges.push_back({{"label", m.labels[e]}, {"name", label_name(m.labels[e])}, {"ends", {ends[0], ends[1]}}});
  }
  return {{"vertices", vertices}, {"edges", edges}};
}

StrandedMap map_from_json(const json& j) {
  StrandedMap m;
  for (const auto& e : j.at("edges")) m.labels.push_back(e.at("label").get<int>());
  for (const auto& v : j.at("vertices")) {
    auto rot = v.at("rotation").get<std::vector<int>>();
    if (v.contains("cilium") && !v.at("cilium").is_null()) {
      auto slot = v.at("cilium").get<std::size_t>();
      if (slot > rot.size()) throw std::invalid_argument("cilium slot out of range");
      rot.insert(rot.begin() + static_cast<std::ptrdiff_t>(slot), StrandedMap::kCilium);
    }
    m.rotations.push_back(std::move(rot));
  }
  m.check();
  // Declared endpoints must match the rotations.
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto& x = j.at("edges")[e];
    if (!x.contains("ends")) continue;
    auto want = x.at("ends").get<std::array<int, 2>>();
    if (want != m.ends(e)) throw std::invalid_argument("edge " + std::to_string(e) + ": ends disagree with rotations");
  }
  return m;
}

json to_json(const NecklaceTreeSpec& spec) {
  json ins = json::array();
  for (const auto& i : spec.insertions)
    ins.push_back({{"size", i.size}, {"target_white", i.target_white}, {"color", i.color}});
  return {{"insertions", ins}, {"type", spec.type()}, {"omega", spec.omega()}};
}

NecklaceTreeSpec tree_from_json(const json& j) {
  NecklaceTreeSpec spec;
  if (j.is_array()) {
    // Shorthand: a list of sizes chained on color 1.
    return chain_tree(j.get<std::vector<int>>(), 1);
  }
  for (const auto& i : j.at("insertions"))
    spec.insertions.push_back({i.at("size").get<int>(), i.value("target_white", 0), i.value("color", 1)});
  realize_tree_of_necklaces(spec);  // validates
  return spec;
}

json to_json(const ModelSpec& model) {
  json entries = json::array();
  for (const auto& e : model.entries) {
    json x = {{"coupling", e.coupling}, {"omega", e.omega}};
    if (e.tree)
      x["tree"] = to_json(*e.tree);
    else
      x["bubble"] = to_json(e.bubble);
    entries.push_back(x);
  }
  return {{"rank", model.rank}, {"entries", entries}};
}

ModelSpec model_from_json(const json& j) {
  if (j.contains("preset")) return ModelSpec::preset(j.at("preset").get<std::string>());
  ModelSpec model;
  model.rank = j.value("rank", 4);
  for (const auto& x : j.at("entries")) {
    ModelEntry e;
    e.coupling = x.at("coupling").get<std::string>();
    if (x.contains("tree")) {
      e.tree = tree_from_json(x.at("tree"));
      e.bubble = realize_tree_of_necklaces(*e.tree);
      e.omega = x.value("omega", e.tree->omega());
    } else {
      e.bubble = bubble_from_json(x.at("bubble"));
      e.omega = x.value("omega", model.alpha());
    }
    model.entries.push_back(std::move(e));
  }
  model.check();
  return model;
}

ModelSpec load_model(const std::string& name_or_path) {
  if (name_or_path == "standard" || name_or_path == "full" || name_or_path == "restricted")
    return ModelSpec::preset(name_or_path);
  return model_from_json(read_json_file(name_or_path));
}

json to_json(const LaurentPolynomial& p) {
  json terms = json::object();
  for (const auto& [power, c] : p.terms()) terms[std::to_string(power)] = rational_to_string(c);
  return {{"text", p.to_string()}, {"terms", terms}};
}

json to_json(const CouplingSeries& s) {
  json out = json::object();
  for (const auto& [m, p] : s.coefficients) {
    json terms = json::object();
    for (const auto& [power, c] : p.terms()) terms[std::to_string(power)] = rational_to_string(c);
    out[monomial_key(s, m)] = terms;
  }
  return out;
}

json to_json(const DiskSeries& s) {
  json out = {{"mode", s.mode == DiskSeries::Mode::Formal ? "formal" : "numeric"}, {"symbols", s.symbols}};
  if (s.mode == DiskSeries::Mode::Formal) {
    out["order"] = s.order;
    json cp = json::array();
    for (std::size_t p = 0; p < s.formal.size(); ++p) {
      json terms = json::array();
      for (const auto& [m, c] : s.formal[p])
        if (c != 0) terms.push_back({{"powers", m}, {"value", rational_to_string(c)}});
      cp.push_back({{"p", p}, {"terms", terms}});
    }
    out["C"] = cp;
  } else {
    out["C"] = s.values;
    out["converged"] = s.converged;
    out["iterations"] = s.iterations;
    out["residual"] = s.residual;
    out["message"] = s.message;
  }
  return out;
}

json to_json(const GammaFit& fit) {
  return {{"gamma", fit.gamma},   {"mu", fit.mu},       {"residual", fit.residual},
          {"n_min", fit.n_min},   {"n_max", fit.n_max}, {"monotone_tail", fit.monotone_tail}};
}

json to_json(const CriticalEstimate& c) {
  return {{"radius", c.radius}, {"uncertainty", c.uncertainty}, {"alternating", c.alternating}, {"terms", c.terms}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string to_dot(const Bubble& b, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n  node [shape=circle, label=\"\"];\n";
  for (int w = 0; w < b.num_white(); ++w) os << "  w" << w << " [style=solid, xlabel=\"w" << w << "\"];\n";
  for (int v = 0; v < b.num_black(); ++v) os << "  b" << v << " [style=filled, fillcolor=black, xlabel=\"b" << v << "\"];\n";
  for (const auto& e : b.edges())
    os << "  w" << e.white << " -- b" << e.black << " [color=" << color_name(e.color) << ", label=\"" << e.color << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const FeynmanGraph& g, const std::string& name) {
  Bubble all = g.combined();
  std::ostringstream os;
  os << "graph " << name << " {\n  node [shape=circle, label=\"\"];\n";
  int w0 = 0, b0 = 0;
  for (std::size_t k = 0; k < g.bubbles.size(); ++k) {
    const auto& bub = g.bubbles[k];
    os << "  subgraph cluster_" << k << " {\n    label=\"" << (g.tags.size() > k && g.tags[k] == kObservable ? "observable" : "B" + std::to_string(k)) << "\";\n";
    for (int w = 0; w < bub.num_white(); ++w) os << "    w" << w0 + w << ";\n";
    for (int v = 0; v < bub.num_black(); ++v) os << "    b" << b0 + v << " [style=filled, fillcolor=black];\n";
    os << "  }\n";
    w0 += bub.num_white(), b0 += bub.num_black();
  }
  for (const auto& e : all.edges())
    os << "  w" << e.white << " -- b" << e.black << " [color=" << color_name(e.color) << ", label=\"" << e.color << "\"];\n";
  for (std::size_t w = 0; w < g.zero_edges.size(); ++w)
    if (g.zero_edges[w] >= 0) os << "  w" << w << " -- b" << g.zero_edges[w] << " [style=dashed, label=\"0\"];\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const StrandedMap& m, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n  node [shape=circle];\n";
  for (int v = 0; v < m.num_vertices(); ++v) {
    bool ciliated = false;
    for (int h : m.rotations[v]) ciliated |= h == StrandedMap::kCilium;
    os << "  v" << v << (ciliated ? " [shape=doublecircle]" : "") << ";\n";
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    auto [u, v] = m.ends(e);
    int l = m.labels[e];
    if (is_monocolored(l))
      os << "  v" << u << " -- v" << v << " [color=" << color_name(l) << ", label=\"" << l << "\"];\n";
    else
      os << "  v" << u << " -- v" << v << " [color=\"" << color_name(l / 10) << ":invis:" << color_name(l % 10)
         << "\", label=\"" << l << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace tmt
