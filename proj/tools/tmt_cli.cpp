#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "tmt/io.hpp"
#include "tmt/parallel.hpp"

using namespace tmt;

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit statuses.
constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// JSON config files: top-level keys are global options, nested objects are
// subcommand sections. Command-line flags take precedence.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json j;
    for (const CLI::Option* opt : app->get_options({})) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      std::string name = opt->get_lnames().front();
      if (opt->count() > 0) {
        auto r = opt->results();
        j[name] = r.size() == 1 ? json(r.front()) : json(r);
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    for (const CLI::App* sub : app->get_subcommands({}))
      if (sub->parsed()) j[sub->get_name()] = json::parse(to_config(sub, default_also, false, ""));
    return j.dump(2);
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      j = json::parse(input);
    } catch (const json::parse_error& e) {
      throw CLI::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConfigError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

  static void collect(const json& j, std::vector<std::string> parents, std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        // Marks the subcommand as used.
        items.push_back({next, "++", {}});
        collect(value, next, items);
        items.push_back({next, "--", {}});
        continue;
      }
      CLI::ConfigItem item{parents, key, {}};
      if (value.is_array())
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      else if (value.is_boolean())
        item.inputs.push_back(value.get<bool>() ? "true" : "false");
      else
        item.inputs.push_back(scalar(value));
      items.push_back(std::move(item));
    }
  }
};

struct Globals {
  std::string format = "json";
  std::string output;
  std::string manifest = "tmt_manifest.json";
  int threads = 0;
  std::uint64_t seed = 1;
};

class Emitter {
 public:
  explicit Emitter(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

// "12:3" -> necklace of partner color 2 and size 3.
Bubble parse_necklace(const std::string& text, int& size) {
  auto colon = text.find(':');
  if (colon == std::string::npos || colon != 2 || text[0] != '1' || text[1] < '2' || text[1] > '4')
    throw UsageError("a necklace is written 12:3, 13:2 or 14:1");
  try {
    size = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("bad necklace size in " + text);
  }
  if (size < 1) throw UsageError("necklace size must be positive");
  return build_necklace(text[1] - '0', size);
}

std::vector<int> parse_type(const std::string& text) {
  std::vector<int> type;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      type.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("bad tree type " + text);
    }
    if (type.back() < 1) throw UsageError("tree sizes must be positive");
  }
  if (type.empty()) throw UsageError("empty tree type");
  return type;
}

json bubble_record(const std::string& name, const Bubble& b, int omega) {
  return {{"name", name}, {"omega", omega}, {"vertices", b.num_vertices()}, {"canonical", canonical_form(b)},
          {"bicolored_faces", total_bicolored_faces(b)}, {"bubble", to_json(b)}};
}

// ---------------------------------------------------------------------------
// catalog

struct CatalogArgs {
  std::vector<std::string> necklaces, trees;
  bool melons = false, quartic = false;
  int max_vertices = 0;
  int tree_color = 1;
};

int cmd_catalog(const CatalogArgs& a, const Globals& g, json& report) {
  json rows = json::array();
  for (const auto& text : a.necklaces) {
    int size = 0;
    Bubble b = parse_necklace(text, size);
    rows.push_back(bubble_record("necklace " + text, b, tree_of_necklaces_omega({size})));
  }
  if (a.melons)
    for (int c = 1; c <= 4; ++c) rows.push_back(bubble_record("melon " + std::to_string(c), quartic_melon(c), 3));
  if (a.quartic) {
    const char* names[] = {"melon 1", "melon 2", "melon 3", "melon 4", "necklace 12", "necklace 13", "necklace 14"};
    auto bubbles = quartic_bubbles();
    for (std::size_t k = 0; k < bubbles.size(); ++k) rows.push_back(bubble_record(names[k], bubbles[k], k < 4 ? 3 : 4));
  }
  for (const auto& text : a.trees) {
    auto spec = chain_tree(parse_type(text), a.tree_color);
    auto rec = bubble_record("tree " + text, realize_tree_of_necklaces(spec), spec.omega());
    rec["tree"] = to_json(spec);
    rows.push_back(rec);
  }
  if (a.max_vertices > 0)
    for (const auto& b : catalog_bubbles(a.max_vertices)) rows.push_back(bubble_record("catalog", b, -1));
  if (rows.empty()) throw UsageError("catalog: nothing requested (use --necklace, --melons, --quartic, --tree or --max-vertices)");

  Emitter em(g.output);
  if (g.format == "csv") {
    em.out() << "name,omega,vertices,bicolored_faces,canonical\n";
    for (const auto& r : rows)
      em.out() << csv_escape(r["name"]) << ',' << r["omega"] << ',' << r["vertices"] << ',' << r["bicolored_faces"]
               << ',' << csv_escape(r["canonical"]) << '\n';
  } else {
    em.out() << json{{"bubbles", rows}}.dump(2) << '\n';
  }
  report["count"] = rows.size();
  return kPass;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string model = "restricted";
  int edges = 3;
  int cilia = 0;
  bool labeled = false;
  bool oracle = false;
  int max_vertices = 6;
  int closures = 0;
  int qmap = 0;
  int qmap_vertices = 12;
};

struct Campaign {
  std::string name;
  long checked = 0;
  long failures = 0;
  json counterexample;
  json to_json() const {
    json j = {{"campaign", name}, {"checked", checked}, {"failures", failures}, {"pass", failures == 0}};
    if (!counterexample.is_null()) j["counterexample"] = counterexample;
    return j;
  }
  void fail(json example) {
    if (failures++ == 0) counterexample = std::move(example);
  }
};

QuarticModel map_model(const std::string& name) {
  if (name == "restricted") return QuarticModel::Restricted;
  if (name == "full") return QuarticModel::Full;
  throw UsageError("map campaigns need --model restricted or full, got " + name);
}

Campaign census_campaign(const VerifyArgs& a, std::vector<json>& rows) {
  QuarticModel model = map_model(a.model);
  if (a.cilia < 0 || a.cilia > 1) throw UsageError("--cilia must be 0 or 1");
  if (a.edges < 0 || a.edges > (a.labeled ? 3 : 5)) throw UsageError("--edges out of budget (<= 5 deduplicated, <= 3 labeled)");
  Campaign c{"census " + a.model + " E<=" + std::to_string(a.edges) + " cilia=" + std::to_string(a.cilia)};
  const int bound = a.cilia ? 0 : -4;
  int index = 0;
  for (int e = 0; e <= a.edges; ++e)
    for_each_map(model, e, a.cilia, !a.labeled, [&](const StrandedMap& m) {
      ++c.checked;
      int omega = m.omega();
      auto cert = classify_lo(m, model);
      bool bound_ok = omega >= bound;
      bool tree_ok = m.num_vertices() != m.num_edges() + 1 || omega == bound;
      bool deletion_ok = true;
      std::string broken;
      for (int k = 0; k < m.num_edges(); ++k) {
        auto d = delete_edge(m, k);
        if (!d.holds) deletion_ok = false, broken = d.relation;
      }
      bool classifier_ok = cert.agrees_with_omega && (cert.leading_order == cert.witnesses_empty());
      rows.push_back({index++, m.num_edges(), m.num_vertices(), a.cilia, omega, cert.leading_order, classifier_ok,
                      deletion_ok});
      if (!(bound_ok && tree_ok && deletion_ok && classifier_ok)) {
        json ex = {{"map", to_json(m)}, {"omega", omega}, {"bound_ok", bound_ok}, {"tree_ok", tree_ok},
                   {"deletion_ok", deletion_ok}, {"classifier_ok", classifier_ok}, {"certificate", cert.describe()}};
        if (!broken.empty()) ex["deletion_relation"] = broken;
        c.fail(ex);
      }
      return true;
    });
  return c;
}

Campaign oracle_campaign(const VerifyArgs& a) {
  if (a.max_vertices < 2 || a.max_vertices > 8) throw UsageError("--max-vertices must be in 2..8");
  Campaign c{"wick vs direct, multisets up to " + std::to_string(a.max_vertices) + " vertices"};
  auto catalog = catalog_bubbles(a.max_vertices);
  catalog.insert(catalog.begin(), Bubble::dipole());
  std::vector<std::vector<Bubble>> multisets;
  std::vector<Bubble> current;
  auto grow = [&](auto&& self, std::size_t from, int vertices) -> void {
    if (!current.empty()) multisets.push_back(current);
    for (std::size_t k = from; k < catalog.size(); ++k) {
      if (vertices + catalog[k].num_vertices() > a.max_vertices) continue;
      current.push_back(catalog[k]);
      self(self, k, vertices + catalog[k].num_vertices());
      current.pop_back();
    }
  };
  grow(grow, 0, 0);
  std::vector<json> failures(multisets.size());
  parallel_for(multisets.size(), [&](std::size_t i) {
    auto wick = gaussian_moment(multisets[i]);
    for (int n : {2, 3}) {
      Rational direct = gaussian_moment_direct(multisets[i], n);
      Rational value = wick.evaluate(n);
      if (value != direct && failures[i].is_null()) {
        json bubbles = json::array();
        for (const auto& b : multisets[i]) bubbles.push_back(to_json(b));
        failures[i] = {{"bubbles", bubbles}, {"N", n}, {"wick", rational_to_string(value)},
                       {"direct", rational_to_string(direct)}};
      }
    }
  });
  for (auto& f : failures) {
    ++c.checked;
    if (!f.is_null()) c.fail(f);
  }
  return c;
}

Campaign closure_campaign(const VerifyArgs& a) {
  if (a.closures < 1 || a.closures > 3) throw UsageError("--closures must be in 1..3");
  Campaign c{"e(g) = -Omega(IF map), up to " + std::to_string(a.closures) + " quartic bubbles"};
  ModelSpec full = ModelSpec::full_quartic();
  auto bubbles = quartic_bubbles();
  std::vector<int> pick;
  auto run = [&](auto&& self, int from) -> void {
    if (!pick.empty()) {
      std::vector<Bubble> bs;
      std::vector<int> tags;
      for (int k : pick) bs.push_back(bubbles[k]), tags.push_back(k);
      for (int pairs = 0; pairs <= 1; ++pairs)
        for (const auto& gph : enumerate_closures(bs, pairs, true, tags)) {
          ++c.checked;
          int e = pairs ? normalized_exponent(gph, full) : degree_exponent(gph, full);
          int omega = from_feynman(gph).omega();
          if (e != -omega) c.fail({{"graph", to_json(gph)}, {"exponent", e}, {"omega", omega}});
        }
    }
    if (static_cast<int>(pick.size()) == a.closures) return;
    for (int k = from; k < static_cast<int>(bubbles.size()); ++k) {
      pick.push_back(k);
      self(self, k);
      pick.pop_back();
    }
  };
  run(run, 0);
  return c;
}

Campaign qmap_campaign(const VerifyArgs& a, std::uint64_t seed) {
  if (a.qmap_vertices < 2) throw UsageError("--qmap-vertices must be at least 2");
  Campaign c{"q-map degree preservation, " + std::to_string(a.qmap) + " random graphs"};
  std::mt19937_64 rng(seed);
  ModelSpec restricted = ModelSpec::restricted_quartic();
  for (int k = 0; k < a.qmap; ++k) {
    auto sample = random_tree_graph(rng, a.qmap_vertices);
    ++c.checked;
    int before = degree_exponent(sample.graph, sample.model);
    int after = degree_exponent(q_map(sample.graph, sample.model), restricted);
    if (before != after)
      c.fail({{"graph", to_json(sample.graph)}, {"model", to_json(sample.model)}, {"before", before}, {"after", after}});
  }
  return c;
}

int cmd_verify(const VerifyArgs& a, bool census_requested, const Globals& g, json& report) {
  std::vector<Campaign> campaigns;
  std::vector<json> rows;
  bool any = a.oracle || a.closures > 0 || a.qmap > 0;
  if (census_requested || !any) campaigns.push_back(census_campaign(a, rows));
  if (a.oracle) campaigns.push_back(oracle_campaign(a));
  if (a.closures > 0) campaigns.push_back(closure_campaign(a));
  if (a.qmap > 0) campaigns.push_back(qmap_campaign(a, g.seed));

  bool pass = true;
  json summary = json::array();
  for (const auto& c : campaigns) {
    pass &= c.failures == 0;
    summary.push_back(c.to_json());
    std::cerr << (c.failures == 0 ? "PASS " : "FAIL ") << c.name << " (" << c.checked << " checked, " << c.failures
              << " failures)\n";
    if (c.failures) std::cerr << "first counterexample: " << c.counterexample.dump() << '\n';
  }
  Emitter em(g.output);
  if (g.format == "csv") {
    em.out() << "index,edges,vertices,cilia,omega,leading_order,classifier_ok,deletion_ok\n";
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.size(); ++k) em.out() << (k ? "," : "") << r[k];
      em.out() << '\n';
    }
  } else {
    em.out() << json{{"pass", pass}, {"campaigns", summary}}.dump(2) << '\n';
  }
  report["campaigns"] = summary;
  return pass ? kPass : kFail;
}

// ---------------------------------------------------------------------------
// expand

struct ExpandArgs {
  std::string model = "restricted";
  std::string observable = "vacuum";
  int observable_omega = -1;
  int order = 2;
  int max_whites = 11;
  bool leading = false;
};

int cmd_expand(const ExpandArgs& a, const Globals& g, json& report) {
  ModelSpec model = load_model(a.model);
  if (a.order < 0) throw UsageError("--order must be non-negative");
  CouplingSeries series;
  if (a.observable == "vacuum") {
    series = free_energy_series(model, a.order, a.max_whites);
  } else {
    Bubble obs;
    int omega = a.observable_omega;
    const std::string& o = a.observable;
    if (o == "dipole") {
      obs = Bubble::dipole(model.rank);
      if (omega < 0) omega = model.rank - 1;
    } else if (o.rfind("necklace:", 0) == 0) {
      int size = 0;
      obs = parse_necklace(o.substr(9), size);
      if (omega < 0) omega = size + 2;
    } else if (o.rfind("tree:", 0) == 0) {
      auto spec = chain_tree(parse_type(o.substr(5)), 1);
      obs = realize_tree_of_necklaces(spec);
      if (omega < 0) omega = spec.omega();
    } else {
      obs = bubble_from_json(read_json_file(o));
      if (omega < 0) throw UsageError("--observable-omega is required for a bubble file");
    }
    series = expectation_series(model, obs, omega, a.order, a.max_whites);
  }
  Emitter em(g.output);
  if (g.format == "csv") {
    em.out() << "monomial,power_of_N,coefficient\n";
    for (const auto& [m, p] : series.coefficients)
      for (const auto& [power, c] : p.terms()) {
        if (a.leading && power != 0) continue;
        em.out() << csv_escape(series.monomial_name(m)) << ',' << power << ',' << rational_to_string(c) << '\n';
      }
  } else {
    em.out() << to_json(series).dump(2) << '\n';
  }
  report["monomials"] = series.coefficients.size();
  return kPass;
}

// ---------------------------------------------------------------------------
// sd

struct SdArgs {
  std::string potential;
  std::string scan;
  bool formal = false, numeric = false, gamma = false, critical = false;
  int order = -1;
  int p_max = 5;
  std::vector<std::string> couplings;
  double tolerance = 1e-12;
  int max_iterations = 20000;
};

Potential load_potential(const std::string& path) {
  if (path.empty()) throw UsageError("sd: --potential is required");
  return Potential::from_json(read_json_file(path));
}

int cmd_sd(const SdArgs& a, const Globals& g, json& report) {
  Emitter em(g.output);
  if (!a.scan.empty()) {
    json cfg = read_json_file(a.scan);
    const int order = cfg.value("order", 300);
    const int scan_order = cfg.value("scan_order", 200);
    auto t = tune_transition(order, cfg.value("kappa_lo", 1.0), cfg.value("kappa_hi", 5.0), cfg.value("grid_points", 9),
                             scan_order);
    // Fit the series at the tuned point itself.
    auto tuned = gamma_estimate(solve_formal_univariate(transition_family(t.kappa), order, 1)[1]);
    json out = {{"kappa", t.kappa}, {"w_c", t.w_c}, {"phi_c", t.phi_c}, {"dphi_c", t.dphi_c}, {"s_c", t.s_c},
                {"tuned_fit", to_json(tuned)}};
    json grid = json::array();
    for (const auto& p : t.grid) grid.push_back({{"kappa", p.kappa}, {"indicator", p.indicator}, {"fit", to_json(p.fit)}});
    out["grid"] = grid;
    if (g.format == "csv") {
      em.out() << "kappa,indicator,gamma,mu,residual,tuned\n";
      for (const auto& p : t.grid)
        em.out() << p.kappa << ',' << p.indicator << ',' << p.fit.gamma << ',' << p.fit.mu << ',' << p.fit.residual << ",0\n";
      em.out() << t.kappa << ",0," << tuned.gamma << ',' << tuned.mu << ',' << tuned.residual << ",1\n";
    } else {
      em.out() << out.dump(2) << '\n';
    }
    std::cerr << "tuned kappa " << t.kappa << ", |g_c| " << t.s_c << ", gamma " << tuned.gamma << '\n';
    report["gamma"] = tuned.gamma;
    return kPass;
  }

  Potential v = load_potential(a.potential);
  if (a.numeric) {
    std::map<std::string, double> values;
    for (const auto& c : a.couplings) {
      auto eq = c.find('=');
      if (eq == std::string::npos) throw UsageError("--coupling expects name=value");
      try {
        values[c.substr(0, eq)] = std::stod(c.substr(eq + 1));
      } catch (const std::exception&) {
        throw UsageError("bad coupling value in " + c);
      }
    }
    auto s = solve_numeric(v, values, a.p_max, a.tolerance, a.max_iterations);
    if (g.format == "csv") {
      em.out() << "p,C_p\n";
      em.out().precision(17);
      for (std::size_t p = 0; p < s.values.size(); ++p) em.out() << p << ',' << s.values[p] << '\n';
    } else {
      em.out() << to_json(s).dump(2) << '\n';
    }
    report["converged"] = s.converged;
    if (!s.converged) {
      std::cerr << "non-convergence: " << s.message << '\n';
      return kFail;
    }
    return kPass;
  }

  if (a.gamma || a.critical) {
    if (v.symbols().size() != 1) throw UsageError("--gamma and --critical need a single-coupling potential");
    const int order = a.order < 0 ? 300 : a.order;
    if (order < 50) throw UsageError("--order must be at least 50 for series analysis");
    auto c1 = solve_formal_univariate(v, order, 1)[1];
    json out = {{"order", order}, {"coupling", v.symbols().front()}};
    if (a.gamma) out["fit"] = to_json(gamma_estimate(c1));
    if (a.critical) out["critical"] = to_json(critical_point(c1));
    if (g.format == "csv") {
      em.out() << "n,c_n\n";
      em.out().precision(17);
      for (std::size_t n = 0; n < c1.size(); ++n) em.out() << n << ',' << static_cast<double>(c1[n]) << '\n';
    } else {
      em.out() << out.dump(2) << '\n';
    }
    if (a.gamma) std::cerr << "gamma " << out["fit"]["gamma"] << '\n';
    report["analysis"] = out;
    return kPass;
  }

  const int order = a.order < 0 ? 6 : a.order;
  auto s = solve_formal(v, order, a.p_max);
  if (g.format == "csv") {
    em.out() << "p,monomial,coefficient\n";
    for (std::size_t p = 0; p < s.formal.size(); ++p)
      for (const auto& [m, c] : s.formal[p]) {
        if (c == 0) continue;
        CouplingSeries names{s.symbols, {}};
        em.out() << p << ',' << csv_escape(names.monomial_name(m)) << ',' << rational_to_string(c) << '\n';
      }
  } else {
    em.out() << to_json(s).dump(2) << '\n';
  }
  return kPass;
}

// ---------------------------------------------------------------------------
// export-dot

struct DotArgs {
  std::string bubble, graph, map, necklace, tree;
  int melon = 0;
};

int cmd_export_dot(const DotArgs& a, const Globals& g, json&) {
  std::string dot;
  int chosen = !a.bubble.empty() + !a.graph.empty() + !a.map.empty() + !a.necklace.empty() + !a.tree.empty() + (a.melon > 0);
  if (chosen != 1) throw UsageError("export-dot: give exactly one of --bubble, --graph, --map, --necklace, --tree, --melon");
  if (!a.bubble.empty()) dot = to_dot(bubble_from_json(read_json_file(a.bubble)));
  if (!a.graph.empty()) dot = to_dot(feynman_from_json(read_json_file(a.graph)));
  if (!a.map.empty()) dot = to_dot(map_from_json(read_json_file(a.map)));
  if (!a.necklace.empty()) {
    int size = 0;
    dot = to_dot(parse_necklace(a.necklace, size));
  }
  if (!a.tree.empty()) dot = to_dot(realize_tree_of_necklaces(chain_tree(parse_type(a.tree), 1)));
  if (a.melon > 0) {
    if (a.melon > 4) throw UsageError("--melon must be a color in 1..4");
    dot = to_dot(quartic_melon(a.melon));
  }
  Emitter em(g.output);
  em.out() << dot;
  return kPass;
}

void write_manifest(const CLI::App& app, const Globals& g, const std::string& command, const json& report, int status) {
  if (g.manifest.empty()) return;
  JsonConfig cfg;
  json m = {{"tool", "tmt"},
            {"version", kVersion},
            {"command", command},
            {"config", json::parse(cfg.to_config(&app, true, false, ""))},
            {"threads", worker_count()},
            {"exit_status", status},
            {"report", report}};
  std::ofstream out(g.manifest);
  if (!out) {
    std::cerr << "warning: cannot write manifest " << g.manifest << '\n';
    return;
  }
  out << m.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor-model toolkit: bubbles, Feynman expansions, intermediate-field maps and disk equations"};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config; flags override file values");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("-o,--output", g.output, "Output file (default stdout)");
  app.add_option("--manifest", g.manifest, "Where to write the run manifest")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (overrides TMT_THREADS)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Seed for randomized checks")->capture_default_str();

  CatalogArgs ca;
  auto* catalog = app.add_subcommand("catalog", "List bubbles with omega and canonical labels")->configurable();
  catalog->add_option("--necklace", ca.necklaces, "Necklace, e.g. 12:3");
  catalog->add_flag("--melons", ca.melons, "The four quartic melons");
  catalog->add_flag("--quartic", ca.quartic, "All seven quartic bubbles");
  catalog->add_option("--tree", ca.trees, "Chain tree of necklaces, e.g. 2,2");
  catalog->add_option("--tree-color", ca.tree_color, "Insertion color for --tree")->check(CLI::Range(1, 4));
  catalog->add_option("--max-vertices", ca.max_vertices, "Whole catalog up to this size")->check(CLI::Range(2, 12));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run invariant campaigns; exit 1 on a counterexample")->configurable();
  verify->add_option("--model", va.model, "restricted, full, standard or a model file")->capture_default_str();
  auto* edges_opt = verify->add_option("--edges", va.edges, "Map census edge budget")->capture_default_str();
  verify->add_option("--cilia", va.cilia, "0 for vacuum maps, 1 for one cilium")->capture_default_str();
  verify->add_flag("--labeled", va.labeled, "Census over labeled maps instead of isomorphism classes");
  verify->add_flag("--oracle", va.oracle, "Wick contraction against direct index sums at N = 2, 3");
  verify->add_option("--max-vertices", va.max_vertices, "Vertex budget for --oracle")->capture_default_str();
  verify->add_option("--closures", va.closures, "Check e = -Omega on closures of up to this many quartic bubbles");
  verify->add_option("--qmap", va.qmap, "Check q-map degree preservation on this many random graphs");
  verify->add_option("--qmap-vertices", va.qmap_vertices, "Vertex budget for --qmap")->capture_default_str();

  ExpandArgs ea;
  auto* expand = app.add_subcommand("expand", "Perturbative series of an expectation or of the free energy")->configurable();
  expand->add_option("--model", ea.model, "Preset or model file")->capture_default_str();
  expand->add_option("--observable", ea.observable, "vacuum, dipole, necklace:12:p, tree:2,2 or a bubble file")
      ->capture_default_str();
  expand->add_option("--observable-omega", ea.observable_omega, "Override the observable's omega");
  expand->add_option("--order", ea.order, "Total coupling order")->capture_default_str();
  expand->add_option("--max-whites", ea.max_whites, "Closure budget")->capture_default_str();
  expand->add_flag("--leading", ea.leading, "CSV: keep only N^0 terms");

  SdArgs sa;
  auto* sd = app.add_subcommand("sd", "Disk equation: formal series, numeric solve, gamma fits and scans")->configurable();
  sd->add_option("--potential", sa.potential, "Potential JSON file");
  sd->add_flag("--formal", sa.formal, "Exact series (default mode)");
  sd->add_flag("--numeric", sa.numeric, "Numeric fixed point");
  sd->add_flag("--gamma", sa.gamma, "Fit the entropy exponent of C_1");
  sd->add_flag("--critical", sa.critical, "Radius of convergence of C_1");
  sd->add_option("--scan", sa.scan, "Transition scan file");
  sd->add_option("--order", sa.order, "Series order");
  sd->add_option("--p-max", sa.p_max, "Largest p reported")->capture_default_str()->check(CLI::PositiveNumber);
  sd->add_option("--coupling", sa.couplings, "name=value for --numeric");
  sd->add_option("--tolerance", sa.tolerance, "Residual tolerance")->capture_default_str();
  sd->add_option("--max-iterations", sa.max_iterations, "Iteration cap")->capture_default_str();

  DotArgs da;
  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering")->configurable();
  dot->add_option("--bubble", da.bubble, "Bubble JSON file");
  dot->add_option("--graph", da.graph, "Feynman graph JSON file");
  dot->add_option("--map", da.map, "Intermediate-field map JSON file");
  dot->add_option("--necklace", da.necklace, "Necklace, e.g. 12:3");
  dot->add_option("--tree", da.tree, "Chain tree of necklaces, e.g. 2,2");
  dot->add_option("--melon", da.melon, "Quartic melon color");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (g.threads > 0) setenv("TMT_THREADS", std::to_string(g.threads).c_str(), 1);
  const std::string command = app.get_subcommands().front()->get_name();
  json report;
  int status = kPass;
  try {
    if (command == "catalog") status = cmd_catalog(ca, g, report);
    if (command == "verify") status = cmd_verify(va, edges_opt->count() > 0, g, report);
    if (command == "expand") status = cmd_expand(ea, g, report);
    if (command == "sd") status = cmd_sd(sa, g, report);
    if (command == "export-dot") status = cmd_export_dot(da, g, report);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    status = kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    status = kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    status = kFail;
  }
  write_manifest(app, g, command, report, status);
  return status;
}
