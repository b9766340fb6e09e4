#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "tmt/if_maps.hpp"

namespace tmt {

bool is_monocolored(int label) { return label >= 1 && label <= 4; }

bool carries_color(int label, int color) {
  if (is_monocolored(label)) return label == color;
  return color == 1 || color == label % 10;
}

std::string label_name(int label) { return std::to_string(label); }

namespace {

bool valid_label(int label) { return is_monocolored(label) || label == 12 || label == 13 || label == 14; }

struct DSU {
  std::vector<int> parent;
  explicit DSU(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Dart view of a map: half-edges 0..2E-1, then one dart per cilium.
struct Darts {
  int n = 0;
  int edges = 0;
  std::vector<int> sigma, vertex;
  std::vector<char> cilium;

  explicit Darts(const StrandedMap& m) : edges(m.num_edges()) {
    n = 2 * edges + m.num_cilia();
    sigma.assign(n, -1);
    vertex.assign(n, -1);
    cilium.assign(n, 0);
    int next_cilium = 2 * edges;
    for (int v = 0; v < m.num_vertices(); ++v) {
      const auto& rot = m.rotations[v];
      std::vector<int> ids;
      for (int h : rot) {
        int d = h == StrandedMap::kCilium ? next_cilium++ : h;
        if (h == StrandedMap::kCilium) cilium[d] = 1;
        ids.push_back(d);
      }
      for (std::size_t k = 0; k < ids.size(); ++k) {
        sigma[ids[k]] = ids[(k + 1) % ids.size()];
        vertex[ids[k]] = v;
      }
    }
  }

  // Cycles of sigma o alpha_S, where alpha_S swaps the half-edges of edges in
  // `in_submap` and fixes every other dart. Cycles through a cilium are
  // skipped when `skip_cilia` is set. Calls visit(first dart) per counted cycle.
  template <class Visit>
  void cycles(const std::vector<char>& in_submap, bool skip_cilia, Visit&& visit) const {
    std::vector<char> seen(n, 0);
    for (int start = 0; start < n; ++start) {
      if (seen[start]) continue;
      bool open = false;
      int d = start;
      do {
        seen[d] = 1;
        open |= cilium[d] != 0;
        int a = (d < 2 * edges && in_submap[d / 2]) ? (d ^ 1) : d;
        d = sigma[a];
      } while (d != start);
      if (!(open && skip_cilia)) visit(start);
    }
  }
};

std::vector<char> color_mask(const StrandedMap& m, int color) {
  std::vector<char> mask(m.num_edges());
  for (int k = 0; k < m.num_edges(); ++k) mask[k] = carries_color(m.labels[k], color);
  return mask;
}

// Map restricted to `keep` vertices and edges, renumbered in order.
StrandedMap restrict_map(const StrandedMap& m, const std::vector<char>& keep_vertex, const std::vector<char>& keep_edge) {
  std::vector<int> edge_map(m.num_edges(), -1);
  StrandedMap out;
  for (int k = 0; k < m.num_edges(); ++k)
    if (keep_edge[k]) {
      edge_map[k] = out.num_edges();
      out.labels.push_back(m.labels[k]);
    }
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (!keep_vertex[v]) continue;
    std::vector<int> rot;
    for (int h : m.rotations[v]) {
      if (h == StrandedMap::kCilium)
        rot.push_back(h);
      else if (keep_edge[h / 2])
        rot.push_back(2 * edge_map[h / 2] + (h & 1));
    }
    out.rotations.push_back(std::move(rot));
  }
  return out;
}

std::vector<StrandedMap> split_components(const StrandedMap& m) {
  DSU dsu(m.num_vertices());
  for (int k = 0; k < m.num_edges(); ++k) {
    auto e = m.ends(k);
    dsu.unite(e[0], e[1]);
  }
  std::vector<StrandedMap> parts;
  std::vector<char> done(m.num_vertices(), 0);
  for (int v = 0; v < m.num_vertices(); ++v) {
    int root = dsu.find(v);
    if (done[root]) continue;
    done[root] = 1;
    std::vector<char> keep_v(m.num_vertices()), keep_e(m.num_edges());
    for (int u = 0; u < m.num_vertices(); ++u) keep_v[u] = dsu.find(u) == root;
    for (int k = 0; k < m.num_edges(); ++k) keep_e[k] = keep_v[m.ends(k)[0]];
    parts.push_back(restrict_map(m, keep_v, keep_e));
  }
  return parts;
}

}  // namespace

int StrandedMap::num_cilia() const {
  int n = 0;
  for (const auto& rot : rotations) n += static_cast<int>(std::count(rot.begin(), rot.end(), kCilium));
  return n;
}

std::vector<int> StrandedMap::half_edge_vertex() const {
  std::vector<int> out(2 * labels.size(), -1);
  for (int v = 0; v < num_vertices(); ++v)
    for (int h : rotations[v])
      if (h != kCilium) out[h] = v;
  return out;
}

std::array<int, 2> StrandedMap::ends(int edge) const {
  std::array<int, 2> out{-1, -1};
  for (int v = 0; v < num_vertices(); ++v)
    for (int h : rotations[v])
      if (h == 2 * edge || h == 2 * edge + 1) out[h & 1] = v;
  return out;
}

void StrandedMap::check() const {
  std::vector<int> count(2 * labels.size(), 0);
  for (int label : labels)
    if (!valid_label(label)) throw std::invalid_argument("map: invalid edge label " + std::to_string(label));
  for (const auto& rot : rotations) {
    int cilia = 0;
    for (int h : rot) {
      if (h == kCilium) {
        ++cilia;
        continue;
      }
      if (h < 0 || h >= static_cast<int>(count.size())) throw std::invalid_argument("map: unknown half-edge");
      ++count[h];
    }
    if (cilia > 1) throw std::invalid_argument("map: more than one cilium on a vertex");
  }
  for (int c : count)
    if (c != 1) throw std::invalid_argument("map: every half-edge must appear exactly once");
}

bool StrandedMap::connected() const {
  if (rotations.empty()) return true;
  DSU dsu(num_vertices());
  auto where = half_edge_vertex();
  int parts = num_vertices();
  for (int k = 0; k < num_edges(); ++k) parts -= dsu.unite(where[2 * k], where[2 * k + 1]);
  return parts == 1;
}

int StrandedMap::faces(int color) const {
  Darts d(*this);
  int count = 0;
  d.cycles(color_mask(*this, color), true, [&](int) { ++count; });
  for (const auto& rot : rotations) count += rot.empty();
  return count;
}

int StrandedMap::total_faces() const {
  int total = 0;
  for (int c = 1; c <= 4; ++c) total += faces(c);
  return total;
}

int StrandedMap::omega() const {
  if (!connected()) throw std::invalid_argument("omega: disconnected map");
  int weight = 0;
  for (int label : labels) weight += is_monocolored(label) ? 3 : 2;
  return weight - total_faces();
}

StrandedMap StrandedMap::from_permutation(const std::vector<int>& sigma, const std::vector<int>& labels) {
  const int n = static_cast<int>(sigma.size());
  const int e = static_cast<int>(labels.size());
  if (n != 2 * e && n != 2 * e + 1) throw std::invalid_argument("from_permutation: dart count mismatch");
  StrandedMap m;
  m.labels = labels;
  std::vector<char> seen(n, 0);
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> rot;
    for (int d = start; !seen[d]; d = sigma[d]) {
      seen[d] = 1;
      rot.push_back(d < 2 * e ? d : kCilium);
    }
    m.rotations.push_back(std::move(rot));
  }
  return m;
}

StrandedMap StrandedMap::vertex(bool cilium) {
  StrandedMap m;
  m.rotations.push_back(cilium ? std::vector<int>{kCilium} : std::vector<int>{});
  return m;
}

int StrandedMap::add_edge(int label, int u, int pos_u, int v, int pos_v) {
  int k = num_edges();
  labels.push_back(label);
  auto& ru = rotations.at(u);
  ru.insert(ru.begin() + std::min<int>(pos_u, ru.size()), 2 * k);
  auto& rv = rotations.at(v);
  rv.insert(rv.begin() + std::min<int>(pos_v, rv.size()), 2 * k + 1);
  return k;
}

// ---------------------------------------------------------------------------
// Genus and components

std::vector<SubmapComponent> submap_components(const StrandedMap& m, const std::vector<int>& edges) {
  DSU dsu(m.num_vertices());
  auto where = m.half_edge_vertex();
  for (int k : edges) dsu.unite(where[2 * k], where[2 * k + 1]);
  std::vector<int> index(m.num_vertices(), -1);
  std::vector<SubmapComponent> out;
  for (int v = 0; v < m.num_vertices(); ++v) {
    int r = dsu.find(v);
    if (index[r] < 0) {
      index[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[index[r]].vertices.push_back(v);
  }
  for (int k : edges) out[index[dsu.find(where[2 * k])]].edges.push_back(k);
  return out;
}

int submap_genus(const StrandedMap& m, const std::vector<int>& edges, int vertex) {
  Darts d(m);
  std::vector<char> mask(m.num_edges(), 0);
  for (int k : edges) mask[k] = 1;
  DSU dsu(m.num_vertices());
  auto where = m.half_edge_vertex();
  for (int k : edges) dsu.unite(where[2 * k], where[2 * k + 1]);
  const int root = dsu.find(vertex);
  int v = 0, e = 0, f = 0;
  for (int u = 0; u < m.num_vertices(); ++u)
    if (dsu.find(u) == root) {
      ++v;
      f += m.rotations[u].empty();
    }
  for (int k : edges) e += dsu.find(where[2 * k]) == root;
  d.cycles(mask, false, [&](int start) { f += dsu.find(d.vertex[start]) == root; });
  int chi = v - e + f;
  if ((2 - chi) % 2 != 0 || chi > 2) throw std::logic_error("submap_genus: inconsistent Euler characteristic");
  return (2 - chi) / 2;
}

int genus(const StrandedMap& m) {
  if (m.labels.empty()) {
    if (m.num_vertices() != 1) throw std::invalid_argument("genus: disconnected map");
    return 0;
  }
  for (int label : m.labels)
    if (is_monocolored(label) || label != m.labels.front())
      throw std::invalid_argument("genus: edges must share a single bicolored type");
  if (!m.connected()) throw std::invalid_argument("genus: disconnected map");
  std::vector<int> all(m.num_edges());
  std::iota(all.begin(), all.end(), 0);
  return submap_genus(m, all, 0);
}

std::array<int, 3> component_counts(const StrandedMap& m) {
  std::array<int, 3> rho{};
  for (int label : m.labels)
    if (is_monocolored(label)) throw std::invalid_argument("component_counts: monocolored edge present");
  for (int j = 2; j <= 4; ++j) {
    std::vector<int> edges;
    for (int k = 0; k < m.num_edges(); ++k)
      if (m.labels[k] == 10 + j) edges.push_back(k);
    rho[j - 2] = static_cast<int>(submap_components(m, edges).size());
  }
  return rho;
}

// ---------------------------------------------------------------------------
// Edge deletion

bool is_cut_edge(const StrandedMap& m, int edge) {
  auto e = m.ends(edge);
  if (e[0] == e[1]) return false;
  std::vector<int> others;
  for (int k = 0; k < m.num_edges(); ++k)
    if (k != edge) others.push_back(k);
  DSU dsu(m.num_vertices());
  auto where = m.half_edge_vertex();
  for (int k : others) dsu.unite(where[2 * k], where[2 * k + 1]);
  return dsu.find(e[0]) != dsu.find(e[1]);
}

DeletionReport delete_edge(const StrandedMap& m, int edge) {
  if (edge < 0 || edge >= m.num_edges()) throw std::invalid_argument("delete_edge: no such edge");
  DeletionReport r;
  r.monocolored = is_monocolored(m.labels[edge]);
  r.cut_edge = is_cut_edge(m, edge);
  r.omega_before = m.omega();
  std::vector<char> keep_v(m.num_vertices(), 1), keep_e(m.num_edges(), 1);
  keep_e[edge] = 0;
  StrandedMap rest = restrict_map(m, keep_v, keep_e);
  r.parts = r.cut_edge ? split_components(rest) : std::vector<StrandedMap>{rest};
  for (const auto& p : r.parts) r.omega_after.push_back(p.omega());
  std::ostringstream os;
  if (r.cut_edge) {
    r.holds = r.omega_before == r.omega_after[0] + r.omega_after[1] + 4;
    os << "cut edge: " << r.omega_before << " == " << r.omega_after[0] << " + " << r.omega_after[1] << " + 4";
  } else if (r.monocolored) {
    r.holds = r.omega_before >= r.omega_after[0] + 2;
    os << "monocolored: " << r.omega_before << " >= " << r.omega_after[0] << " + 2";
  } else {
    r.holds = r.omega_before >= r.omega_after[0];
    os << "bicolored: " << r.omega_before << " >= " << r.omega_after[0];
  }
  r.relation = os.str();
  return r;
}

// ---------------------------------------------------------------------------
// Feynman graphs to maps

int quartic_label(const Bubble& b) {
  static const std::vector<Bubble> quartic = quartic_bubbles();
  static const int labels[] = {1, 2, 3, 4, 12, 13, 14};
  if (b.rank() != 4 || b.num_white() != 2) return 0;
  for (std::size_t k = 0; k < quartic.size(); ++k)
    if (b == quartic[k]) return labels[k];
  const std::string form = canonical_form(b);
  for (std::size_t k = 0; k < quartic.size(); ++k)
    if (form == canonical_form(quartic[k])) return labels[k];
  return 0;
}

StrandedMap from_feynman(const FeynmanGraph& g) {
  g.check();
  if (g.free_pairs() > 1) throw std::invalid_argument("from_feynman: at most one free pair");
  const int e = static_cast<int>(g.bubbles.size());
  std::vector<int> labels;
  std::vector<int> white_dart, black_dart;  // global vertex -> dart
  for (int k = 0; k < e; ++k) {
    const Bubble& b = g.bubbles[k];
    int label = quartic_label(b);
    if (label == 0) throw std::invalid_argument("from_feynman: non-quartic bubble");
    labels.push_back(label);
    // A color shared inside each pair.
    int shared = 1;
    if (is_monocolored(label)) {
      shared = label == 1 ? 2 : 1;
    } else {
      while (shared == 1 || shared == label % 10) ++shared;
    }
    std::vector<int> local_black(2);
    for (int w = 0; w < 2; ++w) {
      white_dart.push_back(2 * k + w);
      local_black[b.black_of(w, shared)] = 2 * k + w;
    }
    black_dart.insert(black_dart.end(), local_black.begin(), local_black.end());
  }
  const int darts = 2 * e + g.free_pairs();
  std::vector<int> sigma(darts, -1);
  for (int w = 0; w < static_cast<int>(g.zero_edges.size()); ++w) {
    int b = g.zero_edges[w];
    sigma[white_dart[w]] = b >= 0 ? black_dart[b] : 2 * e;
  }
  if (g.free_pairs() == 1) sigma[2 * e] = black_dart[g.free_blacks().front()];
  StrandedMap m = StrandedMap::from_permutation(sigma, labels);

  if (m.connected()) {
    // Enhanced quartic weights: melons N^3, necklaces N^4.
    int omega_sum = 0;
    for (int label : labels) omega_sum += is_monocolored(label) ? 3 : 4;
    // Closed graphs: e(g) = -Omega. Two-point graphs: normalized exponent = -Omega.
    int exponent = g.total_faces() - 3 * g.num_zero_edges() + omega_sum - 3 * g.free_pairs();
    if (exponent != -m.omega())
      throw std::logic_error("from_feynman: exponent and map degree disagree");
  }
  return m;
}

}  // namespace tmt
