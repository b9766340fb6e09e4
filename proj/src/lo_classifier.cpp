#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "tmt/if_maps.hpp"

namespace tmt {

namespace {

// Incremental forest that reports the first cycle closed by an added edge.
class ForestCycleFinder {
 public:
  explicit ForestCycleFinder(int nodes) : parent_(nodes), adjacency_(nodes) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  // Returns false when the edge closes a cycle; the cycle is then stored.
  bool add(int a, int b, int edge) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent_[ra] = rb;
      adjacency_[a].push_back({b, edge});
      adjacency_[b].push_back({a, edge});
      return true;
    }
    if (cycle_.empty()) cycle_ = path(a, b), cycle_.push_back(edge);
    return false;
  }

  const std::vector<int>& cycle() const { return cycle_; }

 private:
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  std::vector<int> path(int from, int to) const {
    std::vector<std::pair<int, int>> back(adjacency_.size(), {-1, -1});
    std::queue<int> q;
    q.push(from);
    back[from] = {from, -1};
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      for (auto [y, e] : adjacency_[x])
        if (back[y].first < 0) {
          back[y] = {x, e};
          q.push(y);
        }
    }
    std::vector<int> edges;
    for (int x = to; x != from; x = back[x].first) edges.push_back(back[x].second);
    return edges;
  }

  std::vector<int> parent_;
  std::vector<std::vector<std::pair<int, int>>> adjacency_;
  std::vector<int> cycle_;
};

}  // namespace

std::vector<int> model_labels(QuarticModel model) {
  if (model == QuarticModel::Restricted) return {1, 2, 3, 4, 12};
  return {1, 2, 3, 4, 12, 13, 14};
}

std::string LOCertificate::describe() const {
  std::ostringstream os;
  os << (leading_order ? "LO" : "not LO") << " (omega " << omega << ", leading " << leading_omega << ")";
  if (!non_cut_monocolored.empty()) {
    os << "; monocolored edges on a cycle:";
    for (int e : non_cut_monocolored) os << ' ' << e;
  }
  for (const auto& w : non_planar) {
    os << "; genus " << w.genus << " component of type " << (w.type ? std::to_string(w.type) : "1*") << " edges";
    for (int e : w.edges) os << ' ' << e;
  }
  if (!cycle.empty()) {
    os << "; cycle:";
    for (int e : cycle) os << ' ' << e;
  }
  return os.str();
}

LOCertificate classify_lo(const StrandedMap& m, QuarticModel model) {
  m.check();
  if (!m.connected()) throw std::invalid_argument("classify_lo: disconnected map");
  if (m.num_cilia() > 1) throw std::invalid_argument("classify_lo: unsupported cilium count");
  for (int label : m.labels)
    if (model == QuarticModel::Restricted && (label == 13 || label == 14))
      throw std::invalid_argument("classify_lo: label " + label_name(label) + " is not in the restricted model");

  LOCertificate cert;
  cert.omega = m.omega();
  cert.leading_omega = m.num_cilia() == 1 ? 0 : -4;

  std::vector<int> mono, bicolored;
  for (int k = 0; k < m.num_edges(); ++k) (is_monocolored(m.labels[k]) ? mono : bicolored).push_back(k);
  for (int k : mono)
    if (!is_cut_edge(m, k)) cert.non_cut_monocolored.push_back(k);

  // Planarity of each single-type bicolored component.
  std::vector<std::vector<SubmapComponent>> by_type(3);
  for (int j = 2; j <= 4; ++j) {
    std::vector<int> edges;
    for (int k : bicolored)
      if (m.labels[k] == 10 + j) edges.push_back(k);
    by_type[j - 2] = submap_components(m, edges);
    for (const auto& comp : by_type[j - 2]) {
      if (comp.edges.empty()) continue;
      int g = submap_genus(m, edges, comp.vertices.front());
      if (g > 0) cert.non_planar.push_back({10 + j, comp.vertices, comp.edges, g});
    }
  }

  auto where = m.half_edge_vertex();
  if (model == QuarticModel::Restricted) {
    // G_M: one node per component of M_12, one edge per monocolored edge.
    std::vector<int> node(m.num_vertices());
    const auto& comps = by_type[0];
    for (std::size_t c = 0; c < comps.size(); ++c)
      for (int v : comps[c].vertices) node[v] = static_cast<int>(c);
    ForestCycleFinder forest(static_cast<int>(comps.size()));
    for (int k : mono) forest.add(node[where[2 * k]], node[where[2 * k + 1]], k);
    cert.cycle = forest.cycle();
  } else {
    // Mixed-type bicolored components must be planar as well.
    for (const auto& comp : submap_components(m, bicolored)) {
      if (comp.edges.empty()) continue;
      bool mixed = false;
      for (int k : comp.edges) mixed |= m.labels[k] != m.labels[comp.edges.front()];
      if (!mixed) continue;
      int g = submap_genus(m, bicolored, comp.vertices.front());
      if (g > 0) cert.non_planar.push_back({0, comp.vertices, comp.edges, g});
    }
    // T_M: monocolored edges plus a spanning forest of every bicolored type.
    ForestCycleFinder forest(m.num_vertices());
    for (int k : mono) forest.add(where[2 * k], where[2 * k + 1], k);
    for (int j = 2; j <= 4; ++j) {
      ForestCycleFinder spanning(m.num_vertices());
      for (int k : bicolored)
        if (m.labels[k] == 10 + j && spanning.add(where[2 * k], where[2 * k + 1], k))
          forest.add(where[2 * k], where[2 * k + 1], k);
    }
    cert.cycle = forest.cycle();
  }

  cert.leading_order = cert.witnesses_empty();
  cert.agrees_with_omega = cert.leading_order == (cert.omega == cert.leading_omega);
  return cert;
}

}  // namespace tmt
