#include "tmt/bubble.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace tmt {

Bubble::Bubble(int rank, int num_white, int num_black, std::vector<Edge> edges)
    : rank_(rank), num_white_(num_white), num_black_(num_black), edges_(std::move(edges)) {
  if (rank < 1 || num_white < 0 || num_black < 0) throw std::invalid_argument("Bubble: bad dimensions");
  black_of_.assign(static_cast<std::size_t>(num_white) * rank, -1);
  white_of_.assign(static_cast<std::size_t>(num_black) * rank, -1);
  for (const Edge& e : edges_) {
    if (e.white < 0 || e.white >= num_white || e.black < 0 || e.black >= num_black || e.color < 1 ||
        e.color > rank) {
      clash_ = true;
      continue;
    }
    int& bw = black_of_[e.white * rank + e.color - 1];
    int& wb = white_of_[e.black * rank + e.color - 1];
    if (bw != -1 || wb != -1) clash_ = true;
    if (bw == -1) bw = e.black;
    if (wb == -1) wb = e.white;
  }
}

Bubble Bubble::dipole(int rank) {
  std::vector<Edge> edges;
  for (int c = 1; c <= rank; ++c) edges.push_back({0, 0, c});
  return Bubble(rank, 1, 1, std::move(edges));
}

int Bubble::black_of(int white, int color) const {
  if (white < 0 || white >= num_white_ || color < 1 || color > rank_) return -1;
  return black_of_[white * rank_ + color - 1];
}

int Bubble::white_of(int black, int color) const {
  if (black < 0 || black >= num_black_ || color < 1 || color > rank_) return -1;
  return white_of_[black * rank_ + color - 1];
}

bool Bubble::is_valid() const { return validate_bubble(*this).valid; }

bool Bubble::operator==(const Bubble& other) const {
  if (rank_ != other.rank_ || num_white_ != other.num_white_ || num_black_ != other.num_black_) return false;
  auto key = [](const Edge& e) { return std::tuple(e.white, e.black, e.color); };
  auto a = edges_, b = other.edges_;
  auto cmp = [&](const Edge& x, const Edge& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), cmp);
  std::sort(b.begin(), b.end(), cmp);
  return a == b;
}

std::string ValidityReport::summary() const {
  std::ostringstream os;
  os << (valid ? "valid" : "invalid");
  for (const auto& c : checks)
    if (!c.passed) os << "; " << c.name << ": " << c.detail;
  return os.str();
}

namespace {

// Union-find over white vertices (0..nw-1) and black vertices (nw..nw+nb-1).
struct Components {
  std::vector<int> parent;
  explicit Components(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

ValidityReport validate_bubble(const Bubble& b, bool allow_disconnected) {
  ValidityReport report;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, ok ? std::string{} : std::move(detail)});
    report.valid = report.valid && ok;
  };

  std::string bad_edge;
  for (const Edge& e : b.edges())
    if (e.white < 0 || e.white >= b.num_white() || e.black < 0 || e.black >= b.num_black() || e.color < 1 ||
        e.color > b.rank()) {
      bad_edge = "edge (" + std::to_string(e.white) + "," + std::to_string(e.black) + "," +
                 std::to_string(e.color) + ") out of range";
      break;
    }
  add("edge ranges", bad_edge.empty(), bad_edge);

  // Proper coloring: count incidences per (vertex, color).
  std::vector<int> wcount(static_cast<std::size_t>(b.num_white()) * b.rank(), 0);
  std::vector<int> bcount(static_cast<std::size_t>(b.num_black()) * b.rank(), 0);
  for (const Edge& e : b.edges()) {
    if (e.white < 0 || e.white >= b.num_white() || e.black < 0 || e.black >= b.num_black() || e.color < 1 ||
        e.color > b.rank())
      continue;
    ++wcount[e.white * b.rank() + e.color - 1];
    ++bcount[e.black * b.rank() + e.color - 1];
  }
  std::string missing, doubled;
  auto scan = [&](const std::vector<int>& counts, int n, const char* kind) {
    for (int v = 0; v < n; ++v)
      for (int c = 1; c <= b.rank(); ++c) {
        int k = counts[v * b.rank() + c - 1];
        std::string where = std::string(kind) + " vertex " + std::to_string(v) + " color " + std::to_string(c);
        if (k == 0 && missing.empty()) missing = where + " missing";
        if (k > 1 && doubled.empty()) doubled = where + " repeated";
      }
  };
  scan(wcount, b.num_white(), "white");
  scan(bcount, b.num_black(), "black");
  add("regularity", missing.empty(), missing);
  add("proper coloring", doubled.empty(), doubled);
  add("balanced", b.num_white() == b.num_black(),
      std::to_string(b.num_white()) + " white vs " + std::to_string(b.num_black()) + " black");
  add("non-empty", b.num_white() > 0, "no vertices");

  if (!allow_disconnected && bad_edge.empty()) add("connected", is_connected(b), "graph is disconnected");
  return report;
}

bool is_connected(const Bubble& b) {
  const int n = b.num_vertices();
  if (n == 0) return true;
  Components uf(n);
  for (const Edge& e : b.edges()) uf.unite(e.white, b.num_white() + e.black);
  int root = uf.find(0);
  for (int v = 1; v < n; ++v)
    if (uf.find(v) != root) return false;
  return true;
}

std::vector<Bubble> connected_components(const Bubble& b) {
  const int nw = b.num_white();
  Components uf(b.num_vertices());
  for (const Edge& e : b.edges()) uf.unite(e.white, nw + e.black);

  std::vector<int> comp_of_root(b.num_vertices(), -1);
  std::vector<int> new_index(b.num_vertices(), -1);
  std::vector<std::pair<int, int>> sizes;  // (whites, blacks) per component
  auto component = [&](int v) {
    int r = uf.find(v);
    if (comp_of_root[r] == -1) {
      comp_of_root[r] = static_cast<int>(sizes.size());
      sizes.emplace_back(0, 0);
    }
    return comp_of_root[r];
  };
  for (int w = 0; w < nw; ++w) new_index[w] = sizes[component(w)].first++;
  for (int v = 0; v < b.num_black(); ++v) new_index[nw + v] = sizes[component(nw + v)].second++;

  std::vector<std::vector<Edge>> edges(sizes.size());
  for (const Edge& e : b.edges())
    edges[component(e.white)].push_back({new_index[e.white], new_index[nw + e.black], e.color});
  std::vector<Bubble> out;
  for (std::size_t k = 0; k < sizes.size(); ++k)
    out.emplace_back(b.rank(), sizes[k].first, sizes[k].second, std::move(edges[k]));
  return out;
}

Bubble disjoint_union(const Bubble& a, const Bubble& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("disjoint_union: rank mismatch");
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : b.edges()) edges.push_back({e.white + a.num_white(), e.black + a.num_black(), e.color});
  return Bubble(a.rank(), a.num_white() + b.num_white(), a.num_black() + b.num_black(), std::move(edges));
}

Bubble relabeled(const Bubble& b, const std::vector<int>& white_perm, const std::vector<int>& black_perm) {
  if (static_cast<int>(white_perm.size()) != b.num_white() || static_cast<int>(black_perm.size()) != b.num_black())
    throw std::invalid_argument("relabeled: permutation size mismatch");
  std::vector<Edge> edges;
  edges.reserve(b.edges().size());
  for (const Edge& e : b.edges()) edges.push_back({white_perm[e.white], black_perm[e.black], e.color});
  return Bubble(b.rank(), b.num_white(), b.num_black(), std::move(edges));
}

std::vector<std::vector<int>> bicolored_face_list(const Bubble& b, int c, int c2) {
  if (c == c2 || c < 1 || c2 < 1 || c > b.rank() || c2 > b.rank())
    throw std::invalid_argument("bicolored_faces: need two distinct colors in range");
  std::vector<std::vector<int>> faces;
  std::vector<char> seen(b.num_white(), 0);
  for (int start = 0; start < b.num_white(); ++start) {
    if (seen[start]) continue;
    std::vector<int> face;
    int w = start;
    while (!seen[w]) {
      seen[w] = 1;
      face.push_back(w);
      int black = b.black_of(w, c);
      if (black < 0) throw std::invalid_argument("bicolored_faces: bubble is not regular");
      w = b.white_of(black, c2);
      if (w < 0) throw std::invalid_argument("bicolored_faces: bubble is not regular");
    }
    faces.push_back(std::move(face));
  }
  return faces;
}

int bicolored_faces(const Bubble& b, int c, int c2) { return static_cast<int>(bicolored_face_list(b, c, c2).size()); }

int total_bicolored_faces(const Bubble& b) {
  int total = 0;
  for (int c = 1; c <= b.rank(); ++c)
    for (int c2 = c + 1; c2 <= b.rank(); ++c2) total += bicolored_faces(b, c, c2);
  return total;
}

Contraction contract(const Bubble& b, int black, int white) {
  if (!validate_bubble(b, true).valid) throw std::invalid_argument("contract: invalid bubble");
  if (white < 0 || white >= b.num_white() || black < 0 || black >= b.num_black())
    throw std::invalid_argument("contract: vertex out of range");
  Contraction out;
  std::vector<int> wmap(b.num_white(), -1), bmap(b.num_black(), -1);
  int nw = 0, nb = 0;
  for (int w = 0; w < b.num_white(); ++w)
    if (w != white) wmap[w] = nw++;
  for (int v = 0; v < b.num_black(); ++v)
    if (v != black) bmap[v] = nb++;

  std::vector<Edge> edges;
  for (const Edge& e : b.edges())
    if (e.white != white && e.black != black) edges.push_back({wmap[e.white], bmap[e.black], e.color});
  for (int c = 1; c <= b.rank(); ++c) {
    int beta = b.black_of(white, c);
    if (beta == black) {
      ++out.loops;
      continue;
    }
    int omega = b.white_of(black, c);
    edges.push_back({wmap[omega], bmap[beta], c});
  }
  if (nw > 0) out.bubbles = connected_components(Bubble(b.rank(), nw, nb, std::move(edges)));
  return out;
}

Bubble compose(const Bubble& b, int white, const Bubble& other, int black) {
  if (b.rank() != other.rank()) throw std::invalid_argument("compose: rank mismatch");
  if (white < 0 || white >= b.num_white() || black < 0 || black >= other.num_black())
    throw std::invalid_argument("compose: vertex out of range");
  const int shift_w = b.num_white() - 1;
  const int shift_b = b.num_black();
  auto map_white_b = [&](int w) { return w < white ? w : w - 1; };
  auto map_black_other = [&](int v) { return shift_b + (v < black ? v : v - 1); };

  std::vector<Edge> edges;
  for (const Edge& e : b.edges())
    if (e.white != white) edges.push_back({map_white_b(e.white), e.black, e.color});
  for (const Edge& e : other.edges())
    if (e.black != black) edges.push_back({shift_w + e.white, map_black_other(e.black), e.color});
  for (int c = 1; c <= b.rank(); ++c) {
    int beta = b.black_of(white, c);
    int omega = other.white_of(black, c);
    if (beta < 0 || omega < 0) throw std::invalid_argument("compose: bubble is not regular");
    edges.push_back({shift_w + omega, beta, c});
  }
  return Bubble(b.rank(), b.num_white() + other.num_white() - 1, b.num_black() + other.num_black() - 1,
                std::move(edges));
}

namespace {

// Traversal code of a connected bubble rooted at white `start`: whites and
// blacks are numbered in order of discovery, and the code lists, for each
// white in that order, the numbers of its neighbors by color.
std::vector<int> rooted_code(const Bubble& b, int start) {
  const int n = b.num_white();
  std::vector<int> wlabel(n, -1), blabel(b.num_black(), -1), worder;
  worder.reserve(n);
  int next_w = 0, next_b = 0;
  wlabel[start] = next_w++;
  worder.push_back(start);
  std::vector<int> code;
  code.reserve(static_cast<std::size_t>(n) * b.rank());
  for (std::size_t i = 0; i < worder.size(); ++i) {
    int w = worder[i];
    for (int c = 1; c <= b.rank(); ++c) {
      int v = b.black_of(w, c);
      if (blabel[v] == -1) {
        blabel[v] = next_b++;
        for (int c2 = 1; c2 <= b.rank(); ++c2) {
          int w2 = b.white_of(v, c2);
          if (wlabel[w2] == -1) {
            wlabel[w2] = next_w++;
            worder.push_back(w2);
          }
        }
      }
      code.push_back(blabel[v]);
    }
  }
  return code;
}

std::string connected_label(const Bubble& b) {
  std::vector<int> best;
  for (int s = 0; s < b.num_white(); ++s) {
    auto code = rooted_code(b, s);
    if (best.empty() || code < best) best = std::move(code);
  }
  std::ostringstream os;
  os << b.rank() << ":" << b.num_white() << ":";
  for (std::size_t i = 0; i < best.size(); ++i) os << (i ? "," : "") << best[i];
  return os.str();
}

}  // namespace

std::string canonical_form(const Bubble& b) {
  if (!validate_bubble(b, true).valid) throw std::invalid_argument("canonical_form: invalid bubble");
  if (is_connected(b)) return connected_label(b);
  std::vector<std::string> labels;
  for (const Bubble& part : connected_components(b)) labels.push_back(connected_label(part));
  std::sort(labels.begin(), labels.end());
  std::string out;
  for (const auto& l : labels) out += (out.empty() ? "" : "|") + l;
  return out;
}

std::vector<Bubble> enumerate_connected_bubbles(int num_white, int rank) {
  if (num_white < 1 || rank < 1) throw std::invalid_argument("enumerate_connected_bubbles: bad size");
  if (num_white > 4) throw std::invalid_argument("enumerate_connected_bubbles: at most 4 white vertices");
  // Color 1 can be fixed to the identity matching by relabeling blacks.
  std::vector<int> ident(num_white);
  std::iota(ident.begin(), ident.end(), 0);
  std::vector<std::vector<int>> perms;
  {
    auto p = ident;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<std::pair<std::string, Bubble>> found;
  std::vector<std::size_t> choice(rank - 1, 0);
  while (true) {
    std::vector<Edge> edges;
    for (int w = 0; w < num_white; ++w) edges.push_back({w, w, 1});
    for (int c = 2; c <= rank; ++c)
      for (int w = 0; w < num_white; ++w) edges.push_back({w, perms[choice[c - 2]][w], c});
    Bubble b(rank, num_white, num_white, std::move(edges));
    if (is_connected(b)) {
      auto label = canonical_form(b);
      if (std::none_of(found.begin(), found.end(), [&](const auto& f) { return f.first == label; }))
        found.emplace_back(std::move(label), std::move(b));
    }
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == perms.size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Bubble> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

}  // namespace tmt
