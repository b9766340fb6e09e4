#include "tmt/feynman.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "tmt/parallel.hpp"

namespace tmt {

// ---------------------------------------------------------------------------
// FeynmanGraph

int FeynmanGraph::rank() const { return bubbles.empty() ? 4 : bubbles.front().rank(); }

int FeynmanGraph::num_white() const {
  int n = 0;
  for (const auto& b : bubbles) n += b.num_white();
  return n;
}

Bubble FeynmanGraph::combined() const {
  Bubble out(rank(), 0, 0, {});
  for (const auto& b : bubbles) out = disjoint_union(out, b);
  return out;
}

int FeynmanGraph::bubble_of_white(int w) const {
  for (std::size_t i = 0; i < bubbles.size(); ++i) {
    if (w < bubbles[i].num_white()) return static_cast<int>(i);
    w -= bubbles[i].num_white();
  }
  throw std::out_of_range("white vertex out of range");
}

int FeynmanGraph::bubble_of_black(int b) const {
  for (std::size_t i = 0; i < bubbles.size(); ++i) {
    if (b < bubbles[i].num_black()) return static_cast<int>(i);
    b -= bubbles[i].num_black();
  }
  throw std::out_of_range("black vertex out of range");
}

int FeynmanGraph::num_zero_edges() const {
  return static_cast<int>(std::count_if(zero_edges.begin(), zero_edges.end(), [](int b) { return b >= 0; }));
}

std::vector<int> FeynmanGraph::free_whites() const {
  std::vector<int> out;
  for (int w = 0; w < static_cast<int>(zero_edges.size()); ++w)
    if (zero_edges[w] < 0) out.push_back(w);
  return out;
}

std::vector<int> FeynmanGraph::free_blacks() const {
  std::vector<char> used(num_white(), 0);
  for (int b : zero_edges)
    if (b >= 0) used[b] = 1;
  std::vector<int> out;
  for (int b = 0; b < static_cast<int>(used.size()); ++b)
    if (!used[b]) out.push_back(b);
  return out;
}

void FeynmanGraph::check() const {
  if (!tags.empty() && tags.size() != bubbles.size()) throw std::invalid_argument("one tag per bubble expected");
  int nw = num_white(), nb = 0;
  for (const auto& b : bubbles) {
    nb += b.num_black();
    if (b.rank() != rank()) throw std::invalid_argument("bubbles of mixed rank");
  }
  if (nw != nb) throw std::invalid_argument("white and black vertex counts differ");
  if (static_cast<int>(zero_edges.size()) != nw) throw std::invalid_argument("zero_edges must list every white");
  std::vector<char> used(nb, 0);
  for (int b : zero_edges) {
    if (b < -1 || b >= nb) throw std::invalid_argument("0-edge to a missing black vertex");
    if (b >= 0 && used[b]++) throw std::invalid_argument("black vertex matched twice");
  }
}

bool FeynmanGraph::connected() const {
  if (bubbles.empty()) return true;
  std::vector<int> parent(bubbles.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int w = 0; w < static_cast<int>(zero_edges.size()); ++w)
    if (zero_edges[w] >= 0) parent[find(bubble_of_white(w))] = find(bubble_of_black(zero_edges[w]));
  int roots = 0;
  for (int i = 0; i < static_cast<int>(parent.size()); ++i) roots += find(i) == i;
  return roots == 1;
}

int FeynmanGraph::faces(int color) const {
  Bubble all = combined();
  const int nw = all.num_white();
  std::vector<char> seen(nw, 0);
  int closed = 0;
  for (int start = 0; start < nw; ++start) {
    if (seen[start]) continue;
    int w = start;
    while (true) {
      seen[w] = 1;
      int b = zero_edges[w];
      if (b < 0) break;
      w = all.white_of(b, color);
      if (w == start) {
        ++closed;
        break;
      }
      if (seen[w]) break;
    }
  }
  return closed;
}

int FeynmanGraph::total_faces() const {
  int total = 0;
  for (int c = 1; c <= rank(); ++c) total += faces(c);
  return total;
}

int FeynmanGraph::broken_faces(int color) const {
  // Every broken face ends at exactly one free white.
  (void)color;
  return free_pairs();
}

// ---------------------------------------------------------------------------
// Closure enumeration

std::vector<FeynmanGraph> enumerate_closures(const std::vector<Bubble>& bubbles, int free_pairs, bool connected_only,
                                             std::vector<int> tags) {
  FeynmanGraph base;
  base.bubbles = bubbles;
  base.tags = tags.empty() ? std::vector<int>(bubbles.size(), kObservable) : std::move(tags);
  const int nw = base.num_white();
  int nb = 0;
  for (const auto& b : bubbles) nb += b.num_black();
  if (nw != nb) throw std::invalid_argument("enumerate_closures: white and black counts differ");
  if (free_pairs < 0 || free_pairs > nw) throw std::invalid_argument("enumerate_closures: bad free pair count");
  if (nw > 9) throw std::invalid_argument("enumerate_closures: more than 9 whites, use closure_face_histogram");

  std::vector<FeynmanGraph> out;
  base.zero_edges.assign(nw, -1);
  std::vector<char> used(nw, 0);
  auto rec = [&](auto&& self, int w, int free_left) -> void {
    if (w == nw) {
      if (free_left == 0 && (!connected_only || base.connected())) out.push_back(base);
      return;
    }
    if (free_left > 0) {
      base.zero_edges[w] = -1;
      self(self, w + 1, free_left - 1);
    }
    if (nw - w > free_left)
      for (int b = 0; b < nw; ++b) {
        if (used[b]) continue;
        used[b] = 1;
        base.zero_edges[w] = b;
        self(self, w + 1, free_left);
        used[b] = 0;
      }
    base.zero_edges[w] = -1;
  };
  rec(rec, 0, free_pairs);
  return out;
}

namespace {

// Depth-first search over perfect matchings white -> black with O(1) face
// bookkeeping. For color c the face permutation is w -> sigma_c(pi(w)); the
// partial permutation is a set of paths whose endpoints are tracked so that
// adding an arc either closes a face or merges two paths.
class ClosureEngine {
 public:
  ClosureEngine(const std::vector<Bubble>& bubbles, bool connected_only) : connected_only_(connected_only) {
    Bubble all(bubbles.empty() ? 4 : bubbles.front().rank(), 0, 0, {});
    for (const auto& b : bubbles) {
      if (b.rank() != all.rank()) throw std::invalid_argument("bubbles of mixed rank");
      for (int k = 0; k < b.num_white(); ++k) bubble_w_.push_back(static_cast<int>(num_bubbles_));
      for (int k = 0; k < b.num_black(); ++k) bubble_b_.push_back(static_cast<int>(num_bubbles_));
      ++num_bubbles_;
      all = disjoint_union(all, b);
    }
    if (!validate_bubble(all, true).valid && all.num_vertices() > 0)
      throw std::invalid_argument("closure: invalid bubble");
    w_ = all.num_white();
    if (all.num_black() != w_) throw std::invalid_argument("closure: white and black counts differ");
    d_ = all.rank();
    if (d_ > kMaxRank) throw std::invalid_argument("closure: rank too large");
    sigma_.resize(static_cast<std::size_t>(d_) * w_);
    for (int c = 0; c < d_; ++c)
      for (int b = 0; b < w_; ++b) sigma_[c * w_ + b] = all.white_of(b, c + 1);
    reset();
  }

  int num_white() const { return w_; }
  std::vector<std::uint64_t>& histogram() { return hist_; }

  void reset() {
    start_.resize(sigma_.size());
    end_.resize(sigma_.size());
    for (int c = 0; c < d_; ++c)
      for (int x = 0; x < w_; ++x) start_[c * w_ + x] = end_[c * w_ + x] = x;
    used_.assign(w_, 0);
    parent_.resize(num_bubbles_);
    std::iota(parent_.begin(), parent_.end(), 0);
    size_.assign(num_bubbles_, 1);
    components_ = static_cast<int>(num_bubbles_);
    faces_ = 0;
    hist_.assign(static_cast<std::size_t>(d_) * w_ + 1, 0);
  }

  /// Full search, or only the branch where white 0 is matched to `first`.
  void run(int first = -1) {
    if (w_ == 0) {
      if (!connected_only_ || components_ <= 1) ++hist_[0];
      return;
    }
    if (first < 0) {
      dfs(0);
    } else {
      step(0, first);
    }
  }

 private:
  static constexpr int kMaxRank = 16;

  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  void dfs(int w) {
    if (w == w_) {
      if (!connected_only_ || components_ == 1) ++hist_[faces_];
      return;
    }
    for (int b = 0; b < w_; ++b)
      if (!used_[b]) step(w, b);
  }

  void step(int w, int b) {
    used_[b] = 1;
    std::array<int, kMaxRank> merged_s, merged_e;
    int closed = 0;
    for (int c = 0; c < d_; ++c) {
      int* st = &start_[c * w_];
      int* en = &end_[c * w_];
      int t = sigma_[c * w_ + b];
      int s = st[w];
      if (s == t) {
        ++closed;
        merged_s[c] = -1;
      } else {
        int e = en[t];
        en[s] = e;
        st[e] = s;
        merged_s[c] = s;
        merged_e[c] = e;
      }
    }
    int ra = find(bubble_w_[w]), rb = find(bubble_b_[b]);
    bool joined = ra != rb;
    if (joined) {
      if (size_[ra] < size_[rb]) std::swap(ra, rb);
      parent_[rb] = ra;
      size_[ra] += size_[rb];
      --components_;
    }
    faces_ += closed;
    dfs(w + 1);
    faces_ -= closed;
    if (joined) {
      parent_[rb] = rb;
      size_[ra] -= size_[rb];
      ++components_;
    }
    for (int c = 0; c < d_; ++c) {
      if (merged_s[c] < 0) continue;
      end_[c * w_ + merged_s[c]] = w;
      start_[c * w_ + merged_e[c]] = sigma_[c * w_ + b];
    }
    used_[b] = 0;
  }

  bool connected_only_;
  std::size_t num_bubbles_ = 0;
  int w_ = 0, d_ = 4;
  std::vector<int> sigma_, start_, end_, bubble_w_, bubble_b_, parent_, size_;
  std::vector<char> used_;
  int components_ = 0, faces_ = 0;
  std::vector<std::uint64_t> hist_;
};

std::vector<std::uint64_t> face_histogram(const std::vector<Bubble>& bubbles, bool connected_only, bool parallel) {
  ClosureEngine probe(bubbles, connected_only);
  const int w = probe.num_white();
  if (!parallel || w < 8) {
    probe.run();
    return probe.histogram();
  }
  std::vector<std::vector<std::uint64_t>> parts(w);
  parallel_for(static_cast<std::size_t>(w), [&](std::size_t first) {
    ClosureEngine engine(bubbles, connected_only);
    engine.run(static_cast<int>(first));
    parts[first] = engine.histogram();
  });
  std::vector<std::uint64_t> total(parts.front().size(), 0);
  for (const auto& p : parts)
    for (std::size_t f = 0; f < p.size(); ++f) total[f] += p[f];
  return total;
}

int entry_omega(const FeynmanGraph& g, std::size_t i, const ModelSpec& model, int observable_omega) {
  int tag = g.tags.empty() ? kObservable : g.tags[i];
  if (tag == kObservable) return observable_omega;
  if (tag < 0 || tag >= static_cast<int>(model.entries.size()))
    throw std::invalid_argument("bubble tag has no model entry");
  const Bubble& expected = model.entries[tag].bubble;
  if (!(expected == g.bubbles[i]) && canonical_form(expected) != canonical_form(g.bubbles[i]))
    throw std::invalid_argument("bubble does not match its model entry " + model.entries[tag].coupling);
  return model.entries[tag].omega;
}

}  // namespace

std::vector<std::uint64_t> closure_face_histogram(const std::vector<Bubble>& bubbles, bool connected_only) {
  return face_histogram(bubbles, connected_only, true);
}

int degree_exponent(const FeynmanGraph& g, const ModelSpec& model, int observable_omega) {
  g.check();
  if (!g.closed()) throw std::invalid_argument("degree_exponent needs a closed graph");
  int e = g.total_faces() - model.alpha() * g.num_zero_edges();
  for (std::size_t i = 0; i < g.bubbles.size(); ++i) e += entry_omega(g, i, model, observable_omega);
  return e;
}

int normalized_exponent(const FeynmanGraph& g, const ModelSpec& model) {
  g.check();
  int e = g.total_faces() - model.alpha() * g.num_zero_edges();
  for (std::size_t i = 0; i < g.bubbles.size(); ++i) {
    if (!g.tags.empty() && g.tags[i] == kObservable)
      throw std::invalid_argument("normalized_exponent: observables are not model interactions");
    e += entry_omega(g, i, model, 0);
  }
  return g.closed() ? e - model.rank : e - model.alpha() * g.free_pairs();
}

// ---------------------------------------------------------------------------
// Boundary graph

BoundaryGraph boundary_graph(const FeynmanGraph& g) {
  g.check();
  if (g.closed()) throw std::invalid_argument("boundary_graph: the graph is closed");
  Bubble all = g.combined();
  const int nw = all.num_white();
  std::vector<int> matched_white(nw, -1);
  for (int w = 0; w < nw; ++w)
    if (g.zero_edges[w] >= 0) matched_white[g.zero_edges[w]] = w;

  BoundaryGraph out;
  out.whites = g.free_whites();
  out.blacks = g.free_blacks();
  std::vector<int> black_index(nw, -1);
  for (std::size_t k = 0; k < out.blacks.size(); ++k) black_index[out.blacks[k]] = static_cast<int>(k);

  std::vector<Edge> edges;
  for (std::size_t k = 0; k < out.whites.size(); ++k)
    for (int c = 1; c <= all.rank(); ++c) {
      int w = out.whites[k];
      int steps = 0;
      while (true) {
        int b = all.black_of(w, c);
        if (matched_white[b] < 0) {
          edges.push_back({static_cast<int>(k), black_index[b], c});
          break;
        }
        w = matched_white[b];
        if (++steps > nw) throw std::logic_error("boundary_graph: broken face does not end at a free black");
      }
    }
  int n = static_cast<int>(out.whites.size());
  out.bubble = Bubble(all.rank(), n, n, std::move(edges));
  return out;
}

// ---------------------------------------------------------------------------
// Reduction to the restricted quartic model

QuarticReplacement quartic_replacement(const NecklaceTreeSpec& spec) {
  if (spec.insertions.empty()) throw std::invalid_argument("tree of necklaces needs at least one necklace");
  constexpr int kNecklaceTag = 4;  // position of the 12 necklace in restricted_quartic()
  const Bubble necklace = build_necklace(2, 2);

  QuarticReplacement out;
  FeynmanGraph& g = out.graph;
  std::vector<std::pair<int, int>> zero;  // (white, black), filled once sizes are known
  auto add = [&](const Bubble& b, int tag) {
    g.bubbles.push_back(b);
    g.tags.push_back(tag);
    return static_cast<int>(g.bubbles.size()) - 1;  // every quartic bubble has 2 whites and 2 blacks
  };

  for (std::size_t k = 0; k < spec.insertions.size(); ++k) {
    const auto& ins = spec.insertions[k];
    if (ins.size < 1) throw std::invalid_argument("necklace sizes must be at least 1");
    const int first_white = static_cast<int>(out.white_rep.size());
    // A loop of quartic necklaces: the internal pair of each joins the next one.
    int first = -1;
    for (int m = 0; m < ins.size; ++m) {
      int j = add(necklace, kNecklaceTag);
      if (m == 0) first = j;
      out.white_rep.push_back(2 * j);
      out.black_rep.push_back(2 * j);
    }
    for (int m = 0; m < ins.size; ++m) zero.emplace_back(2 * (first + m) + 1, 2 * (first + (m + 1) % ins.size) + 1);
    if (k == 0) continue;

    if (ins.color < 1 || ins.color > 4) throw std::invalid_argument("insertion color out of range");
    if (ins.target_white < 0 || ins.target_white >= first_white)
      throw std::invalid_argument("insertion targets a missing white");
    // The melon swaps the color-i strands of the two opened vertices.
    int j = add(quartic_melon(ins.color), ins.color - 1);
    zero.emplace_back(out.white_rep[ins.target_white], 2 * j);
    zero.emplace_back(out.white_rep[first_white], 2 * j + 1);
    out.white_rep[ins.target_white] = 2 * j;
    out.white_rep[first_white] = 2 * j + 1;
  }
  g.zero_edges.assign(2 * g.bubbles.size(), -1);
  for (auto [w, b] : zero) g.zero_edges[w] = b;
  return out;
}

FeynmanGraph q_map(const FeynmanGraph& g, const std::vector<NecklaceTreeSpec>& trees) {
  g.check();
  if (trees.size() != g.bubbles.size()) throw std::invalid_argument("q_map: one tree per bubble expected");
  FeynmanGraph out;
  std::vector<int> white_map, black_map;  // old global vertex -> new global vertex
  std::vector<std::pair<int, int>> zero;
  int offset = 0;
  for (std::size_t i = 0; i < g.bubbles.size(); ++i) {
    if (!(realize_tree_of_necklaces(trees[i]) == g.bubbles[i]))
      throw std::invalid_argument("q_map: bubble is not the realization of its tree of necklaces");
    QuarticReplacement rep = quartic_replacement(trees[i]);
    for (int v : rep.white_rep) white_map.push_back(offset + v);
    for (int v : rep.black_rep) black_map.push_back(offset + v);
    for (int w = 0; w < static_cast<int>(rep.graph.zero_edges.size()); ++w)
      if (rep.graph.zero_edges[w] >= 0) zero.emplace_back(offset + w, offset + rep.graph.zero_edges[w]);
    for (std::size_t j = 0; j < rep.graph.bubbles.size(); ++j) {
      out.bubbles.push_back(rep.graph.bubbles[j]);
      out.tags.push_back(rep.graph.tags[j]);
    }
    offset += rep.graph.num_white();
  }
  for (int w = 0; w < static_cast<int>(g.zero_edges.size()); ++w)
    if (g.zero_edges[w] >= 0) zero.emplace_back(white_map[w], black_map[g.zero_edges[w]]);
  out.zero_edges.assign(offset, -1);
  for (auto [w, b] : zero) out.zero_edges[w] = b;
  out.check();
  return out;
}

FeynmanGraph q_map(const FeynmanGraph& g, const ModelSpec& model) {
  std::vector<NecklaceTreeSpec> trees;
  for (std::size_t i = 0; i < g.bubbles.size(); ++i) {
    int tag = g.tags.empty() ? kObservable : g.tags[i];
    if (tag < 0 || tag >= static_cast<int>(model.entries.size()) || !model.entries[tag].tree)
      throw std::invalid_argument("q_map: bubble is not tagged with a tree of necklaces");
    trees.push_back(*model.entries[tag].tree);
  }
  return q_map(g, trees);
}

// ---------------------------------------------------------------------------
// Gaussian moments

LaurentPolynomial gaussian_moment(const std::vector<Bubble>& bubbles) {
  ClosureEngine probe(bubbles, false);
  const int w = probe.num_white();
  const int alpha = (bubbles.empty() ? 4 : bubbles.front().rank()) - 1;
  auto hist = face_histogram(bubbles, false, true);
  LaurentPolynomial out;
  for (std::size_t f = 0; f < hist.size(); ++f)
    if (hist[f]) out.add_term(static_cast<int>(f) - alpha * w, Rational(Integer(std::to_string(hist[f]))));
  return out;
}

Rational gaussian_moment_direct(const std::vector<Bubble>& bubbles, int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("direct moment: N must be 1, 2 or 3");
  Bubble all(bubbles.empty() ? 4 : bubbles.front().rank(), 0, 0, {});
  for (const auto& b : bubbles) all = disjoint_union(all, b);
  if (all.num_vertices() > 8) throw std::invalid_argument("direct moment: more than 8 vertices");
  if (all.num_white() != all.num_black()) throw std::invalid_argument("direct moment: unbalanced vertex counts");
  if (!validate_bubble(all, true).valid && all.num_vertices() > 0)
    throw std::invalid_argument("direct moment: invalid bubble");
  const int d = all.rank(), w = all.num_white();
  const int e = d * w;

  // Edge (white, color) gets index slot white * d + color - 1; blacks reach
  // their edge through the white at the other end.
  std::vector<int> black_slot(static_cast<std::size_t>(w) * d);
  for (int b = 0; b < w; ++b)
    for (int c = 1; c <= d; ++c) black_slot[b * d + c - 1] = all.white_of(b, c) * d + c - 1;

  std::vector<int> idx(e, 0);
  std::vector<long> tw(w), tb(w);
  std::vector<Integer> fact(w + 1);
  for (int k = 0; k <= w; ++k) fact[k] = factorial(k);
  Integer total = 0;
  while (true) {
    for (int v = 0; v < w; ++v) {
      long a = 0, b = 0;
      for (int c = 0; c < d; ++c) {
        a = a * n + idx[v * d + c];
        b = b * n + idx[black_slot[v * d + c]];
      }
      tw[v] = a;
      tb[v] = b;
    }
    std::sort(tw.begin(), tw.end());
    std::sort(tb.begin(), tb.end());
    if (tw == tb) {
      Integer weight = 1;
      for (int v = 0; v < w;) {
        int u = v;
        while (u < w && tw[u] == tw[v]) ++u;
        weight *= fact[u - v];
        v = u;
      }
      total += weight;
    }
    int pos = 0;
    while (pos < e && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == e) break;
  }
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>((d - 1) * w));
  Rational out(total, scale);
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------------------
// Perturbative series

std::vector<Monomial> monomials_up_to(int count, int order) {
  std::vector<Monomial> out;
  Monomial m(count, 0);
  for (int degree = 0; degree <= order; ++degree) {
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == count - 1 || count == 0) {
        if (count > 0) m[pos] = left;
        if (count > 0 || left == 0) out.push_back(m);
        return;
      }
      for (int k = left; k >= 0; --k) {
        m[pos] = k;
        self(self, pos + 1, left - k);
      }
    };
    rec(rec, 0, degree);
  }
  return out;
}

namespace {

LaurentPolynomial series_term(const ModelSpec& model, const std::vector<Bubble>& extra, const Monomial& m,
                              int extra_omega, int max_whites) {
  std::vector<Bubble> bubbles = extra;
  int omega = extra_omega;
  Rational weight = 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (int k = 0; k < m[i]; ++k) bubbles.push_back(model.entries[i].bubble);
    omega += m[i] * model.entries[i].omega;
    weight /= Rational(factorial(m[i]));
    if (m[i] % 2) weight = -weight;
  }
  int w = 0;
  for (const auto& b : bubbles) w += b.num_white();
  if (w > max_whites)
    throw std::runtime_error("series: budget exceeded (" + std::to_string(w) + " whites > " +
                             std::to_string(max_whites) + ")");
  auto hist = face_histogram(bubbles, true, false);
  LaurentPolynomial out;
  for (std::size_t f = 0; f < hist.size(); ++f)
    if (hist[f])
      out.add_term(static_cast<int>(f) - model.alpha() * w + omega - model.rank,
                   weight * Rational(Integer(std::to_string(hist[f]))));
  return out;
}

CouplingSeries run_series(const ModelSpec& model, const std::vector<Bubble>& extra, int extra_omega, int order,
                          int max_whites, bool skip_constant) {
  model.check();
  if (order < 0) throw std::invalid_argument("series order must be nonnegative");
  auto monomials = monomials_up_to(static_cast<int>(model.entries.size()), order);
  if (skip_constant) monomials.erase(monomials.begin());
  std::vector<LaurentPolynomial> terms(monomials.size());
  parallel_for(monomials.size(),
               [&](std::size_t k) { terms[k] = series_term(model, extra, monomials[k], extra_omega, max_whites); });
  CouplingSeries out;
  out.symbols = model.symbols();
  for (std::size_t k = 0; k < monomials.size(); ++k)
    if (!terms[k].is_zero()) out.coefficients[monomials[k]] = terms[k];
  return out;
}

}  // namespace

CouplingSeries expectation_series(const ModelSpec& model, const Bubble& observable, int observable_omega, int order,
                                  int max_whites) {
  if (!observable.is_valid()) throw std::invalid_argument("expectation_series: invalid observable");
  return run_series(model, {observable}, observable_omega, order, max_whites, false);
}

CouplingSeries free_energy_series(const ModelSpec& model, int order, int max_whites) {
  return run_series(model, {}, 0, order, max_whites, true);
}

RandomTreeGraph random_tree_graph(std::mt19937_64& rng, int max_vertices, int max_bubbles) {
  if (max_vertices < 2 || max_bubbles < 1) throw std::invalid_argument("random_tree_graph: budget too small");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::pair<std::string, NecklaceTreeSpec>> trees;
    int budget = max_vertices;
    int count = std::uniform_int_distribution<int>(1, max_bubbles)(rng);
    while (static_cast<int>(trees.size()) < count && budget >= 2) {
      NecklaceTreeSpec spec = random_tree(rng, budget, 3);
      budget -= spec.num_vertices();
      trees.emplace_back("t" + std::to_string(trees.size()), spec);
    }
    RandomTreeGraph out{ModelSpec::trees_of_necklaces(trees), {}};
    for (std::size_t k = 0; k < trees.size(); ++k) {
      out.graph.bubbles.push_back(out.model.entries[k].bubble);
      out.graph.tags.push_back(static_cast<int>(k));
    }
    std::vector<int> blacks(out.graph.num_white());
    std::iota(blacks.begin(), blacks.end(), 0);
    std::shuffle(blacks.begin(), blacks.end(), rng);
    out.graph.zero_edges = blacks;
    if (out.graph.connected()) return out;
  }
  throw std::runtime_error("random_tree_graph: no connected sample found");
}

}  // namespace tmt
