#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "tmt/if_maps.hpp"

namespace tmt {

namespace {

// Position of a permutation in lexicographic order.
std::size_t permutation_rank(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  std::size_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += p[j] < p[i];
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

bool transitive(const std::vector<int>& sigma, int edges) {
  const int n = static_cast<int>(sigma.size());
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int d = stack.back();
    stack.pop_back();
    int next[2] = {sigma[d], d < 2 * edges ? (d ^ 1) : d};
    for (int x : next)
      if (!seen[x]) {
        seen[x] = 1;
        ++count;
        stack.push_back(x);
      }
  }
  return count == n;
}

struct Relabeling {
  std::vector<int> darts;      // dart d goes to darts[d]
  std::vector<int> edge_perm;  // edge k goes to edge_perm[k]
};

// Edge permutations times half-edge swaps; cilium dart fixed.
std::vector<Relabeling> hyperoctahedral(int edges, int n) {
  std::vector<Relabeling> group;
  std::vector<int> p(edges);
  std::iota(p.begin(), p.end(), 0);
  do {
    for (int flips = 0; flips < (1 << edges); ++flips) {
      Relabeling g{std::vector<int>(n), p};
      for (int k = 0; k < edges; ++k)
        for (int s = 0; s < 2; ++s) g.darts[2 * k + s] = 2 * p[k] + (s ^ ((flips >> k) & 1));
      for (int d = 2 * edges; d < n; ++d) g.darts[d] = d;
      group.push_back(std::move(g));
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return group;
}

}  // namespace

void for_each_map(QuarticModel model, int edges, int cilia, bool dedup,
                  const std::function<bool(const StrandedMap&)>& callback) {
  if (cilia < 0 || cilia > 1) throw std::invalid_argument("enumerate_maps: cilia must be 0 or 1");
  if (edges < 0) throw std::invalid_argument("enumerate_maps: negative edge count");
  if (edges > (dedup ? 5 : 3))
    throw std::invalid_argument("enumerate_maps: budget exceeded (" + std::to_string(edges) + " edges)");
  const auto alphabet = model_labels(model);
  const int n = 2 * edges + cilia;
  if (n == 0) {
    callback(StrandedMap::vertex(false));
    return;
  }

  const auto group = dedup ? hyperoctahedral(edges, n) : std::vector<Relabeling>{};
  std::size_t total = 1;
  for (int k = 2; k <= n; ++k) total *= k;
  std::vector<bool> visited(dedup ? total : 0, false);

  std::vector<int> sigma(n), conj(n), tuple(edges), moved(edges);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::size_t index = 0;
  do {
    const std::size_t here = index++;
    if (dedup && visited[here]) continue;
    if (!transitive(sigma, edges)) continue;

    std::vector<const std::vector<int>*> stabilizer;
    if (dedup)
      for (const auto& g : group) {
        for (int d = 0; d < n; ++d) conj[g.darts[d]] = g.darts[sigma[d]];
        if (conj == sigma) stabilizer.push_back(&g.edge_perm);
        visited[permutation_rank(conj)] = true;
      }

    // Label tuples, one per orbit of the stabilizer.
    std::fill(tuple.begin(), tuple.end(), 0);
    while (true) {
      bool minimal = true;
      for (const auto* p : stabilizer) {
        for (int k = 0; k < edges; ++k) moved[(*p)[k]] = tuple[k];
        if (moved < tuple) {
          minimal = false;
          break;
        }
      }
      if (minimal) {
        std::vector<int> labels(edges);
        for (int k = 0; k < edges; ++k) labels[k] = alphabet[tuple[k]];
        if (!callback(StrandedMap::from_permutation(sigma, labels))) return;
      }
      int pos = edges - 1;
      while (pos >= 0 && ++tuple[pos] == static_cast<int>(alphabet.size())) tuple[pos--] = 0;
      if (pos < 0) break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

std::vector<StrandedMap> enumerate_maps(QuarticModel model, int max_edges, int cilia, bool dedup) {
  if (max_edges > (dedup ? 5 : 3))
    throw std::invalid_argument("enumerate_maps: budget exceeded (" + std::to_string(max_edges) + " edges)");
  std::vector<StrandedMap> out;
  for (int e = 0; e <= max_edges; ++e)
    for_each_map(model, e, cilia, dedup, [&](const StrandedMap& m) {
      out.push_back(m);
      return true;
    });
  return out;
}

}  // namespace tmt
