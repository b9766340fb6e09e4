#include "tmt/necklaces.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tmt {

namespace {

std::array<int, 2> complement_pair(int partner) {
  std::array<int, 2> out{};
  int k = 0;
  for (int c = 2; c <= 4; ++c)
    if (c != partner) out[k++] = c;
  return out;
}

}  // namespace

Bubble build_necklace(int partner, int p) {
  if (partner < 2 || partner > 4) throw std::invalid_argument("build_necklace: color pair must be 12, 13 or 14");
  if (p < 1) throw std::invalid_argument("build_necklace: size must be at least 1");
  const auto other = complement_pair(partner);
  std::vector<Edge> edges;
  for (int k = 0; k < p; ++k) {
    edges.push_back({k, k, 1});
    edges.push_back({k, k, partner});
    int prev = (k + p - 1) % p;
    edges.push_back({k, prev, other[0]});
    edges.push_back({k, prev, other[1]});
  }
  return Bubble(4, p, p, std::move(edges));
}

Bubble quartic_melon(int color) {
  if (color < 1 || color > 4) throw std::invalid_argument("quartic_melon: color out of range");
  std::vector<Edge> edges;
  for (int c = 1; c <= 4; ++c) {
    if (c == color) {
      edges.push_back({0, 1, c});
      edges.push_back({1, 0, c});
    } else {
      edges.push_back({0, 0, c});
      edges.push_back({1, 1, c});
    }
  }
  return Bubble(4, 2, 2, std::move(edges));
}

std::vector<Bubble> quartic_bubbles() {
  std::vector<Bubble> out;
  for (int c = 1; c <= 4; ++c) out.push_back(quartic_melon(c));
  for (int partner = 2; partner <= 4; ++partner) out.push_back(build_necklace(partner, 2));
  return out;
}

std::vector<int> NecklaceTreeSpec::type() const {
  std::vector<int> t;
  for (const auto& ins : insertions) t.push_back(ins.size);
  std::sort(t.begin(), t.end());
  return t;
}

int tree_of_necklaces_omega(const std::vector<int>& type) {
  if (type.empty()) throw std::invalid_argument("tree of necklaces needs at least one necklace");
  int n = static_cast<int>(type.size());
  return 3 - n + std::accumulate(type.begin(), type.end(), 0);
}

int NecklaceTreeSpec::omega() const { return tree_of_necklaces_omega(type()); }

int NecklaceTreeSpec::num_vertices() const {
  int total = 0;
  for (const auto& ins : insertions) total += 2 * ins.size;
  return total;
}

Bubble realize_tree_of_necklaces(const NecklaceTreeSpec& spec) {
  if (spec.insertions.empty()) throw std::invalid_argument("tree of necklaces needs at least one necklace");
  for (const auto& ins : spec.insertions)
    if (ins.size < 1) throw std::invalid_argument("necklace sizes must be at least 1");

  Bubble current = build_necklace(2, spec.insertions.front().size);
  for (std::size_t k = 1; k < spec.insertions.size(); ++k) {
    const auto& ins = spec.insertions[k];
    if (ins.color < 1 || ins.color > 4) throw std::invalid_argument("insertion color out of range");
    if (ins.target_white < 0 || ins.target_white >= current.num_white())
      throw std::invalid_argument("insertion targets a missing edge (white " + std::to_string(ins.target_white) +
                                  ")");
    const int x = ins.target_white;
    const int y = current.black_of(x, ins.color);
    const int x_new = current.num_white();  // first white of the appended necklace
    Bubble grown = disjoint_union(current, build_necklace(2, ins.size));
    const int y_new = grown.black_of(x_new, ins.color);

    std::vector<Edge> edges;
    for (const Edge& e : grown.edges()) {
      if (e.color == ins.color && ((e.white == x && e.black == y) || (e.white == x_new && e.black == y_new)))
        continue;
      edges.push_back(e);
    }
    edges.push_back({x, y_new, ins.color});
    edges.push_back({x_new, y, ins.color});
    current = Bubble(4, grown.num_white(), grown.num_black(), std::move(edges));
  }
  return current;
}

NecklaceTreeSpec chain_tree(const std::vector<int>& type, int color) {
  NecklaceTreeSpec spec;
  int first_white = 0, prev_first = 0;
  for (int size : type) {
    spec.insertions.push_back({size, prev_first, color});
    prev_first = first_white;
    first_white += size;
  }
  return spec;
}

NecklaceTreeSpec random_tree(std::mt19937_64& rng, int max_vertices, int max_size) {
  if (max_vertices < 2) throw std::invalid_argument("random_tree: need room for at least a dipole");
  NecklaceTreeSpec spec;
  int whites = 0;
  int budget = max_vertices / 2;
  std::uniform_int_distribution<int> color_dist(1, 4);
  do {
    int cap = std::min(max_size, budget);
    int size = std::uniform_int_distribution<int>(1, cap)(rng);
    int target = whites == 0 ? 0 : std::uniform_int_distribution<int>(0, whites - 1)(rng);
    spec.insertions.push_back({size, target, color_dist(rng)});
    whites += size;
    budget -= size;
  } while (budget > 0 && std::uniform_int_distribution<int>(0, 2)(rng) != 0);
  return spec;
}

std::vector<Bubble> catalog_bubbles(int max_vertices) {
  std::map<std::string, Bubble> found;
  auto add = [&](const Bubble& b) { found.emplace(canonical_form(b), b); };
  for (int partner = 3; partner <= 4; ++partner)
    for (int p = 1; 2 * p <= max_vertices; ++p) add(build_necklace(partner, p));

  // Depth-first over insertion sequences.
  std::vector<NecklaceInsertion> stack;
  auto grow = [&](auto&& self, int whites) -> void {
    if (!stack.empty()) add(realize_tree_of_necklaces({stack}));
    for (int size = 1; 2 * (whites + size) <= max_vertices; ++size) {
      if (stack.empty()) {
        stack.push_back({size, 0, 1});
        self(self, whites + size);
        stack.pop_back();
        continue;
      }
      for (int target = 0; target < whites; ++target)
        for (int color = 1; color <= 4; ++color) {
          stack.push_back({size, target, color});
          self(self, whites + size);
          stack.pop_back();
        }
    }
  };
  grow(grow, 0);

  std::vector<Bubble> out;
  for (auto& [label, b] : found) out.push_back(b);
  return out;
}

}  // namespace tmt
