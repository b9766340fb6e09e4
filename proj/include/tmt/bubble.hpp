#pragma once

#include <string>
#include <vector>

namespace tmt {

/// One edge of a bubble, joining a white to a black vertex with a color in 1..D.
struct Edge {
  int white = 0;
  int black = 0;
  int color = 0;
  bool operator==(const Edge&) const = default;
};

/// Bipartite edge-colored multigraph representing a U(N)^D tensor invariant.
///
/// White vertices stand for T, black vertices for its conjugate. A valid
/// bubble is D-regular with a proper coloring: every vertex meets exactly one
/// edge of each color. Construction never throws on malformed input so that
/// validate_bubble() can diagnose it; the neighbor accessors return -1 where
/// the coloring is broken.
class Bubble {
 public:
  Bubble() = default;
  Bubble(int rank, int num_white, int num_black, std::vector<Edge> edges);

  /// The quadratic invariant: one white, one black, D parallel edges.
  static Bubble dipole(int rank = 4);

  int rank() const { return rank_; }
  int num_white() const { return num_white_; }
  int num_black() const { return num_black_; }
  int num_vertices() const { return num_white_ + num_black_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Black neighbor of a white vertex along a color, or -1.
  int black_of(int white, int color) const;
  /// White neighbor of a black vertex along a color, or -1.
  int white_of(int black, int color) const;

  /// True when every invariant of validate_bubble() holds.
  bool is_valid() const;

  bool operator==(const Bubble& other) const;

 private:
  int rank_ = 4;
  int num_white_ = 0;
  int num_black_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> black_of_;  // num_white * rank, -1 when absent
  std::vector<int> white_of_;  // num_black * rank
  bool clash_ = false;         // some vertex carries a color twice or an index is out of range
};

struct ValidityCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidityReport {
  bool valid = true;
  std::vector<ValidityCheck> checks;
  std::string summary() const;
};

/// Per-invariant diagnostics: coloring, regularity, balance, connectivity.
/// A disjoint union passes when `allow_disconnected` is set.
ValidityReport validate_bubble(const Bubble& b, bool allow_disconnected = false);

bool is_connected(const Bubble& b);
/// Connected components, each relabeled compactly (order of first appearance).
std::vector<Bubble> connected_components(const Bubble& b);
Bubble disjoint_union(const Bubble& a, const Bubble& b);
/// Relabel: white w becomes white_perm[w], black v becomes black_perm[v].
Bubble relabeled(const Bubble& b, const std::vector<int>& white_perm, const std::vector<int>& black_perm);

/// Faces of colors (c, c2): cycles alternating the two colors. Each face is
/// listed by its white vertices in traversal order.
std::vector<std::vector<int>> bicolored_face_list(const Bubble& b, int c, int c2);
int bicolored_faces(const Bubble& b, int c, int c2);
/// Sum of bicolored_faces over all unordered color pairs.
int total_bicolored_faces(const Bubble& b);

struct Contraction {
  std::vector<Bubble> bubbles;  // connected pieces on 2(p-1) vertices in total
  int loops = 0;                // closed faces produced, each a factor N
};

/// Join `white` and `black` by a color-0 edge and take the boundary graph.
Contraction contract(const Bubble& b, int black, int white);

/// Join white `white` of `b` to black `black` of `other` by a color-0 edge and
/// take the boundary graph. Vertices of `b` keep their order and come first.
Bubble compose(const Bubble& b, int white, const Bubble& other, int black);

/// Isomorphism invariant under color- and bipartition-preserving relabelings.
/// Disconnected bubbles get the sorted multiset of their component labels.
std::string canonical_form(const Bubble& b);

/// All connected bubbles of the given rank with `num_white` whites, one per
/// isomorphism class, in canonical-label order.
std::vector<Bubble> enumerate_connected_bubbles(int num_white, int rank = 4);

}  // namespace tmt
