#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "tmt/feynman.hpp"

namespace tmt {

/// Edge labels: 1..4 monocolored, 12, 13, 14 bicolored.
bool is_monocolored(int label);
/// Whether an edge of this label belongs to the submap M_color.
bool carries_color(int label, int color);
std::string label_name(int label);

/// Intermediate-field map of a quartic model.
///
/// Edge k owns the half-edges 2k and 2k+1. Each vertex lists its half-edges
/// in cyclic order; a cilium is the entry kCilium and occupies one slot.
struct StrandedMap {
  static constexpr int kCilium = -1;

  std::vector<int> labels;
  std::vector<std::vector<int>> rotations;

  int num_vertices() const { return static_cast<int>(rotations.size()); }
  int num_edges() const { return static_cast<int>(labels.size()); }
  int num_cilia() const;
  /// Vertex holding a half-edge.
  std::vector<int> half_edge_vertex() const;
  /// Endpoints of an edge.
  std::array<int, 2> ends(int edge) const;

  /// Throws on malformed rotations or bad labels; one cilium per vertex at most.
  void check() const;
  bool connected() const;

  /// F_0c: faces of the submap M_c with the inherited rotation. A vertex
  /// without edges of M_c has one face. A face through a cilium is open and
  /// not counted.
  int faces(int color) const;
  int total_faces() const;
  /// 3 * monocolored edges + 2 * bicolored edges - total faces. Connected maps only.
  int omega() const;

  /// Map whose vertices are the cycles of `sigma` on darts 0..n-1, where
  /// darts 2k, 2k+1 form edge k and a dart n-1 beyond the edges is a cilium.
  static StrandedMap from_permutation(const std::vector<int>& sigma, const std::vector<int>& labels);
  /// Single vertex, optionally ciliated.
  static StrandedMap vertex(bool cilium = false);
  /// Add an edge; positions are insertion slots in the two rotations.
  int add_edge(int label, int u, int pos_u, int v, int pos_v);

  bool operator==(const StrandedMap&) const = default;
};

/// Genus from V - E + F = 2 - 2g of the map formed by the edges in `edges`,
/// restricted to the connected component through `vertex`.
int submap_genus(const StrandedMap& m, const std::vector<int>& edges, int vertex);
/// Genus of a connected map whose edges all have one bicolored label.
int genus(const StrandedMap& m);

/// Connected components of the map cut down to `edges`: each entry lists the
/// edges of one component, components with no edges included as empty lists
/// with their vertex in `vertices`.
struct SubmapComponent {
  std::vector<int> vertices;
  std::vector<int> edges;
};
std::vector<SubmapComponent> submap_components(const StrandedMap& m, const std::vector<int>& edges);

/// Result of deleting one edge.
struct DeletionReport {
  std::vector<StrandedMap> parts;  // one map, or two when the edge was a cut-edge
  bool cut_edge = false;
  bool monocolored = false;
  int omega_before = 0;
  std::vector<int> omega_after;
  bool holds = false;    // the inequality or equality expected for this case
  std::string relation;  // human-readable statement that was checked
};
DeletionReport delete_edge(const StrandedMap& m, int edge);
bool is_cut_edge(const StrandedMap& m, int edge);

enum class QuarticModel { Restricted, Full };

struct ComponentWitness {
  int type = 0;  // 12, 13, 14, or 0 for a component of the whole bicolored submap
  std::vector<int> vertices;
  std::vector<int> edges;
  int genus = 0;
};

struct LOCertificate {
  bool leading_order = false;
  std::vector<int> non_cut_monocolored;
  std::vector<ComponentWitness> non_planar;
  std::vector<int> cycle;  // edges of a cycle in G_M (restricted) or T_M (full)
  int omega = 0;
  int leading_omega = -4;  // -4 for vacuum maps, 0 with a cilium
  bool agrees_with_omega = false;
  bool witnesses_empty() const { return non_cut_monocolored.empty() && non_planar.empty() && cycle.empty(); }
  std::string describe() const;
};

/// Structural leading-order test with witnesses. The verdict is the
/// structural one; `agrees_with_omega` records whether it matches Omega.
LOCertificate classify_lo(const StrandedMap& m, QuarticModel model);

/// (rho_2, rho_3, rho_4): components of each M_1j, isolated vertices included.
std::array<int, 3> component_counts(const StrandedMap& m);

/// Labels allowed by a model.
std::vector<int> model_labels(QuarticModel model);

/// Every connected map with exactly `edges` edges and `cilia` (0 or 1)
/// cilia. With `dedup`, one map per isomorphism class (relabeling of edges
/// and of half-edges within an edge); otherwise every labeled permutation
/// and label tuple. Returning false from the callback stops the stream.
void for_each_map(QuarticModel model, int edges, int cilia, bool dedup,
                  const std::function<bool(const StrandedMap&)>& callback);
/// All connected maps with 0..max_edges edges.
std::vector<StrandedMap> enumerate_maps(QuarticModel model, int max_edges, int cilia, bool dedup = true);

/// Label of a quartic bubble: 1..4 for melons, 12/13/14 for necklaces, 0 otherwise.
int quartic_label(const Bubble& b);

/// Intermediate-field map of a closed or 2-point quartic graph. Darts are the
/// vertex pairs of the bubbles: a melon of color i pairs vertices sharing all
/// colors but i, a necklace 1i pairs vertices sharing the two colors outside
/// {1, i}. Bubble k owns darts 2k (the pair of its white 0) and 2k+1. Vertex
/// rotations follow sigma(P) = pair of the black matched to the white of P.
StrandedMap from_feynman(const FeynmanGraph& g);

}  // namespace tmt
