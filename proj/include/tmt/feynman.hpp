#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tmt/bubble.hpp"
#include "tmt/laurent.hpp"
#include "tmt/model.hpp"

namespace tmt {

/// Tag of a bubble that is an observable rather than a model interaction.
inline constexpr int kObservable = -1;

/// Bubbles glued by color-0 edges.
///
/// Vertices are numbered globally in the order of disjoint_union over
/// `bubbles`: the whites of bubble 0 come first, then those of bubble 1, and
/// likewise for blacks. zero_edges[w] is the black matched to white w, or -1
/// for a free white.
struct FeynmanGraph {
  std::vector<Bubble> bubbles;
  std::vector<int> tags;
  std::vector<int> zero_edges;

  int rank() const;
  int num_white() const;
  /// Disjoint union of all bubbles, in global numbering.
  Bubble combined() const;
  int bubble_of_white(int w) const;
  int bubble_of_black(int b) const;

  int num_zero_edges() const;
  bool closed() const { return num_zero_edges() == num_white(); }
  int free_pairs() const { return num_white() - num_zero_edges(); }
  std::vector<int> free_whites() const;
  std::vector<int> free_blacks() const;

  /// Connected as the union of bubble edges and 0-edges.
  bool connected() const;
  /// Closed faces of colors (0, color).
  int faces(int color) const;
  int total_faces() const;
  /// Broken faces of colors (0, color), from a free white to a free black.
  int broken_faces(int color) const;

  /// Throws when the matching is not injective or indices are out of range.
  void check() const;
};

/// All labeled graphs obtained by leaving `free_pairs` whites and blacks free
/// and matching the rest. Tags default to kObservable. Capped at 9 whites.
std::vector<FeynmanGraph> enumerate_closures(const std::vector<Bubble>& bubbles, int free_pairs = 0,
                                             bool connected_only = false, std::vector<int> tags = {});

/// Histogram of the total closed-face count over all perfect matchings of the
/// bubbles: result[F] is the number of labeled closures with F faces. With
/// `connected_only`, disconnected closures are skipped. No materialization;
/// the cost is about e * W! elementary steps for W whites.
std::vector<std::uint64_t> closure_face_histogram(const std::vector<Bubble>& bubbles, bool connected_only);

/// e(g) = sum_c F_0c - alpha E_0 + sum of omega over the bubbles. Bubbles
/// tagged kObservable contribute `observable_omega`.
int degree_exponent(const FeynmanGraph& g, const ModelSpec& model, int observable_omega = 0);

/// Exponent after the large-N normalization: e(g) - D for closed graphs and
/// sum F_0c(closed) - alpha (E_0 + k) + sum omega for k free pairs. Leading
/// order is 0 in both cases.
int normalized_exponent(const FeynmanGraph& g, const ModelSpec& model);

/// Boundary graph of an open graph: one vertex per free vertex, one edge of
/// color c per broken (0c) face.
struct BoundaryGraph {
  Bubble bubble;              // possibly disconnected
  std::vector<int> whites;    // global free white behind each boundary white
  std::vector<int> blacks;    // global free black behind each boundary black
  std::vector<Bubble> components() const { return connected_components(bubble); }
};
BoundaryGraph boundary_graph(const FeynmanGraph& g);

/// Replace every tree of necklaces by its open quartic graph: a loop of p
/// quartic necklaces per necklace of size p, and a melon of the insertion
/// color per insertion. The result is tagged against
/// ModelSpec::restricted_quartic() and has the same degree exponent.
FeynmanGraph q_map(const FeynmanGraph& g, const std::vector<NecklaceTreeSpec>& trees);
/// Trees taken from the model entries of the tags.
FeynmanGraph q_map(const FeynmanGraph& g, const ModelSpec& model);

/// Random connected closed graph over random trees of necklaces with at most
/// `max_vertices` bubble vertices in total, with the model of its trees.
struct RandomTreeGraph {
  ModelSpec model;
  FeynmanGraph graph;
};
RandomTreeGraph random_tree_graph(std::mt19937_64& rng, int max_vertices, int max_bubbles = 3);

/// Open quartic graph of one tree of necklaces, with the identification of
/// its boundary vertices: tree white k is graph white white_rep[k].
struct QuarticReplacement {
  FeynmanGraph graph;
  std::vector<int> white_rep;
  std::vector<int> black_rep;
};
QuarticReplacement quartic_replacement(const NecklaceTreeSpec& spec);

/// Gaussian moment by Wick's theorem: sum over all labeled closures of
/// N^(F - alpha E_0). Exact in N.
LaurentPolynomial gaussian_moment(const std::vector<Bubble>& bubbles);
/// Same moment by summing every index assignment at fixed N. Requires N <= 3
/// and at most 8 vertices.
Rational gaussian_moment_direct(const std::vector<Bubble>& bubbles, int n);

/// Expectation of an observable in the model, normalized by N^(omega - D),
/// as a series in the couplings up to total order K. Coefficients use the
/// labeled expansion: (-1)^n / n! per coupling, summed over connected
/// closures. Throws when a term would need more than `max_whites` whites.
CouplingSeries expectation_series(const ModelSpec& model, const Bubble& observable, int observable_omega, int order,
                                  int max_whites = 11);

/// log Z / N^D as a series over connected vacuum graphs, zero at order 0.
CouplingSeries free_energy_series(const ModelSpec& model, int order, int max_whites = 11);

/// Monomials of total degree 0..order in `count` variables, graded.
std::vector<Monomial> monomials_up_to(int count, int order);

}  // namespace tmt
