#pragma once

#include <random>
#include <vector>

#include "tmt/bubble.hpp"

namespace tmt {

/// Necklace of size p and color type (1, partner): a cycle of 2p vertices
/// alternating doubled edges {1, partner} and doubled edges of the two
/// remaining colors. Size 1 is the dipole, size 2 the quartic necklace.
///
/// Layout: white k and black k share colors {1, partner}; white k and black
/// k-1 (mod p) share the complementary pair.
Bubble build_necklace(int partner, int p);

/// Quartic melonic bubble B_{C_i}: two white/black pairs sharing every color
/// but `color`, which crosses between the pairs.
Bubble quartic_melon(int color);

/// The seven connected quartic bubbles of rank 4: melons 1..4 then necklaces 12, 13, 14.
std::vector<Bubble> quartic_bubbles();

/// One step of a tree of necklaces: splice a type-12 necklace of `size`,
/// opened on `color`, into the edge of that color at `target_white` of the
/// current bubble. The target of the first insertion is ignored.
struct NecklaceInsertion {
  int size = 1;
  int target_white = 0;
  int color = 1;
};

struct NecklaceTreeSpec {
  std::vector<NecklaceInsertion> insertions;

  /// Sorted multiset of necklace sizes.
  std::vector<int> type() const;
  /// N-exponent 3 - n + sum of sizes.
  int omega() const;
  int num_vertices() const;
};

/// Omega for a type multiset alone.
int tree_of_necklaces_omega(const std::vector<int>& type);

/// Bubble of a tree of necklaces. New necklaces append their vertices: the
/// k-th necklace of size p occupies the next p white and p black indices,
/// and it is opened at its first white vertex.
Bubble realize_tree_of_necklaces(const NecklaceTreeSpec& spec);

/// Insertion sequence whose realization has the given type, every later
/// necklace inserted on `color` at the first white of the previous necklace.
NecklaceTreeSpec chain_tree(const std::vector<int>& type, int color);

/// Random tree of necklaces with at most `max_vertices` vertices.
NecklaceTreeSpec random_tree(std::mt19937_64& rng, int max_vertices, int max_size = 3);

/// Trees of necklaces of type 12 with at most `max_vertices` vertices, plus the
/// necklaces of types 13 and 14, one per isomorphism class.
std::vector<Bubble> catalog_bubbles(int max_vertices);

}  // namespace tmt
