#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "tmt/bubble.hpp"
#include "tmt/necklaces.hpp"

using namespace tmt;

namespace {

// Necklace traversed the other way round: white k meets black k+1 on colors 3, 4.
Bubble reversed_necklace(int p) {
  std::vector<Edge> edges;
  for (int k = 0; k < p; ++k) {
    edges.push_back({k, k, 1});
    edges.push_back({k, k, 2});
    edges.push_back({k, (k + 1) % p, 3});
    edges.push_back({k, (k + 1) % p, 4});
  }
  return Bubble(4, p, p, edges);
}

}  // namespace

TEST_CASE("validate_bubble on the dipole and its broken variant") {
  CHECK(validate_bubble(Bubble::dipole()).valid);
  Bubble broken(4, 1, 1, {{0, 0, 1}, {0, 0, 3}, {0, 0, 4}});
  auto report = validate_bubble(broken);
  CHECK_FALSE(report.valid);
  CHECK(report.summary().find("color 2") != std::string::npos);
  CHECK(quartic_melon(1).is_valid());
  // Two edges of color 1 at the same white.
  CHECK_FALSE(Bubble(1, 1, 2, {{0, 0, 1}, {0, 1, 1}}).is_valid());
  CHECK_FALSE(disjoint_union(Bubble::dipole(), Bubble::dipole()).is_valid());
  CHECK(validate_bubble(disjoint_union(Bubble::dipole(), Bubble::dipole()), true).valid);
}

TEST_CASE("necklace construction") {
  CHECK(build_necklace(2, 1) == Bubble::dipole());
  CHECK(canonical_form(build_necklace(3, 1)) == canonical_form(Bubble::dipole()));
  Bubble n3 = build_necklace(2, 3);
  CHECK(n3.is_valid());
  CHECK(n3.num_vertices() == 6);
  CHECK(tree_of_necklaces_omega({3}) == 5);
  CHECK_THROWS(build_necklace(2, 0));
  CHECK_THROWS(build_necklace(5, 2));
  for (int p = 2; p <= 6; ++p) {
    Bubble n = build_necklace(2, p);
    CHECK(bicolored_faces(n, 1, 3) == 1);
    CHECK(bicolored_faces(n, 1, 2) == p);
    CHECK(bicolored_faces(n, 3, 4) == p);
  }
}

TEST_CASE("bicolored faces of small bubbles") {
  Bubble d = Bubble::dipole();
  for (int c = 1; c <= 4; ++c)
    for (int c2 = c + 1; c2 <= 4; ++c2) CHECK(bicolored_faces(d, c, c2) == 1);
  Bubble m = quartic_melon(1);
  CHECK(bicolored_faces(m, 1, 2) == 1);
  CHECK(bicolored_faces(m, 3, 4) == 2);
  Bubble n = build_necklace(2, 2);
  CHECK(bicolored_faces(n, 1, 3) == 1);
  CHECK(bicolored_faces(n, 1, 2) == 2);
  // Each face list covers every white exactly once.
  for (const auto& face : bicolored_face_list(n, 1, 2)) CHECK(face.size() == 1);
}

TEST_CASE("trees of necklaces") {
  NecklaceTreeSpec two{{{2, 0, 1}}};
  CHECK(realize_tree_of_necklaces(two) == build_necklace(2, 2));
  CHECK(two.omega() == 4);
  for (int c = 1; c <= 4; ++c) {
    auto spec = chain_tree({1, 1}, c);
    CHECK(spec.omega() == 3);
    CHECK(realize_tree_of_necklaces(spec) == quartic_melon(c));
  }
  for (int k = 1; k <= 6; ++k) {
    auto spec = chain_tree(std::vector<int>(k, 1), 1 + k % 4);
    Bubble b = realize_tree_of_necklaces(spec);
    CHECK(b.is_valid());
    CHECK(b.num_vertices() == 2 * k);
    CHECK(spec.omega() == 3);
  }
  auto t22 = chain_tree({2, 2}, 3);
  CHECK(t22.omega() == 5);
  CHECK(realize_tree_of_necklaces(t22).is_valid());
  CHECK_THROWS(realize_tree_of_necklaces({{{1, 0, 1}, {1, 7, 1}}}));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto spec = random_tree(rng, 12, 3);
    Bubble b = realize_tree_of_necklaces(spec);
    CHECK(b.is_valid());
    int n = static_cast<int>(spec.insertions.size()), sum = 0;
    for (auto& ins : spec.insertions) sum += ins.size;
    CHECK(spec.omega() == 3 - n + sum);
  }
}

TEST_CASE("contract") {
  auto c = contract(Bubble::dipole(), 0, 0);
  CHECK(c.bubbles.empty());
  CHECK(c.loops == 4);
  Bubble m = quartic_melon(1);
  auto parallel = contract(m, 0, 0);
  REQUIRE(parallel.bubbles.size() == 1);
  CHECK(parallel.bubbles[0] == Bubble::dipole());
  CHECK(parallel.loops == 3);
  auto crossed = contract(m, 1, 0);
  REQUIRE(crossed.bubbles.size() == 1);
  CHECK(parallel.bubbles[0] == Bubble::dipole());
  CHECK(crossed.loops == 1);
  // Contracting a necklace along a {3,4} pair of size 3 splits off nothing.
  auto n = contract(build_necklace(2, 3), 2, 0);
  int vertices = 0;
  for (auto& b : n.bubbles) vertices += b.num_vertices();
  CHECK(vertices == 4);
}

TEST_CASE("compose") {
  Bubble d = Bubble::dipole();
  CHECK(compose(d, 0, d, 0) == d);
  for (int p = 1; p <= 3; ++p)
    for (int q = 1; q <= 3; ++q) {
      Bubble r = compose(build_necklace(2, p), 0, build_necklace(2, q), 0);
      CHECK(r.num_vertices() == 2 * (p + q - 1));
      CHECK(canonical_form(r) == canonical_form(build_necklace(2, p + q - 1)));
    }
}

TEST_CASE("canonical form") {
  Bubble m = quartic_melon(1);
  Bubble m2 = relabeled(m, {1, 0}, {1, 0});
  Bubble m3 = relabeled(m, {0, 1}, {1, 0});
  CHECK(canonical_form(m) == canonical_form(m2));
  CHECK(canonical_form(m) != canonical_form(quartic_melon(2)));
  CHECK(canonical_form(m3) == canonical_form(m));
  CHECK(canonical_form(build_necklace(2, 3)) == canonical_form(reversed_necklace(3)));
  CHECK(canonical_form(build_necklace(2, 2)) != canonical_form(build_necklace(3, 2)));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Bubble b = realize_tree_of_necklaces(random_tree(rng, 12, 3));
    std::vector<int> wp(b.num_white()), bp(b.num_black());
    std::iota(wp.begin(), wp.end(), 0);
    std::iota(bp.begin(), bp.end(), 0);
    std::shuffle(wp.begin(), wp.end(), rng);
    std::shuffle(bp.begin(), bp.end(), rng);
    Bubble r = relabeled(b, wp, bp);
    CHECK(canonical_form(r) == canonical_form(b));
    CHECK(total_bicolored_faces(r) == total_bicolored_faces(b));
    // Contraction commutes with relabeling.
    auto c1 = contract(b, 0, 0);
    auto c2 = contract(r, bp[0], wp[0]);
    CHECK(c1.loops == c2.loops);
    std::multiset<std::string> l1, l2;
    for (auto& x : c1.bubbles) l1.insert(canonical_form(x));
    for (auto& x : c2.bubbles) l2.insert(canonical_form(x));
    CHECK(l1 == l2);
  }
}

TEST_CASE("bubble enumeration") {
  CHECK(enumerate_connected_bubbles(1).size() == 1);
  CHECK(enumerate_connected_bubbles(2).size() == 7);
  auto quartic = quartic_bubbles();
  std::set<std::string> labels;
  for (auto& b : quartic) labels.insert(canonical_form(b));
  CHECK(labels.size() == 7);
  for (auto& b : enumerate_connected_bubbles(2)) CHECK(labels.count(canonical_form(b)) == 1);
  auto cat = catalog_bubbles(6);
  for (auto& b : cat) CHECK(b.is_valid());
}
