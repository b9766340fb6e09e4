#include <algorithm>
#include <map>
#include <numeric>

#include "doctest.h"
#include "tmt/if_maps.hpp"

using namespace tmt;

namespace {

StrandedMap two_vertices(int label) {
  StrandedMap m;
  m.rotations = {{}, {}};
  m.add_edge(label, 0, 0, 1, 0);
  return m;
}

StrandedMap one_loop(int label) {
  StrandedMap m = StrandedMap::vertex();
  m.add_edge(label, 0, 0, 0, 1);
  return m;
}

// Rotation a b a b at a single vertex.
StrandedMap interleaved(int l1, int l2) {
  StrandedMap m = StrandedMap::vertex();
  m.labels = {l1, l2};
  m.rotations = {{0, 2, 1, 3}};
  return m;
}

// Automorphisms counted by brute force over edge relabelings and half-edge swaps.
long automorphisms(const StrandedMap& m) {
  const int e = m.num_edges();
  const int n = 2 * e + m.num_cilia();
  std::vector<int> sigma(n);
  {
    int cil = 2 * e;
    for (const auto& rot : m.rotations) {
      std::vector<int> ids;
      for (int h : rot) ids.push_back(h == StrandedMap::kCilium ? cil++ : h);
      for (std::size_t k = 0; k < ids.size(); ++k) sigma[ids[k]] = ids[(k + 1) % ids.size()];
    }
  }
  std::vector<int> p(e);
  std::iota(p.begin(), p.end(), 0);
  long count = 0;
  do {
    for (int flips = 0; flips < (1 << e); ++flips) {
      std::vector<int> g(n);
      bool labels_ok = true;
      for (int k = 0; k < e; ++k) {
        labels_ok &= m.labels[p[k]] == m.labels[k];
        for (int s = 0; s < 2; ++s) g[2 * k + s] = 2 * p[k] + (s ^ ((flips >> k) & 1));
      }
      for (int d = 2 * e; d < n; ++d) g[d] = d;
      bool fixes = labels_ok;
      for (int d = 0; d < n && fixes; ++d) fixes = g[sigma[d]] == sigma[g[d]];
      count += fixes;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

long long factorial_ll(int n) { return n <= 1 ? 1 : n * factorial_ll(n - 1); }

}  // namespace

TEST_CASE("omega of small maps") {
  CHECK(StrandedMap::vertex().omega() == -4);
  CHECK(StrandedMap::vertex(true).omega() == 0);
  auto mono = two_vertices(1);
  CHECK(mono.total_faces() == 7);
  CHECK(mono.omega() == -4);
  auto bi = two_vertices(12);
  CHECK(bi.faces(1) == 1);
  CHECK(bi.faces(2) == 1);
  CHECK(bi.faces(3) == 2);
  CHECK(bi.faces(4) == 2);
  CHECK(bi.omega() == -4);
  StrandedMap split;
  split.rotations = {{}, {}};
  CHECK_THROWS(split.omega());
}

TEST_CASE("genus") {
  CHECK(genus(one_loop(12)) == 0);
  CHECK(one_loop(12).omega() == -4);
  auto torus = interleaved(12, 12);
  CHECK(genus(torus) == 1);
  CHECK(torus.omega() == 0);
  StrandedMap path;
  path.rotations = {{}, {}, {}};
  path.add_edge(13, 0, 0, 1, 0);
  path.add_edge(13, 1, 1, 2, 0);
  CHECK(genus(path) == 0);
  CHECK_THROWS(genus(two_vertices(1)));
  CHECK_THROWS(genus(interleaved(12, 13)));
}

TEST_CASE("edge deletion") {
  StrandedMap doubled;
  doubled.rotations = {{}, {}};
  doubled.add_edge(1, 0, 0, 1, 0);
  doubled.add_edge(1, 0, 1, 1, 1);
  auto r = delete_edge(doubled, 1);
  CHECK_FALSE(r.cut_edge);
  CHECK(r.omega_before - r.omega_after[0] == 2);
  CHECK(r.holds);

  auto loop = delete_edge(one_loop(12), 0);
  CHECK(loop.omega_before == loop.omega_after[0]);
  CHECK(loop.holds);

  auto bridge = delete_edge(two_vertices(1), 0);
  CHECK(bridge.cut_edge);
  REQUIRE(bridge.parts.size() == 2);
  CHECK(bridge.omega_after == std::vector<int>{-4, -4});
  CHECK(bridge.holds);
}

TEST_CASE("component counts") {
  CHECK(component_counts(StrandedMap::vertex()) == std::array<int, 3>{1, 1, 1});
  CHECK(component_counts(two_vertices(12)) == std::array<int, 3>{1, 2, 2});
  StrandedMap tri;
  tri.rotations = {{}, {}, {}};
  tri.add_edge(12, 0, 0, 1, 0);
  tri.add_edge(13, 1, 1, 2, 0);
  tri.add_edge(14, 2, 1, 0, 1);
  auto rho = component_counts(tri);
  CHECK(rho[0] + rho[1] + rho[2] <= 7);
  CHECK_THROWS(component_counts(two_vertices(2)));
}

TEST_CASE("leading-order classifier") {
  auto tree = two_vertices(3);
  tree.rotations.push_back({});
  tree.add_edge(12, 1, 1, 2, 0);
  auto cert = classify_lo(tree, QuarticModel::Restricted);
  CHECK(cert.leading_order);
  CHECK(cert.agrees_with_omega);
  CHECK(cert.witnesses_empty());

  auto torus = classify_lo(interleaved(12, 12), QuarticModel::Restricted);
  CHECK_FALSE(torus.leading_order);
  REQUIRE(torus.non_planar.size() == 1);
  CHECK(torus.non_planar[0].genus == 1);
  CHECK(torus.agrees_with_omega);

  StrandedMap tri;
  tri.rotations = {{}, {}, {}};
  tri.add_edge(12, 0, 0, 1, 0);
  tri.add_edge(13, 1, 1, 2, 0);
  tri.add_edge(14, 2, 1, 0, 1);
  CHECK(tri.omega() >= -2);
  auto t = classify_lo(tri, QuarticModel::Full);
  CHECK_FALSE(t.leading_order);
  CHECK(t.cycle.size() == 3);
  CHECK(t.agrees_with_omega);
  CHECK_THROWS(classify_lo(tri, QuarticModel::Restricted));

  // Interleaved loops of two different types are planar separately but not together.
  auto mixed = classify_lo(interleaved(12, 13), QuarticModel::Full);
  CHECK_FALSE(mixed.leading_order);
  CHECK(mixed.agrees_with_omega);

  auto mono_loop = classify_lo(one_loop(1), QuarticModel::Restricted);
  CHECK_FALSE(mono_loop.leading_order);
  CHECK(mono_loop.non_cut_monocolored == std::vector<int>{0});
}

TEST_CASE("map census") {
  auto e0 = enumerate_maps(QuarticModel::Restricted, 0, 0);
  REQUIRE(e0.size() == 1);
  CHECK(e0[0] == StrandedMap::vertex());
  std::vector<StrandedMap> e1;
  for_each_map(QuarticModel::Restricted, 1, 0, true, [&](const StrandedMap& m) {
    e1.push_back(m);
    return true;
  });
  CHECK(e1.size() == 10);
  for (const auto& m : e1) {
    int w = m.omega();
    CHECK((w == -4 || w == -2 || w == 0));
  }

  // Orbit-stabilizer: each class stands for |G| / |Aut| labeled maps.
  for (auto model : {QuarticModel::Restricted, QuarticModel::Full})
    for (int cilia = 0; cilia <= 1; ++cilia)
      for (int e = 1; e <= 3; ++e) {
        long long labeled = 0, weighted = 0;
        for_each_map(model, e, cilia, false, [&](const StrandedMap&) {
          ++labeled;
          return true;
        });
        const long long group = factorial_ll(e) << e;
        for_each_map(model, e, cilia, true, [&](const StrandedMap& m) {
          weighted += group / automorphisms(m);
          return true;
        });
        CHECK(labeled == weighted);
      }
  CHECK_THROWS(enumerate_maps(QuarticModel::Full, 6, 0));
}

TEST_CASE("from_feynman") {
  auto parallel = from_feynman(FeynmanGraph{{quartic_melon(1)}, {0}, {0, 1}});
  CHECK(parallel.num_vertices() == 2);
  CHECK(parallel.labels == std::vector<int>{1});
  CHECK(-parallel.omega() == 4);
  auto crossed = from_feynman(FeynmanGraph{{quartic_melon(1)}, {0}, {1, 0}});
  CHECK(crossed.num_vertices() == 1);
  CHECK(-crossed.omega() == 2);
  // Necklace closed along its {3,4} pairs.
  auto neck = from_feynman(FeynmanGraph{{build_necklace(2, 2)}, {4}, {1, 0}});
  CHECK(neck.num_vertices() == 2);
  CHECK(neck.labels == std::vector<int>{12});
  CHECK(-neck.omega() == 4);
  CHECK_THROWS(from_feynman(FeynmanGraph{{build_necklace(2, 3)}, {0}, {0, 1, 2}}));

  // Two quartic bubbles: exponents and cilia agree on every closure.
  ModelSpec full = ModelSpec::full_quartic();
  auto quartic = quartic_bubbles();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int pairs = 0; pairs <= 1; ++pairs)
        for (const auto& g : enumerate_closures({quartic[i], quartic[j]}, pairs, true, {i, j})) {
          auto m = from_feynman(g);
          CHECK(m.num_cilia() == pairs);
          int e = pairs ? normalized_exponent(g, full) : degree_exponent(g, full);
          CHECK(e == -m.omega());
        }
}
