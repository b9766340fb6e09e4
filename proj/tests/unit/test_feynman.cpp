#include <map>
#include <random>

#include "doctest.h"
#include "tmt/feynman.hpp"

using namespace tmt;

namespace {

LaurentPolynomial poly(std::initializer_list<std::pair<int, int>> terms) {
  LaurentPolynomial p;
  for (auto [power, coeff] : terms) p.add_term(power, coeff);
  return p;
}

FeynmanGraph closed_graph(std::vector<Bubble> bubbles, std::vector<int> tags, std::vector<int> zero) {
  return FeynmanGraph{std::move(bubbles), std::move(tags), std::move(zero)};
}

}  // namespace

TEST_CASE("closure enumeration counts") {
  CHECK(enumerate_closures({Bubble::dipole()}).size() == 1);
  CHECK(enumerate_closures({quartic_melon(1)}).size() == 2);
  auto two = enumerate_closures({Bubble::dipole(), Bubble::dipole()});
  CHECK(two.size() == 2);
  CHECK(enumerate_closures({Bubble::dipole(), Bubble::dipole()}, 0, true).size() == 1);
  // One free pair on a melon: 2 choices of free white, 2 of free black.
  CHECK(enumerate_closures({quartic_melon(1)}, 1).size() == 4);
  CHECK_THROWS(enumerate_closures({Bubble(4, 1, 2, {})}));
}

TEST_CASE("face histogram agrees with materialized closures") {
  std::vector<std::vector<Bubble>> cases = {
      {quartic_melon(2), build_necklace(3, 2)},
      {build_necklace(2, 3), Bubble::dipole(), quartic_melon(4)},
      {quartic_melon(1), quartic_melon(1), build_necklace(2, 2)},
  };
  for (const auto& bubbles : cases)
    for (bool connected : {false, true}) {
      auto hist = closure_face_histogram(bubbles, connected);
      std::map<int, std::uint64_t> expected;
      for (const auto& g : enumerate_closures(bubbles, 0, connected)) ++expected[g.total_faces()];
      for (std::size_t f = 0; f < hist.size(); ++f) CHECK(hist[f] == expected[static_cast<int>(f)]);
    }
}

TEST_CASE("Gaussian moments") {
  CHECK(gaussian_moment({Bubble::dipole()}) == poly({{1, 1}}));
  CHECK(gaussian_moment({quartic_melon(1)}) == poly({{1, 1}, {-1, 1}}));
  CHECK(gaussian_moment({build_necklace(2, 2)}) == poly({{0, 2}}));
  CHECK(gaussian_moment_direct({quartic_melon(1)}, 2) == Rational(5, 2));
  CHECK(gaussian_moment_direct({Bubble::dipole()}, 3) == 3);
  CHECK_THROWS(gaussian_moment_direct({Bubble::dipole()}, 4));
  CHECK_THROWS(gaussian_moment_direct({build_necklace(2, 5)}, 2));

  std::vector<std::vector<Bubble>> cases = {
      {Bubble::dipole(), Bubble::dipole()},
      {build_necklace(3, 2)},
      {build_necklace(2, 3)},
      {quartic_melon(3), Bubble::dipole()},
      {realize_tree_of_necklaces(chain_tree({1, 2}, 3))},
  };
  for (const auto& b : cases) {
    auto wick = gaussian_moment(b);
    CHECK(wick.evaluate(2) == gaussian_moment_direct(b, 2));
    CHECK(wick.evaluate(3) == gaussian_moment_direct(b, 3));
  }
}

TEST_CASE("degree exponents of single quartic bubbles") {
  ModelSpec full = ModelSpec::full_quartic();
  auto parallel = closed_graph({quartic_melon(1)}, {0}, {0, 1});
  CHECK(parallel.faces(1) == 1);
  CHECK(parallel.faces(2) == 2);
  CHECK(degree_exponent(parallel, full) == 4);
  CHECK(normalized_exponent(parallel, full) == 0);
  auto crossed = closed_graph({quartic_melon(1)}, {0}, {1, 0});
  CHECK(crossed.total_faces() == 5);
  CHECK(degree_exponent(crossed, full) == 2);
  auto neck = closed_graph({build_necklace(2, 2)}, {4}, {0, 1});
  CHECK(neck.total_faces() == 6);
  CHECK(degree_exponent(neck, full) == 4);
  // Wrong tag is rejected.
  auto wrong = closed_graph({build_necklace(2, 2)}, {0}, {0, 1});
  CHECK_THROWS(degree_exponent(wrong, full));
  CHECK_THROWS(degree_exponent(closed_graph({quartic_melon(1)}, {0}, {0, -1}), full));
}

TEST_CASE("1/N bounds for small quartic graphs") {
  ModelSpec full = ModelSpec::full_quartic();
  const auto quartic = quartic_bubbles();
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      std::vector<Bubble> bubbles = {quartic[i], quartic[j]};
      std::vector<int> tags = {i, j};
      for (int pairs = 0; pairs <= 2; ++pairs)
        for (const auto& g : enumerate_closures(bubbles, pairs, true, tags)) {
          int e = normalized_exponent(g, full);
          CHECK(e <= (pairs >= 2 ? -2 : 0));
        }
    }
}

TEST_CASE("boundary graphs") {
  // A bare bubble is its own boundary.
  Bubble n3 = build_necklace(2, 3);
  FeynmanGraph bare{{n3}, {kObservable}, {-1, -1, -1}};
  CHECK(boundary_graph(bare).bubble == n3);
  // One 0-edge on the parallel pair of a melon leaves a dipole.
  FeynmanGraph melon{{quartic_melon(1)}, {kObservable}, {0, -1}};
  CHECK(boundary_graph(melon).bubble == Bubble::dipole());
  CHECK_THROWS(boundary_graph(closed_graph({Bubble::dipole()}, {kObservable}, {0})));
  // Loops of quartic necklaces.
  for (int p = 1; p <= 5; ++p) {
    auto rep = quartic_replacement({{{p, 0, 1}}});
    CHECK(rep.graph.bubbles.size() == static_cast<std::size_t>(p));
    CHECK(canonical_form(boundary_graph(rep.graph).bubble) == canonical_form(build_necklace(2, p)));
  }
}

TEST_CASE("quartic replacement reproduces the tree of necklaces") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    NecklaceTreeSpec spec = random_tree(rng, 14, 3);
    auto rep = quartic_replacement(spec);
    auto bd = boundary_graph(rep.graph);
    // Pull the boundary back to tree labels.
    std::map<int, int> white_label, black_label;
    for (std::size_t k = 0; k < rep.white_rep.size(); ++k) white_label[rep.white_rep[k]] = static_cast<int>(k);
    for (std::size_t k = 0; k < rep.black_rep.size(); ++k) black_label[rep.black_rep[k]] = static_cast<int>(k);
    std::vector<Edge> edges;
    for (const Edge& e : bd.bubble.edges())
      edges.push_back({white_label.at(bd.whites[e.white]), black_label.at(bd.blacks[e.black]), e.color});
    Bubble pulled(4, bd.bubble.num_white(), bd.bubble.num_black(), edges);
    CHECK(pulled == realize_tree_of_necklaces(spec));
    CHECK(rep.graph.connected());
  }
}

TEST_CASE("q_map preserves the degree exponent") {
  auto b3 = NecklaceTreeSpec{{{3, 0, 1}}};
  auto melon = chain_tree({1, 1}, 1);
  auto t22 = chain_tree({2, 2}, 2);
  ModelSpec model = ModelSpec::trees_of_necklaces({{"t3", b3}, {"t11", melon}, {"t22", t22}});
  ModelSpec restricted = ModelSpec::restricted_quartic();

  auto g3 = closed_graph({realize_tree_of_necklaces(b3)}, {0}, {0, 1, 2});
  auto q3 = q_map(g3, model);
  CHECK(q3.bubbles.size() == 3);
  CHECK(degree_exponent(g3, model) == degree_exponent(q3, restricted));

  for (const auto& g : enumerate_closures({quartic_melon(1)}, 0, false, {1})) {
    auto q = q_map(g, model);
    CHECK(q.bubbles.size() == 3);
    CHECK(degree_exponent(g, model) == degree_exponent(q, restricted));
  }
  for (const auto& g : enumerate_closures({realize_tree_of_necklaces(t22)}, 0, false, {2})) {
    auto q = q_map(g, model);
    int necklaces = 0, melons = 0;
    for (int t : q.tags) (t == 4 ? necklaces : melons)++;
    CHECK(necklaces == 4);
    CHECK(melons == 1);
    CHECK(degree_exponent(g, model) == degree_exponent(q, restricted));
  }
  CHECK_THROWS(q_map(closed_graph({build_necklace(3, 2)}, {kObservable}, {0, 1}), model));
}

TEST_CASE("expectation and free energy series") {
  ModelSpec restricted = ModelSpec::restricted_quartic();
  auto c2 = expectation_series(restricted, build_necklace(2, 2), 4, 0);
  CHECK(c2.at(Monomial(5, 0)) == poly({{0, 2}}));

  ModelSpec empty;
  auto c1 = expectation_series(empty, Bubble::dipole(), 3, 2);
  CHECK(c1.coefficients.size() == 1);
  CHECK(c1.at(Monomial{}) == poly({{0, 1}}));

  auto t22 = realize_tree_of_necklaces(chain_tree({2, 2}, 1));
  auto c22 = expectation_series(restricted, t22, 5, 0);
  CHECK(c22.at(Monomial(5, 0)).coefficient(0) == 4);
  CHECK(c22.at(Monomial(5, 0)).max_power() == 0);

  ModelSpec full = ModelSpec::full_quartic();
  auto f = free_energy_series(full, 1);
  CHECK(f.coefficients.count(Monomial(7, 0)) == 0);
  Monomial l1(7, 0);
  l1[0] = 1;
  CHECK(f.at(l1) == poly({{0, -1}, {-2, -1}}));
  Monomial l12(7, 0);
  l12[4] = 1;
  CHECK(f.at(l12).max_power() == 0);
  CHECK(f.at(l12).coefficient(0) == -2);
  auto f2 = free_energy_series(full, 2);
  for (const auto& [m, p] : f2.coefficients) CHECK(p.max_power() <= 0);
  CHECK_THROWS(expectation_series(restricted, t22, 5, 4, 9));
}

TEST_CASE("monomial enumeration") {
  CHECK(monomials_up_to(0, 3).size() == 1);
  CHECK(monomials_up_to(2, 2).size() == 6);
  CHECK(monomials_up_to(5, 3).size() == 56);
}
