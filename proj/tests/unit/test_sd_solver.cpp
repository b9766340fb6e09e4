#include <cmath>
#include <numeric>

#include "doctest.h"
#include "tmt/feynman.hpp"
#include "tmt/necklaces.hpp"
#include "tmt/sd_solver.hpp"

using namespace tmt;

namespace {

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer catalan(int p) { return binomial(2 * p, p) / (p + 1); }

// Rooted planar maps with n four-valent vertices, closed form.
Integer tutte_quartic(int n) {
  Integer pow3 = 1;
  for (int k = 0; k < n; ++k) pow3 *= 3;
  return 2 * pow3 * factorial(2 * n) / (factorial(n) * factorial(n + 2));
}

// Brute force: fix the vertex rotation (0123)(4567)..., run over every
// fixed-point-free involution and count the planar connected ones.
Integer tutte_brute_force(int n) {
  const int darts = 4 * n;
  std::vector<int> sigma(darts), alpha(darts, -1);
  for (int d = 0; d < darts; ++d) sigma[d] = (d % 4 == 3) ? d - 3 : d + 1;
  long long planar = 0;
  auto count = [&]() {
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int comps = n;
    for (int d = 0; d < darts; ++d) {
      int a = find(d / 4), b = find(alpha[d] / 4);
      if (a != b) parent[a] = b, --comps;
    }
    if (comps != 1) return;
    std::vector<char> seen(darts, 0);
    int faces = 0;
    for (int d = 0; d < darts; ++d) {
      if (seen[d]) continue;
      ++faces;
      for (int x = d; !seen[x]; x = sigma[alpha[x]]) seen[x] = 1;
    }
    if (n - 2 * n + faces == 2) ++planar;
  };
  auto rec = [&](auto&& self) -> void {
    int first = 0;
    while (first < darts && alpha[first] >= 0) ++first;
    if (first == darts) return count();
    for (int other = first + 1; other < darts; ++other) {
      if (alpha[other] >= 0) continue;
      alpha[first] = other, alpha[other] = first;
      self(self);
      alpha[first] = alpha[other] = -1;
    }
  };
  rec(rec);
  // Rooted maps = (4n)! / (4^n n!) rotations times involutions over (4n - 1)!.
  Integer pow4 = 1;
  for (int k = 0; k < n; ++k) pow4 *= 4;
  return Integer(darts) * Integer(static_cast<long>(planar)) / (pow4 * factorial(n));
}

Potential single(const Rational& coeff, std::vector<int> vars, const std::string& symbol = "g") {
  Potential v;
  v.terms.push_back({coeff, symbol, std::move(vars)});
  return v;
}

}  // namespace

TEST_CASE("catalan base case") {
  Potential zero;
  auto s = solve_formal(zero, 3, 20);
  for (int p = 0; p <= 20; ++p) CHECK(s.coefficient(p, {}) == Rational(catalan(p)));
  auto n = solve_numeric(zero, {}, 20);
  CHECK(n.converged);
  for (int p = 0; p <= 20; ++p) CHECK(n.values[p] == doctest::Approx(catalan(p).get_d()).epsilon(1e-14));
  auto u = solve_formal_univariate(zero, 5, 20);
  for (int p = 0; p <= 20; ++p) CHECK(u[p][0] == static_cast<long double>(catalan(p).get_d()));
}

TEST_CASE("first order coefficients") {
  auto s = solve_formal(single(-1, {2}, "t"), 4, 3);
  CHECK(s.coefficient(1, {1}) == -4);
  // Melonic V = -t x_1^2: the j = 1 term is -2 t C_1 C_p, so -2 t at p = 1.
  auto m = solve_formal(single(-1, {1, 1}, "t"), 4, 3);
  CHECK(m.coefficient(1, {1}) == -2);
  CHECK(m.coefficient(2, {1}) == -8);
  // Order zero part is Catalan for every p.
  for (int p = 0; p <= 3; ++p) CHECK(m.coefficient(p, {0}) == Rational(catalan(p)));
}

TEST_CASE("univariate agrees with exact solution") {
  Potential v = single(-1, {2});
  v.terms.push_back({Rational(-3, 2), "g", {1, 1}});
  v.terms.push_back({Rational(1, 3), "g", {1, 3}});
  auto exact = solve_formal(v, 12, 3);
  auto fast = solve_formal_univariate(v, 12, 3);
  for (int p = 0; p <= 3; ++p)
    for (int n = 0; n <= 12; ++n) {
      double want = exact.coefficient(p, {n}).get_d();
      CHECK(static_cast<double>(fast[p][n]) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("tutte oracle for quartic planar maps") {
  for (int n = 1; n <= 4; ++n) CHECK(tutte_brute_force(n) == tutte_quartic(n));
  // V = -(g/2) x_2: C_1 counts rooted quartic maps with sign (-1)^n.
  auto s = solve_formal(single(Rational(-1, 2), {2}), 8, 1);
  for (int n = 0; n <= 8; ++n) CHECK(s.coefficient(1, {n}) == Rational((n % 2 ? -1 : 1) * tutte_quartic(n)));
}

TEST_CASE("critical points") {
  std::vector<long double> cat;
  for (int p = 0; p <= 120; ++p) cat.push_back(static_cast<long double>(catalan(p).get_d()));
  auto c = critical_point(cat);
  CHECK(c.radius == doctest::Approx(0.25).epsilon(1e-6));
  CHECK_FALSE(c.alternating);

  auto q = critical_point(single(Rational(-1, 2), {2}), 150);
  CHECK(q.alternating);
  CHECK(1 / q.radius == doctest::Approx(12).epsilon(1e-4));
  CHECK(q.uncertainty < 1e-4);

  auto m = critical_point(single(-1, {1, 1}), 150);
  CHECK(m.radius == doctest::Approx(0.125).epsilon(1e-4));

  CHECK_THROWS(critical_point(single(-1, {2}), 20));
}

TEST_CASE("gamma fits") {
  auto pure = solve_formal_univariate(transition_family(0), 200, 1)[1];
  CHECK(gamma_estimate(pure).gamma == doctest::Approx(-0.5).epsilon(0.02));
  Potential melonic = single(1, {1, 1}, "s");
  auto mel = solve_formal_univariate(melonic, 200, 1)[1];
  auto fit = gamma_estimate(mel);
  CHECK(fit.gamma == doctest::Approx(0.5).epsilon(0.02));
  CHECK(fit.mu == doctest::Approx(8).epsilon(1e-4));
  CHECK(fit.monotone_tail);
  CHECK_THROWS(gamma_estimate(std::vector<long double>(20, 1.0L)));
}

TEST_CASE("transition tuning") {
  auto t = tune_transition(200, 1, 5, 3, 120);
  CHECK(t.w_c == doctest::Approx(1.0 / 24).epsilon(1e-5));
  CHECK(t.phi_c == doctest::Approx(4.0 / 3).epsilon(1e-5));
  CHECK(t.dphi_c == doctest::Approx(32).epsilon(2e-3));
  CHECK(t.kappa == doctest::Approx(3).epsilon(2e-3));
  CHECK(t.s_c == doctest::Approx(3.0 / 128).epsilon(1e-3));
  REQUIRE(t.grid.size() == 3);
  CHECK(t.grid[0].indicator > 0);
  CHECK(t.grid[2].indicator < 0);
  CHECK_THROWS(tune_transition(200, 4, 5, 2));
}

TEST_CASE("numeric mode") {
  auto v = single(-1, {2}, "t");
  auto exact = solve_formal(v, 30, 3);
  for (double t : {-0.01, 0.01}) {
    auto n = solve_numeric(v, {{"t", t}}, 10);
    REQUIRE(n.converged);
    CHECK(n.residual < 1e-12);
    for (int p = 1; p <= 3; ++p) {
      double sum = 0;
      for (int k = 0; k <= 30; ++k) sum += exact.coefficient(p, {k}).get_d() * std::pow(t, k);
      CHECK(n.values[p] == doctest::Approx(sum).epsilon(1e-10));
    }
  }
  // Halving the coupling shrinks the truncation gap by about 2^(K+1).
  auto low = solve_formal(v, 3, 1);
  auto gap = [&](double t) {
    auto n = solve_numeric(v, {{"t", t}}, 6);
    double sum = 0;
    for (int k = 0; k <= 3; ++k) sum += low.coefficient(1, {k}).get_d() * std::pow(t, k);
    return std::fabs(n.values[1] - sum);
  };
  double ratio = gap(0.004) / gap(0.002);
  CHECK(ratio > 12);
  CHECK(ratio < 20);
  // Past the radius 1/24 on the positive-coefficient side.
  auto far = solve_numeric(v, {{"t", -0.05}}, 10, 1e-12, 20000);
  CHECK_FALSE(far.converged);
  CHECK_FALSE(far.message.empty());
}

TEST_CASE("dual pipeline with feynman expansion") {
  ModelSpec model = ModelSpec::restricted_quartic();
  auto sd = solve_formal(Potential::from_model(model), 2, 3);
  for (int p = 1; p <= 2; ++p) {
    Bubble obs = p == 1 ? Bubble::dipole() : build_necklace(p, 2);
    auto ex = expectation_series(model, obs, p + 2, 2);
    for (const auto& [m, poly] : ex.coefficients) {
      CHECK(poly.max_power() <= 0);
      CHECK(poly.coefficient(0) == sd.coefficient(p, m));
    }
    for (const auto& [m, c] : sd.formal[p])
      if (c != 0) CHECK(ex.coefficients.count(m) == 1);
  }
}

TEST_CASE("factorization of trees of necklaces") {
  ModelSpec model = ModelSpec::restricted_quartic();
  auto sd = solve_formal(Potential::from_model(model), 2, 3);
  for (std::vector<int> type : {std::vector<int>{2, 2}, std::vector<int>{1, 2}}) {
    auto spec = chain_tree(type, 1);
    auto ex = expectation_series(model, realize_tree_of_necklaces(spec), spec.omega(), 2);
    auto product = factorized_expectation(sd, type);
    for (const auto& [m, poly] : ex.coefficients) CHECK(poly.coefficient(0) == (product.count(m) ? product[m] : 0));
    for (const auto& [m, c] : product) CHECK(ex.at(m).coefficient(0) == c);
  }
}

TEST_CASE("potential json") {
  auto j = nlohmann::json::parse(R"({"monomials":[{"coeff":"-1/2","powers":{"2":1}},{"coeff":-1,"coupling":"h","powers":{"1":2}}]})");
  auto v = Potential::from_json(j);
  REQUIRE(v.terms.size() == 2);
  CHECK(v.terms[0].coeff == Rational(-1, 2));
  CHECK(v.terms[1].vars == std::vector<int>{1, 1});
  CHECK(v.symbols() == std::vector<std::string>{"g", "h"});
  CHECK(Potential::from_json(v.to_json()).terms[1].coupling == "h");
  CHECK_THROWS(Potential::from_json(nlohmann::json::parse(R"({"monomials":[{"coeff":1,"powers":{"0":1}}]})")));
}
