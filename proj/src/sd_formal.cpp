#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tmt/feynman.hpp"
#include "tmt/sd_solver.hpp"

namespace tmt {

// ---------------------------------------------------------------------------
// Potential

std::vector<std::string> Potential::symbols() const {
  std::vector<std::string> out;
  for (const auto& t : terms)
    if (std::find(out.begin(), out.end(), t.coupling) == out.end()) out.push_back(t.coupling);
  return out;
}

int Potential::max_variable() const {
  int d = 0;
  for (const auto& t : terms)
    for (int v : t.vars) d = std::max(d, v);
  return d;
}

void Potential::check() const {
  for (const auto& t : terms) {
    if (t.vars.empty()) throw std::invalid_argument("potential: constant terms are not allowed");
    for (int v : t.vars)
      if (v < 1) throw std::invalid_argument("potential: variable indices start at 1");
    if (!std::is_sorted(t.vars.begin(), t.vars.end())) throw std::invalid_argument("potential: unsorted variables");
    if (t.coupling.empty()) throw std::invalid_argument("potential: empty coupling symbol");
  }
}

Potential Potential::substituted(const std::map<std::string, Rational>& values, const std::string& symbol) const {
  Potential out;
  for (const auto& t : terms) {
    auto it = values.find(t.coupling);
    Rational value = it == values.end() ? Rational(1) : it->second;
    if (value == 0) continue;
    out.terms.push_back({t.coeff * value, symbol, t.vars});
  }
  return out;
}

Potential Potential::from_model(const ModelSpec& model) {
  Potential out;
  for (const auto& e : model.entries) {
    if (!e.tree) throw std::invalid_argument("potential: entry " + e.coupling + " is not a tree of necklaces");
    out.terms.push_back({Rational(-1), e.coupling, e.tree->type()});
  }
  return out;
}

Potential Potential::from_json(const nlohmann::json& j) {
  Potential out;
  if (!j.contains("monomials")) throw std::invalid_argument("potential JSON needs a 'monomials' array");
  for (const auto& m : j.at("monomials")) {
    PotentialTerm t;
    const auto& c = m.at("coeff");
    if (c.is_string()) {
      t.coeff = rational_from_string(c.get<std::string>());
    } else if (c.is_number_integer()) {
      t.coeff = Rational(c.get<long>());
    } else {
      t.coeff = Rational(c.get<double>());
    }
    t.coupling = m.value("coupling", std::string("g"));
    for (const auto& [var, power] : m.at("powers").items()) {
      int index = std::stoi(var);
      for (int k = 0; k < power.get<int>(); ++k) t.vars.push_back(index);
    }
    std::sort(t.vars.begin(), t.vars.end());
    out.terms.push_back(std::move(t));
  }
  out.check();
  return out;
}

nlohmann::json Potential::to_json() const {
  nlohmann::json monomials = nlohmann::json::array();
  for (const auto& t : terms) {
    nlohmann::json powers = nlohmann::json::object();
    for (int v : t.vars) powers[std::to_string(v)] = powers.value(std::to_string(v), 0) + 1;
    monomials.push_back({{"coeff", rational_to_string(t.coeff)}, {"coupling", t.coupling}, {"powers", powers}});
  }
  return {{"monomials", monomials}};
}

Rational DiskSeries::coefficient(int p, const Monomial& m) const {
  if (p < 0 || p >= static_cast<int>(formal.size())) throw std::out_of_range("disk series: p out of range");
  auto it = formal[p].find(m);
  return it == formal[p].end() ? Rational(0) : it->second;
}

namespace {

// Highest C_p needed at coupling degree n so that C_{p_max} is exact at
// degree `order`: each degree trades for up to d - 1 extra boundary length.
int window(int p_max, int d, int order, int n) { return std::max(p_max, d) + (order - n) * (d - 1); }

// A term dV/dx_j = coeff * prod(others), with the multiplicity folded in.
template <class T>
struct Derivative {
  T coeff;
  int j;
  int symbol;
  std::vector<int> others;
};

template <class T>
std::vector<Derivative<T>> derivatives(const Potential& v, const std::vector<std::string>& symbols,
                                       T (*convert)(const Rational&)) {
  std::vector<Derivative<T>> out;
  for (const auto& t : v.terms) {
    int symbol = static_cast<int>(std::find(symbols.begin(), symbols.end(), t.coupling) - symbols.begin());
    for (std::size_t k = 0; k < t.vars.size(); ++k) {
      if (k > 0 && t.vars[k] == t.vars[k - 1]) continue;
      int mult = static_cast<int>(std::count(t.vars.begin(), t.vars.end(), t.vars[k]));
      std::vector<int> others = t.vars;
      others.erase(others.begin() + k);
      out.push_back({convert(t.coeff * mult), t.vars[k], symbol, others});
    }
  }
  return out;
}

Rational to_rational(const Rational& q) { return q; }
long double to_long_double(const Rational& q) {
  // Exact enough for any coefficient given as a double or small rational.
  return static_cast<long double>(q.get_d());
}

// Monomials by degree, with multiplication and shift tables.
struct GradedBasis {
  int order = 0;
  int vars = 0;
  std::vector<std::vector<Monomial>> by_degree;
  std::map<Monomial, int> index;
  std::vector<std::vector<std::vector<int>>> mul;    // [d1][d2][i1 * dim(d2) + i2]
  std::vector<std::vector<std::vector<int>>> shift;  // [symbol][d][i] -> index at degree d + 1

  GradedBasis(int vars_, int order_) : order(order_), vars(vars_) {
    by_degree.resize(order + 1);
    for (const auto& m : monomials_up_to(vars, order)) {
      int d = total_degree(m);
      index[m] = static_cast<int>(by_degree[d].size());
      by_degree[d].push_back(m);
    }
    mul.resize(order + 1);
    for (int d1 = 0; d1 <= order; ++d1) {
      mul[d1].resize(order + 1 - d1);
      for (int d2 = 0; d1 + d2 <= order; ++d2)
        for (const auto& a : by_degree[d1])
          for (const auto& b : by_degree[d2]) {
            Monomial c(vars);
            for (int s = 0; s < vars; ++s) c[s] = a[s] + b[s];
            mul[d1][d2].push_back(index.at(c));
          }
    }
    shift.resize(vars);
    for (int s = 0; s < vars; ++s) {
      shift[s].resize(order);
      for (int d = 0; d < order; ++d)
        for (auto m : by_degree[d]) {
          ++m[s];
          shift[s][d].push_back(index.at(m));
        }
    }
  }
  int dim(int d) const { return static_cast<int>(by_degree[d].size()); }
};

using Piece = std::vector<Rational>;

void mul_add(const GradedBasis& basis, int d1, const Piece& a, int d2, const Piece& b, Piece& out,
             const Rational& scale = 1) {
  const auto& table = basis.mul[d1][d2];
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    Rational ai = a[i] * scale;
    for (std::size_t k = 0; k < nb; ++k)
      if (sgn(b[k]) != 0) out[table[i * nb + k]] += ai * b[k];
  }
}

}  // namespace

DiskSeries solve_formal(const Potential& v, int order, int p_max) {
  v.check();
  if (order < 0 || p_max < 0) throw std::invalid_argument("solve_formal: negative order or size");
  DiskSeries out;
  out.mode = DiskSeries::Mode::Formal;
  out.order = order;
  out.symbols = v.symbols();
  const int vars = static_cast<int>(out.symbols.size());
  const int d = std::max(1, v.max_variable());
  GradedBasis basis(vars, order);
  const int top = window(p_max, d, order, 0);

  std::vector<std::vector<Piece>> c(top + 1, std::vector<Piece>(order + 1));
  for (int p = 0; p <= top; ++p)
    for (int n = 0; n <= order; ++n) c[p][n].assign(basis.dim(n), 0);
  c[0][0][0] = 1;

  auto derivs = derivatives<Rational>(v, out.symbols, &to_rational);
  // partial[f][k][t]: degree-t part of the product of the first k factors of derivative f.
  std::vector<std::vector<std::vector<Piece>>> partial(derivs.size());
  for (std::size_t f = 0; f < derivs.size(); ++f)
    partial[f].assign(derivs[f].others.size() + 1, std::vector<Piece>(order + 1));
  std::vector<std::vector<Piece>> dv(d + 1, std::vector<Piece>(order + 1));
  for (int j = 0; j <= d; ++j)
    for (int n = 0; n <= order; ++n) dv[j][n].assign(basis.dim(n), 0);

  for (int n = 0; n <= order; ++n) {
    if (n >= 1) {
      const int t = n - 1;
      for (std::size_t f = 0; f < derivs.size(); ++f) {
        auto& pp = partial[f];
        pp[0][t].assign(basis.dim(t), 0);
        if (t == 0) pp[0][t][0] = 1;
        for (std::size_t k = 1; k < pp.size(); ++k) {
          pp[k][t].assign(basis.dim(t), 0);
          const auto& factor = c[derivs[f].others[k - 1]];
          for (int a = 0; a <= t; ++a) mul_add(basis, a, pp[k - 1][a], t - a, factor[t - a], pp[k][t]);
        }
        const Piece& prod = pp.back()[t];
        for (int i = 0; i < basis.dim(t); ++i)
          if (sgn(prod[i]) != 0) dv[derivs[f].j][n][basis.shift[derivs[f].symbol][t][i]] += derivs[f].coeff * prod[i];
      }
    }
    for (int p = 1; p <= window(p_max, d, order, n); ++p) {
      Piece& acc = c[p][n];
      for (int k = 0; k < p; ++k)
        for (int a = 0; a <= n; ++a) mul_add(basis, a, c[k][a], n - a, c[p - 1 - k][n - a], acc);
      for (int j = 1; j <= d; ++j)
        for (int b = 1; b <= n; ++b) mul_add(basis, b, dv[j][b], n - b, c[j + p - 1][n - b], acc, Rational(j));
    }
  }

  out.formal.resize(p_max + 1);
  for (int p = 0; p <= p_max; ++p)
    for (int n = 0; n <= order; ++n)
      for (int i = 0; i < basis.dim(n); ++i)
        if (sgn(c[p][n][i]) != 0) out.formal[p][basis.by_degree[n][i]] = c[p][n][i];
  return out;
}

std::vector<std::vector<long double>> solve_formal_univariate(const Potential& v, int order, int p_max) {
  v.check();
  const auto symbols = v.symbols();
  if (symbols.size() > 1) throw std::invalid_argument("solve_formal_univariate: more than one coupling symbol");
  if (order < 0 || p_max < 0) throw std::invalid_argument("solve_formal_univariate: negative order or size");
  const int d = std::max(1, v.max_variable());
  const int top = window(p_max, d, order, 0);
  using T = long double;

  std::vector<std::vector<T>> c(top + 1, std::vector<T>(order + 1, 0));
  c[0][0] = 1;
  auto derivs = derivatives<T>(v, symbols, &to_long_double);
  std::vector<std::vector<std::vector<T>>> partial(derivs.size());
  for (std::size_t f = 0; f < derivs.size(); ++f)
    partial[f].assign(derivs[f].others.size() + 1, std::vector<T>(order + 1, 0));
  std::vector<std::vector<T>> dv(d + 1, std::vector<T>(order + 1, 0));

  for (int n = 0; n <= order; ++n) {
    if (n >= 1) {
      const int t = n - 1;
      for (std::size_t f = 0; f < derivs.size(); ++f) {
        auto& pp = partial[f];
        pp[0][t] = t == 0 ? 1 : 0;
        for (std::size_t k = 1; k < pp.size(); ++k) {
          const auto& factor = c[derivs[f].others[k - 1]];
          T sum = 0;
          for (int a = 0; a <= t; ++a) sum += pp[k - 1][a] * factor[t - a];
          pp[k][t] = sum;
        }
        dv[derivs[f].j][n] += derivs[f].coeff * pp.back()[t];
      }
    }
    for (int p = 1; p <= window(p_max, d, order, n); ++p) {
      // The convolution is symmetric under k <-> p - 1 - k.
      T acc = 0;
      for (int k = 0; 2 * k < p - 1; ++k) {
        const auto& x = c[k];
        const auto& y = c[p - 1 - k];
        for (int a = 0; a <= n; ++a) acc += 2 * x[a] * y[n - a];
      }
      if ((p - 1) % 2 == 0) {
        const auto& x = c[(p - 1) / 2];
        for (int a = 0; a <= n; ++a) acc += x[a] * x[n - a];
      }
      for (int j = 1; j <= d; ++j) {
        const auto& y = c[j + p - 1];
        for (int b = 1; b <= n; ++b) acc += j * dv[j][b] * y[n - b];
      }
      c[p][n] = acc;
    }
  }
  c.resize(p_max + 1);
  return c;
}

std::map<Monomial, Rational> factorized_expectation(const DiskSeries& series, const std::vector<int>& type) {
  if (series.mode != DiskSeries::Mode::Formal) throw std::invalid_argument("factorized_expectation: formal series required");
  std::map<Monomial, Rational> acc{{Monomial(series.symbols.size(), 0), Rational(1)}};
  for (int p : type) {
    if (p < 0 || p >= static_cast<int>(series.formal.size()))
      throw std::out_of_range("factorized_expectation: C_" + std::to_string(p) + " not solved");
    std::map<Monomial, Rational> next;
    for (const auto& [ma, a] : acc)
      for (const auto& [mb, b] : series.formal[p]) {
        Monomial m(ma.size());
        for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] + mb[k];
        if (total_degree(m) > series.order) continue;
        next[m] += a * b;
      }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    acc = std::move(next);
  }
  return acc;
}

}  // namespace tmt
