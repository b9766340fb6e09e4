#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "tmt/sd_solver.hpp"

namespace tmt {

DiskSeries solve_numeric(const Potential& v, const std::map<std::string, double>& couplings, int p_max,
                         double tolerance, int max_iterations) {
  v.check();
  if (p_max < 1) throw std::invalid_argument("solve_numeric: p_max must be at least 1");
  if (!(tolerance > 0)) throw std::invalid_argument("solve_numeric: tolerance must be positive");
  using T = long double;
  const int d = std::max(1, v.max_variable());
  // Extended window; errors at its edge reach p only through d - 1 steps per coupling power.
  const int top = 2 * p_max + 20 + 2 * d;

  struct Term {
    T coeff;
    int j;
    std::vector<int> others;
  };
  std::vector<Term> derivs;
  for (const auto& t : v.terms) {
    auto it = couplings.find(t.coupling);
    double value = it == couplings.end() ? 0.0 : it->second;
    if (value == 0) continue;
    for (std::size_t k = 0; k < t.vars.size(); ++k) {
      if (k > 0 && t.vars[k] == t.vars[k - 1]) continue;
      T mult = static_cast<T>(std::count(t.vars.begin(), t.vars.end(), t.vars[k]));
      std::vector<int> others = t.vars;
      others.erase(others.begin() + k);
      derivs.push_back({static_cast<T>(t.coeff.get_d()) * static_cast<T>(value) * mult, t.vars[k], others});
    }
  }

  // Scaled unknowns y_p = C_p / 4^p keep the Catalan growth out of the exponent.
  std::vector<T> pow4(top + d + 1);
  pow4[0] = 1;
  for (std::size_t q = 1; q < pow4.size(); ++q) pow4[q] = 4 * pow4[q - 1];
  std::vector<T> y(top + 1, 0);
  y[0] = 1;
  for (int p = 1; p <= top; ++p) {
    T s = 0;
    for (int k = 0; k < p; ++k) s += y[k] * y[p - 1 - k];
    y[p] = s / 4;
  }

  auto value_at = [&](int q) -> T {
    if (q <= top) return y[q];
    T ratio = y[top - 1] != 0 ? y[top] / y[top - 1] : 0;
    return y[top] * std::pow(ratio, static_cast<T>(q - top));
  };

  DiskSeries out;
  out.mode = DiskSeries::Mode::Numeric;
  out.symbols = v.symbols();
  T theta = 0.5;
  T previous = std::numeric_limits<T>::infinity();
  int growing = 0;
  std::vector<T> dv(d + 1);
  for (int it = 1; it <= max_iterations; ++it) {
    std::fill(dv.begin(), dv.end(), 0);
    for (const auto& t : derivs) {
      T prod = t.coeff;
      for (int x : t.others) prod *= y[x] * pow4[x];
      dv[t.j] += prod;
    }
    T residual = 0;
    for (int p = 1; p <= top; ++p) {
      T f = 0;
      for (int k = 0; 2 * k < p - 1; ++k) f += 2 * y[k] * y[p - 1 - k];
      if ((p - 1) % 2 == 0) f += y[(p - 1) / 2] * y[(p - 1) / 2];
      f /= 4;
      for (int j = 1; j <= d; ++j)
        if (dv[j] != 0) f += j * dv[j] * pow4[j - 1] * value_at(j + p - 1);
      if (p <= p_max) residual = std::max(residual, std::fabs(f - y[p]) / std::max(std::fabs(y[p]), T(1e-300)));
      y[p] += theta * (f - y[p]);
    }
    out.iterations = it;
    out.residual = static_cast<double>(residual);
    if (!std::isfinite(static_cast<double>(residual)) || std::fabs(y[p_max]) > T(1e300)) {
      out.converged = false;
      out.message = "diverged (overflow) after " + std::to_string(it) + " iterations";
      break;
    }
    if (residual < tolerance) {
      out.converged = true;
      break;
    }
    // Speed up while the residual shrinks, back off when it grows.
    if (residual < previous) {
      growing = 0;
      theta = std::min<T>(1, theta * 1.1);
    } else if (++growing >= 3) {
      theta = std::max<T>(1e-3, theta / 2);
      growing = 0;
    }
    previous = residual;
    if (it == max_iterations) {
      out.converged = false;
      std::ostringstream os;
      os << "no convergence in " << max_iterations << " iterations (residual " << out.residual << ")";
      out.message = os.str();
    }
  }
  out.values.resize(p_max + 1);
  for (int p = 0; p <= p_max; ++p) out.values[p] = static_cast<double>(y[p] * pow4[p]);
  if (out.converged) out.message = "converged";
  return out;
}

}  // namespace tmt
