#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tmt/parallel.hpp"
#include "tmt/sd_solver.hpp"

namespace tmt {

namespace {

// Least squares for y ~ sum_k beta_k basis_k(x) via normal equations.
std::vector<double> least_squares(const std::vector<std::vector<double>>& rows, const std::vector<double>& y) {
  const std::size_t m = rows.front().size();
  std::vector<std::vector<long double>> a(m, std::vector<long double>(m + 1, 0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) a[r][c] += static_cast<long double>(rows[i][r]) * rows[i][c];
      a[r][m] += static_cast<long double>(rows[i][r]) * y[i];
    }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    if (a[col][col] == 0) throw std::runtime_error("least squares: singular system");
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      long double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> beta(m);
  for (std::size_t r = 0; r < m; ++r) beta[r] = static_cast<double>(a[r][m] / a[r][r]);
  return beta;
}

// Ratios |c_n / c_{n-1}| with their index n.
std::vector<std::pair<int, long double>> ratios(const std::vector<long double>& c, bool& alternating) {
  std::vector<std::pair<int, long double>> out;
  int flips = 0, pairs = 0;
  for (std::size_t n = 1; n < c.size(); ++n) {
    if (c[n] == 0 || c[n - 1] == 0) continue;
    ++pairs;
    flips += (c[n] < 0) != (c[n - 1] < 0);
    out.emplace_back(static_cast<int>(n), std::fabs(c[n] / c[n - 1]));
  }
  alternating = pairs > 0 && flips == pairs;
  return out;
}

long double sum_with_tail(const std::vector<long double>& terms, double exponent) {
  // terms[n] ~ B n^exponent for large n, exponent < -1.
  long double s = 0;
  for (long double t : terms) s += t;
  const long double n = static_cast<long double>(terms.size() - 1);
  const long double b = terms.back() / std::pow(n, static_cast<long double>(exponent));
  return s + b * std::pow(n + 0.5L, static_cast<long double>(exponent + 1)) / static_cast<long double>(-(exponent + 1));
}

}  // namespace

CriticalEstimate critical_point(const std::vector<long double>& coefficients) {
  CriticalEstimate est;
  auto r = ratios(coefficients, est.alternating);
  if (r.size() < 10) throw std::invalid_argument("critical_point: need at least 10 non-zero ratios");
  est.terms = static_cast<int>(coefficients.size());
  // Second-order Richardson extrapolants remove the 1/n and 1/n^2 terms.
  std::vector<long double> mu, first;
  for (std::size_t k = 2; k < r.size(); ++k) {
    long double n = r[k].first;
    if (r[k - 1].first != n - 1 || r[k - 2].first != n - 2) continue;
    first.push_back(n * r[k].second - (n - 1) * r[k - 1].second);
    mu.push_back((n * n * r[k].second - 2 * (n - 1) * (n - 1) * r[k - 1].second +
                  (n - 2) * (n - 2) * r[k - 2].second) / 2);
  }
  if (mu.size() < 5) throw std::invalid_argument("critical_point: ratios too sparse");
  const std::size_t tail = std::max<std::size_t>(5, mu.size() / 10);
  long double lo = mu.back(), hi = mu.back();
  for (std::size_t k = mu.size() - tail; k < mu.size(); ++k) lo = std::min(lo, mu[k]), hi = std::max(hi, mu[k]);
  est.radius = static_cast<double>(1 / mu.back());
  // Spread over the tail and the gap to the lower-order extrapolant, whichever is larger.
  const long double spread = std::max(hi - lo, std::fabs(mu.back() - first.back()));
  est.uncertainty = static_cast<double>(spread / (mu.back() * mu.back()));
  return est;
}

CriticalEstimate critical_point(const Potential& family, int order) {
  if (order < 50) throw std::invalid_argument("critical_point: order must be at least 50");
  return critical_point(solve_formal_univariate(family, order, 1)[1]);
}

GammaFit gamma_estimate(const std::vector<long double>& coefficients, double window_start) {
  if (coefficients.size() < 50) throw std::invalid_argument("gamma_estimate: need at least 50 coefficients");
  bool alternating = false;
  auto r = ratios(coefficients, alternating);
  GammaFit fit;
  fit.n_max = static_cast<int>(coefficients.size()) - 1;
  fit.n_min = std::max(10, static_cast<int>(window_start * fit.n_max));
  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  int ups = 0, downs = 0;
  long double last = -1;
  for (auto [n, ratio] : r) {
    if (n < fit.n_min) continue;
    double x = 1.0 / n;
    rows.push_back({1.0, x, x * x});
    y.push_back(static_cast<double>(ratio));
    if (last >= 0) (ratio > last ? ups : downs)++;
    last = ratio;
  }
  if (rows.size() < 10) throw std::invalid_argument("gamma_estimate: window too short");
  // r_n = mu (1 + (gamma - 2)/n + O(1/n^2)).
  auto beta = least_squares(rows, y);
  fit.mu = beta[0];
  fit.gamma = 2 + beta[1] / beta[0];
  double ss = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double model = beta[0] + beta[1] * rows[i][1] + beta[2] * rows[i][2];
    ss += (y[i] - model) * (y[i] - model);
  }
  fit.residual = std::sqrt(ss / rows.size()) / std::fabs(fit.mu);
  fit.monotone_tail = ups == 0 || downs == 0;
  return fit;
}

Potential transition_family(double kappa) {
  Potential v;
  v.terms.push_back({Rational(1), "s", {2}});
  if (kappa != 0) v.terms.push_back({Rational(kappa), "s", {1, 1}});
  return v;
}

TransitionTuning tune_transition(int order, double kappa_lo, double kappa_hi, int grid_points, int scan_order) {
  if (order < 50) throw std::invalid_argument("tune_transition: order must be at least 50");
  if (!(kappa_lo < kappa_hi)) throw std::invalid_argument("tune_transition: empty kappa range");
  TransitionTuning out;
  // Planar sector alone: phi(w) = C_1 of V = w x_2.
  auto phi = solve_formal_univariate(transition_family(0), order, 1)[1];
  out.w_c = critical_point(phi).radius;
  const double exponent = gamma_estimate(phi).gamma - 2;
  std::vector<long double> value_terms, slope_terms;
  const long double w = out.w_c;
  for (std::size_t n = 0; n < phi.size(); ++n) {
    value_terms.push_back(phi[n] * std::pow(w, static_cast<long double>(n)));
    slope_terms.push_back(n == 0 ? 0 : n * phi[n] * std::pow(w, static_cast<long double>(n - 1)));
  }
  out.phi_c = static_cast<double>(sum_with_tail(value_terms, exponent));
  out.dphi_c = static_cast<double>(sum_with_tail(slope_terms, exponent + 1));
  auto indicator = [&](double kappa) { return 1 - 2 * kappa * out.w_c * (out.phi_c + 2 * out.w_c * out.dphi_c); };

  double lo = kappa_lo, hi = kappa_hi;
  if ((indicator(lo) > 0) == (indicator(hi) > 0))
    throw std::runtime_error("tune_transition: the criticality indicator does not change sign on the range");
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::fabs(hi)); ++it) {
    double mid = (lo + hi) / 2;
    ((indicator(mid) > 0) == (indicator(lo) > 0) ? lo : hi) = mid;
  }
  out.kappa = (lo + hi) / 2;
  out.s_c = out.w_c / std::pow(1 + 2 * out.kappa * out.w_c * out.phi_c, 2);

  out.grid.resize(std::max(0, grid_points));
  parallel_for(out.grid.size(), [&](std::size_t i) {
    double kappa = grid_points == 1 ? kappa_lo : kappa_lo + (kappa_hi - kappa_lo) * i / (grid_points - 1);
    auto series = solve_formal_univariate(transition_family(kappa), scan_order, 1)[1];
    out.grid[i] = {kappa, indicator(kappa), gamma_estimate(series)};
  });
  return out;
}

}  // namespace tmt
