#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "tmt/laurent.hpp"
#include "tmt/model.hpp"

namespace tmt {

/// One monomial coeff * t * x_{v1} * x_{v2} * ... of the potential.
struct PotentialTerm {
  Rational coeff;
  std::string coupling;
  std::vector<int> vars;  // sorted, every index >= 1
};

/// V(x) = sum of terms. A tree of necklaces of type {p_k} with coupling t
/// enters as -t * prod x_{p_k}, so that the disk equation reads
///   C_p = sum_{k<p} C_k C_{p-k-1} + sum_j j dV/dx_j(C) C_{j+p-1},   C_0 = 1.
struct Potential {
  std::vector<PotentialTerm> terms;

  /// Distinct coupling symbols, in order of first appearance.
  std::vector<std::string> symbols() const;
  /// Largest variable index, 0 for V = 0.
  int max_variable() const;
  void check() const;

  /// Every coupling replaced by its value times a common symbol; missing
  /// couplings default to 1.
  Potential substituted(const std::map<std::string, Rational>& values, const std::string& symbol = "g") const;

  /// Trees of necklaces of a model, each as -t * prod x_{p_k}.
  static Potential from_model(const ModelSpec& model);
  /// {"monomials": [{"coeff": -1, "coupling": "t", "powers": {"2": 1}}]};
  /// coeff may be a number or a rational string, coupling defaults to "g".
  static Potential from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Solution of the disk equation.
struct DiskSeries {
  enum class Mode { Formal, Numeric };
  Mode mode = Mode::Formal;
  std::vector<std::string> symbols;
  int order = 0;

  /// Formal mode: formal[p] maps coupling monomials of total degree <= order
  /// to exact coefficients.
  std::vector<std::map<Monomial, Rational>> formal;

  /// Numeric mode: values[p] for p = 0..p_max.
  std::vector<double> values;
  bool converged = true;
  int iterations = 0;
  double residual = 0;
  std::string message;

  Rational coefficient(int p, const Monomial& m) const;
};

/// Exact order-by-order solution for C_0..C_{p_max}, up to total coupling order K.
DiskSeries solve_formal(const Potential& v, int order, int p_max = 5);

/// Product of C_{p_k} over a tree-of-necklaces type, truncated at the series order.
std::map<Monomial, Rational> factorized_expectation(const DiskSeries& series, const std::vector<int>& type);

/// Fast univariate solution for a potential with a single coupling symbol:
/// result[p][n] is the coefficient of g^n in C_p, for p <= p_max.
std::vector<std::vector<long double>> solve_formal_univariate(const Potential& v, int order, int p_max = 1);

/// Damped Gauss-Seidel fixed point for numeric couplings (missing ones are 0).
/// Solves on an extended window with a geometric tail and reports the
/// residual on 0..p_max.
DiskSeries solve_numeric(const Potential& v, const std::map<std::string, double>& couplings, int p_max,
                         double tolerance = 1e-12, int max_iterations = 20000);

/// Radius of convergence from ratio extrapolation with Richardson acceleration.
struct CriticalEstimate {
  double radius = 0;
  double uncertainty = 0;
  bool alternating = false;  // signs alternate: magnitudes were used
  int terms = 0;
};
CriticalEstimate critical_point(const std::vector<long double>& coefficients);
/// Radius in g of C_1 for a single-coupling potential.
CriticalEstimate critical_point(const Potential& family, int order = 200);

/// Fit of c_n ~ A mu^n n^(gamma - 2) on the tail of a coefficient sequence.
struct GammaFit {
  double gamma = 0;
  double mu = 0;
  double residual = 0;
  int n_min = 0, n_max = 0;
  bool monotone_tail = true;  // ratios settle monotonically
};
/// Needs at least 50 coefficients; the fit uses n >= window_start * length.
GammaFit gamma_estimate(const std::vector<long double>& coefficients, double window_start = 0.5);

/// The family V = -g (x_2 + kappa x_1^2), in s = -g where all coefficients
/// are positive.
Potential transition_family(double kappa);

/// Grid point of a kappa scan.
struct ScanPoint {
  double kappa = 0;
  double indicator = 0;  // > 0: planar sector reaches its singularity first
  GammaFit fit;
};

/// Simultaneous criticality of the melonic and planar sectors. For
/// V = -g (x_2 + kappa x_1^2) the solution is the pure quartic one at
/// coupling w with s = w / (1 + 2 kappa w phi(w))^2, phi = C_1 of V = -w x_2.
/// Branching and planar singularities coincide when
///   1 - 2 kappa w_c (phi(w_c) + 2 w_c phi'(w_c)) = 0.
struct TransitionTuning {
  double kappa = 0;  // located by bisection on the indicator
  double w_c = 0, phi_c = 0, dphi_c = 0;
  double s_c = 0;    // critical |g| at the tuned kappa
  std::vector<ScanPoint> grid;
};
TransitionTuning tune_transition(int order, double kappa_lo, double kappa_hi, int grid_points, int scan_order = 150);

}  // namespace tmt
