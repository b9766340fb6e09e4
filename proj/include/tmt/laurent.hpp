#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace tmt {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact Laurent polynomial in N with rational coefficients.
/// Zero coefficients are never stored.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  static LaurentPolynomial monomial(int power, const Rational& coeff = 1);

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, Rational>& terms() const { return terms_; }

  Rational coefficient(int power) const;
  /// Largest power of N with a non-zero coefficient. Requires !is_zero().
  int max_power() const;
  int min_power() const;

  void add_term(int power, const Rational& coeff);
  LaurentPolynomial& operator+=(const LaurentPolynomial& other);
  LaurentPolynomial& operator-=(const LaurentPolynomial& other);
  LaurentPolynomial& operator*=(const Rational& scalar);
  LaurentPolynomial operator*(const LaurentPolynomial& other) const;
  LaurentPolynomial shifted(int by) const;

  /// Exact value at integer N (N != 0).
  Rational evaluate(long n) const;

  bool operator==(const LaurentPolynomial& other) const { return terms_ == other.terms_; }

  /// Human-readable form, e.g. "N + N^-1".
  std::string to_string() const;

 private:
  std::map<int, Rational> terms_;
};

inline LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }

/// Exponent vector over an ordered list of coupling symbols.
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

/// Power series in coupling symbols with LaurentPolynomial coefficients.
struct CouplingSeries {
  std::vector<std::string> symbols;
  std::map<Monomial, LaurentPolynomial> coefficients;

  const LaurentPolynomial& at(const Monomial& m) const;
  /// Coefficient of N^power in every monomial (e.g. the leading part at power 0).
  std::map<Monomial, Rational> part(int power) const;
  std::string monomial_name(const Monomial& m) const;
};

std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

Integer factorial(unsigned n);

}  // namespace tmt
