#include "tmt/laurent.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tmt {

LaurentPolynomial LaurentPolynomial::monomial(int power, const Rational& coeff) {
  LaurentPolynomial p;
  p.add_term(power, coeff);
  return p;
}

Rational LaurentPolynomial::coefficient(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? Rational(0) : it->second;
}

int LaurentPolynomial::max_power() const {
  if (terms_.empty()) throw std::logic_error("max_power of zero polynomial");
  return terms_.rbegin()->first;
}

int LaurentPolynomial::min_power() const {
  if (terms_.empty()) throw std::logic_error("min_power of zero polynomial");
  return terms_.begin()->first;
}

void LaurentPolynomial::add_term(int power, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(power, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
  for (const auto& [p, c] : other.terms_) add_term(p, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
  for (const auto& [p, c] : other.terms_) add_term(p, -c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, c] : terms_) c *= scalar;
  return *this;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& other) const {
  LaurentPolynomial out;
  for (const auto& [p, c] : terms_)
    for (const auto& [q, d] : other.terms_) out.add_term(p + q, c * d);
  return out;
}

LaurentPolynomial LaurentPolynomial::shifted(int by) const {
  LaurentPolynomial out;
  for (const auto& [p, c] : terms_) out.terms_.emplace(p + by, c);
  return out;
}

Rational LaurentPolynomial::evaluate(long n) const {
  if (n == 0) throw std::invalid_argument("evaluate: N must be non-zero");
  Rational total = 0;
  for (const auto& [p, c] : terms_) {
    Integer base;
    mpz_pow_ui(base.get_mpz_t(), Integer(n).get_mpz_t(), static_cast<unsigned long>(p < 0 ? -p : p));
    if (p >= 0)
      total += c * Rational(base);
    else
      total += c / Rational(base);
  }
  return total;
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [p, c] = *it;
    Rational mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    bool unit = (mag == 1);
    if (!unit || p == 0) os << rational_to_string(mag);
    if (p != 0) {
      if (!unit) os << "*";
      os << "N";
      if (p != 1) os << "^" << p;
    }
  }
  return os.str();
}

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

const LaurentPolynomial& CouplingSeries::at(const Monomial& m) const {
  static const LaurentPolynomial zero;
  auto it = coefficients.find(m);
  return it == coefficients.end() ? zero : it->second;
}

std::map<Monomial, Rational> CouplingSeries::part(int power) const {
  std::map<Monomial, Rational> out;
  for (const auto& [m, poly] : coefficients) {
    Rational c = poly.coefficient(power);
    if (c != 0) out.emplace(m, c);
  }
  return out;
}

std::string CouplingSeries::monomial_name(const Monomial& m) const {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += symbols.at(i);
    if (m[i] != 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational rational_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational number: " + s);
  q.canonicalize();
  return q;
}

Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace tmt
