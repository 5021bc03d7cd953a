#pragma once

#include <map>
#include <string>
#include <vector>

#include "spherik/rational.hpp"

namespace spherik {

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored.
class Polynomial {
 public:
  using Exponent = std::vector<unsigned>;

  Polynomial() = default;
  explicit Polynomial(std::size_t variables) : nvars_(variables) {}

  static Polynomial constant(std::size_t variables, const Rational& c);
  static Polynomial variable(std::size_t variables, std::size_t i);
  /// c + Σ coeffs[i] x_i
  static Polynomial affine(const Rational& c, const Vector& coeffs);

  std::size_t variables() const { return nvars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;

  void add_term(const Exponent& e, const Rational& c);
  Rational coefficient(const Exponent& e) const;

  Rational evaluate(const Vector& x) const;
  double evaluate(const std::vector<double>& x) const;

  /// Substitutes x_j := forms[j] (each a polynomial in a common variable set).
  Polynomial compose(const std::vector<Polynomial>& forms) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  Polynomial pow(unsigned k) const;

  /// Human form, e.g. "2*q1^2 - q1*q2 + 1/3".  Variables are `prefix`1..n.
  std::string to_string(const std::string& prefix = "q") const;

 private:
  std::size_t nvars_ = 0;
  std::map<Exponent, Rational> terms_;
};

}  // namespace spherik
