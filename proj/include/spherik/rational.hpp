#pragma once

// Exact rational scalars, vectors and dense matrices.
//
// Everything that feeds a verdict is computed over arbitrary-precision
// rationals (GMP).  Floating point only appears in the search layers.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spherik {

using Rational = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Rational>;

/// Parses "p/q", "p" or "-p/q".  Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" for integers.
std::string to_string(const Rational& value);
std::string to_string(const Vector& v);

Vector make_vector(std::initializer_list<long> entries);
Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);

Rational dot(const Vector& a, const Vector& b);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator-(const Vector& a);
Vector operator*(const Rational& s, const Vector& a);
bool is_zero(const Vector& v);

/// Positive rational multiple of `v` with integer entries of gcd 1.
/// The zero vector is returned unchanged.  `scale` receives the factor used.
Vector primitive(const Vector& v, Rational* scale = nullptr);
bool is_integral(const Vector& v);
Integer gcd_of_entries(const Vector& v);

std::vector<double> to_doubles(const Vector& v);
/// Exact conversion of each double (doubles are dyadic rationals).
Vector from_doubles(const std::vector<double>& v);
/// Nearest rational with denominator at most `max_den` (continued fractions).
Rational rationalize(double x, long max_den);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix from_columns(const std::vector<Vector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const;
  Vector column(std::size_t j) const;
  Matrix transpose() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& x);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational determinant(Matrix m);
std::size_t rank(Matrix m);
std::size_t rank(const std::vector<Vector>& rows, std::size_t dim);
/// Basis of {x : A x = 0}, in reduced form (one free variable set to 1).
std::vector<Vector> nullspace(const Matrix& a);
/// Some solution of A x = b, or nullopt when the system is inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b);
std::optional<Matrix> inverse(const Matrix& a);
/// Affine dimension of a point set (-1 for the empty set).
int affine_dimension(const std::vector<Vector>& points);

}  // namespace spherik
