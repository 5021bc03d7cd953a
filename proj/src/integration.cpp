#include "spherik/integration.hpp"

namespace spherik {

Matrix hermite_extend(const Vector& u) {
  const std::size_t r = u.size();
  if (r == 0 || !is_integral(u) || gcd_of_entries(u) != 1) {
    throw GeometryError(GeometryError::Kind::kInvalid,
                        "hermite_extend needs a primitive integer vector, got " + to_string(u));
  }
  // Column operations reduce w = u·U to ±e_1; the inverse operations, applied
  // to rows, build U^{-1}, whose first row is then u.
  std::vector<Integer> w(r);
  for (std::size_t i = 0; i < r; ++i) w[i] = u[i].get_num();
  Matrix unimod = Matrix::identity(r);
  Matrix inv = Matrix::identity(r);
  auto nonzero = [&] {
    std::size_t n = 0;
    for (const auto& x : w) n += (x != 0);
    return n;
  };
  while (nonzero() > 1) {
    std::size_t piv = r;
    for (std::size_t i = 0; i < r; ++i) {
      if (w[i] != 0 && (piv == r || abs(w[i]) < abs(w[piv]))) piv = i;
    }
    for (std::size_t j = 0; j < r; ++j) {
      if (j == piv || w[j] == 0) continue;
      Integer k;
      mpz_fdiv_q(k.get_mpz_t(), w[j].get_mpz_t(), w[piv].get_mpz_t());
      w[j] -= k * w[piv];
      const Rational kq(k);
      for (std::size_t i = 0; i < r; ++i) unimod(i, j) -= kq * unimod(i, piv);
      for (std::size_t c = 0; c < r; ++c) inv(piv, c) += kq * inv(j, c);
    }
  }
  std::size_t piv = 0;
  while (w[piv] == 0) ++piv;
  if (piv != 0) {
    for (std::size_t i = 0; i < r; ++i) std::swap(unimod(i, 0), unimod(i, piv));
    for (std::size_t c = 0; c < r; ++c) std::swap(inv(0, c), inv(piv, c));
    std::swap(w[0], w[piv]);
  }
  if (w[0] < 0) {
    for (std::size_t c = 0; c < r; ++c) inv(0, c) = -inv(0, c);
  }
  return inv;
}

namespace {

Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace

Rational integrate_on_simplex(const Polynomial& poly, const Simplex& simplex,
                              const Rational& measure) {
  if (poly.is_zero() || measure == 0) return 0;
  const std::size_t k = simplex.vertices.size() - 1;
  const std::size_t n = poly.variables();
  // x_j = Σ_i λ_i w_{i,j}, homogeneous in the barycentric coordinates.
  std::vector<Polynomial> forms;
  forms.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector coeffs(k + 1);
    for (std::size_t i = 0; i <= k; ++i) coeffs[i] = simplex.vertices[i][j];
    forms.push_back(Polynomial::affine(0, coeffs));
  }
  const Polynomial pulled = poly.compose(forms);
  const Integer k_fact = factorial(k);
  Rational total = 0;
  for (const auto& [e, c] : pulled.terms()) {
    Integer num = 1;
    unsigned long deg = 0;
    for (auto a : e) {
      num *= factorial(a);
      deg += a;
    }
    Rational weight(num * k_fact, factorial(deg + k));
    weight.canonicalize();
    total += c * weight;
  }
  return total * measure;
}

Rational integrate_polynomial(const Polynomial& poly, const Polytope& polytope,
                              const std::vector<std::size_t>& vertex_order) {
  Rational total = 0;
  for (const auto& s : triangulate(polytope, vertex_order)) {
    total += integrate_on_simplex(poly, s, simplex_volume(s));
  }
  return total;
}

Rational facet_simplex_measure(const Simplex& simplex, const Matrix& hermite) {
  const std::size_t r = hermite.rows();
  const std::size_t k = simplex.vertices.size() - 1;  // r - 1
  Matrix y(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const Vector d = simplex.vertices[i + 1] - simplex.vertices[0];
    for (std::size_t j = 0; j < k; ++j) {
      Rational s = 0;
      for (std::size_t c = 0; c < r; ++c) s += hermite(j + 1, c) * d[c];
      y(i, j) = s;
    }
  }
  return abs(determinant(y)) / Rational(factorial(k));
}

Rational integrate_on_facet(const Polynomial& poly, const Polytope& polytope, const Facet& facet) {
  const Matrix hermite = hermite_extend(polytope.halfspaces()[facet.halfspace].normal);
  Rational total = 0;
  const int face_dim = static_cast<int>(polytope.dim()) - 1;
  for (const auto& s : triangulate_face(polytope, facet.vertices, face_dim)) {
    total += integrate_on_simplex(poly, s, facet_simplex_measure(s, hermite));
  }
  return total;
}

Rational integrate_polynomial_boundary(const Polynomial& poly, const Polytope& polytope) {
  Rational total = 0;
  for (const auto& f : polytope.facets()) total += integrate_on_facet(poly, polytope, f);
  return total;
}

}  // namespace spherik
