#pragma once

// Exact integration of polynomials against lattice-normalized measures.
//
// The volume measure is the standard Lebesgue measure of the coordinate
// lattice.  On a facet {<u, x> = c} with primitive u the measure is normalized
// by the sublattice u^perp ∩ Z^r; in dimension one the "facets" are points and
// carry counting measure.

#include "spherik/polynomial.hpp"
#include "spherik/polytope.hpp"

namespace spherik {

/// Unimodular integer matrix whose first row is the primitive vector `u`.
/// Rows 2..r map the lattice u^perp ∩ Z^r onto Z^(r-1).
/// Throws GeometryError(kInvalid) when `u` is not a primitive integer vector.
Matrix hermite_extend(const Vector& u);

/// ∫_S poly dν for a k-simplex S whose measure (k-volume) is `measure`, via
/// the barycentric closed form k!·vol·Πa_i!/(Σa_i + k)!.
Rational integrate_on_simplex(const Polynomial& poly, const Simplex& simplex,
                              const Rational& measure);

/// ∫_P poly dμ over a full-dimensional polytope.
Rational integrate_polynomial(const Polynomial& poly, const Polytope& polytope,
                              const std::vector<std::size_t>& vertex_order = {});

/// Lattice-normalized (r-1)-volume of a facet simplex lying on a hyperplane
/// with primitive normal `normal`.
Rational facet_simplex_measure(const Simplex& simplex, const Matrix& hermite);

/// ∫_F poly dσ over one facet of `polytope`.
Rational integrate_on_facet(const Polynomial& poly, const Polytope& polytope, const Facet& facet);

/// Σ_F ∫_F poly dσ over all facets.
Rational integrate_polynomial_boundary(const Polynomial& poly, const Polytope& polytope);

}  // namespace spherik
