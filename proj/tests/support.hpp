#pragma once

// Shared test scaffolding: fixture lookup, random instances and independent
// oracles (polygon clipping, grid classification, Monte Carlo).

#include <random>
#include <string>
#include <vector>

#include "spherik/criteria.hpp"
#include "spherik/functional.hpp"
#include "spherik/spherical_data.hpp"

namespace spherik::testing {

std::string fixture(const std::string& name);
NormalizedModel load_model(const std::string& name);

/// n/d in canonical form.
Rational frac(long n, long d);
Rational random_rational(std::mt19937_64& rng, long num_range, long max_den);

/// Random validated data of rank <= max_rank with at most max_roots positive
/// roots (root systems A1, A1xA1, A2, B2, G2, A3 plus a torus).
SphericalData random_spherical_data(std::mt19937_64& rng, std::size_t max_rank = 3,
                                    std::size_t max_roots = 6);

/// Random full-dimensional polygon (box cut by random lines), toric data.
SphericalData random_toric_surface(std::mt19937_64& rng);

/// Random element of the valuation cone.
Vector random_cone_element(std::mt19937_64& rng, const PolyhedralCone& cone);

/// Random PL function with `pieces` pieces whose creases cross Δ.
PLFunction random_pl_function(std::mt19937_64& rng, const NormalizedModel& model,
                              std::size_t pieces);

/// Convex polygon as a counter-clockwise vertex cycle.
using Polygon = std::vector<Vector>;

Polygon polygon_of(const NormalizedModel& model);
/// Sutherland–Hodgman clip by <n, x> <= b.
Polygon clip(const Polygon& poly, const Vector& n, const Rational& b);
Rational polygon_area(const Polygon& poly);

/// ∫_∂Δ f dσ - a ∫_Δ f dμ for toric surfaces, by polygon clipping and
/// edge-wise trapezoid sums with lattice lengths.
Rational toric_donaldson_functional(const NormalizedModel& model, const PLFunction& f);

/// Number of pieces that are the unique maximum at some grid point of Δ.
std::size_t grid_nld(const NormalizedModel& model, const PLFunction& f, long pitch_den);

struct MonteCarloEstimate {
  double mean;
  double stderr_;
};
MonteCarloEstimate monte_carlo_integral(const Polynomial& poly, const Polytope& polytope,
                                        std::size_t samples, std::uint64_t seed);

/// Random polytope of dimension r (box cut by random halfspaces).
Polytope random_polytope(std::mt19937_64& rng, std::size_t r);
Polynomial random_polynomial(std::mt19937_64& rng, std::size_t r, unsigned degree);

}  // namespace spherik::testing
