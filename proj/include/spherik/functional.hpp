#pragma once

// Weight polynomials, the mean constant and the non-Archimedean Mabuchi
// functional on convex piecewise-linear functions.
//
// Everything is expressed in lattice ("q") coordinates with origin at χ, so
// f(p - χ) is simply f(q).

#include "json.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spherik/polynomial.hpp"
#include "spherik/polytope.hpp"
#include "spherik/spherical_data.hpp"

namespace spherik {

/// q ↦ c - <v, q>
struct Piece {
  Rational c;
  Vector v;
  bool operator==(const Piece&) const = default;
};

/// f(q) = max_j (c_j - <v_j, q>).
struct PLFunction {
  std::vector<Piece> pieces;

  std::size_t variables() const { return pieces.empty() ? 0 : pieces.front().v.size(); }
  Rational operator()(const Vector& q) const;
  double operator()(const std::vector<double>& q) const;
  /// Index of the first piece attaining the maximum at q.
  std::size_t active_piece(const Vector& q) const;
  bool operator==(const PLFunction&) const = default;
};

PLFunction constant_function(std::size_t variables, const Rational& c);
PLFunction affine_function(const Rational& c, const Vector& v);
/// max(f, g) pieces summed pairwise: represents f + g.
PLFunction piecewise_sum(const PLFunction& f, const PLFunction& g);
/// t·f for t > 0.
PLFunction scale(const PLFunction& f, const Rational& t);

PLFunction pl_function_from_json(const nlohmann::json& document);
PLFunction parse_pl_function(std::string_view text);
PLFunction load_pl_function(const std::string& path);
nlohmann::json to_json(const PLFunction& f);

struct FunctionalData {
  Polynomial P;
  Polynomial Q;
  Rational a;
  Rational vol_P;       // ∫_Δ P dμ
  Rational boundary_P;  // ∫_∂Δ P dσ
  Rational int_Q;       // ∫_Δ Q dμ
};

/// P = Π κ(α,·)/κ(α,ϖ) and Q = Σ_α Π_{β≠α} κ(β,·)/κ(β,ϖ) over active roots,
/// as polynomials in q.  Throws InputError if κ(α,ϖ) = 0 for an active root.
std::pair<Polynomial, Polynomial> weight_polynomials(const NormalizedModel& model);

/// a = (∫_∂Δ P dσ + 2∫_Δ Q dμ) / ∫_Δ P dμ: the value making L vanish on
/// constants.
Rational mean_constant(const NormalizedModel& model, const Polynomial& P, const Polynomial& Q);

FunctionalData functional_data(const NormalizedModel& model);

/// ∫ p P dμ / ∫ P dμ in ambient coordinates.
Vector weighted_barycenter(const NormalizedModel& model, const Polynomial& P);

struct Region {
  std::size_t piece;
  Polytope polytope;  // Δ_j; facet tags >= 0 index the facets of Δ
  bool full_dimensional = false;
};

struct LinearityDecomposition {
  std::vector<Region> regions;  // nonempty regions only
  std::size_t nld = 0;
  std::vector<std::size_t> redundant;  // pieces without a full-dimensional region
};

/// Throws InputError naming the offending piece when some v_j is not in 𝒱.
void check_slopes(const NormalizedModel& model, const PLFunction& f);

LinearityDecomposition linearity_domains(const NormalizedModel& model, const PLFunction& f);

/// Merges pieces with equal slope and drops redundant ones; f is unchanged on Δ.
PLFunction canonicalize(const NormalizedModel& model, const PLFunction& f);

/// ∫_Δ f·w dμ and ∫_∂Δ f·w dσ, by exact subdivision along the creases of f.
Rational integrate_pl(const NormalizedModel& model, const PLFunction& f, const Polynomial& w);
Rational integrate_pl_boundary(const NormalizedModel& model, const PLFunction& f,
                               const Polynomial& w);

/// min_Δ f (attained at a vertex of some linearity region).
Rational minimum_on_polytope(const NormalizedModel& model, const PLFunction& f);

/// L(f) = ∫_∂Δ f P dσ - ∫_Δ f (aP - 2Q) dμ.  Checks the slope condition.
Rational eval_L(const NormalizedModel& model, const FunctionalData& data, const PLFunction& f);

/// Single non-redundant piece whose slope lies in 𝒱 ∩ -𝒱.
bool is_product_function(const NormalizedModel& model, const PLFunction& f);

}  // namespace spherik
