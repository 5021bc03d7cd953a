#pragma once

// Combinatorial data of a polarized spherical variety and its normalized form
// in lattice coordinates.
//
// Ambient coordinates live in X*(B)⊗Q with the pairing given by `gram`.
// Lattice ("q") coordinates write p = χ + Σ q_i e_i for the columns e_i of
// `lattice_basis`, so that the lattice M is Z^r and dμ is the standard volume.
// The valuation cone and all PL slopes live in the dual ("N") coordinates.

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spherik/cone.hpp"
#include "spherik/polytope.hpp"
#include "spherik/rational.hpp"

namespace spherik {

/// Schema or validation failure of an input document.  `field` names the
/// offending JSON path (e.g. "polytope.inequalities[2].bound").
class InputError : public std::runtime_error {
 public:
  InputError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct SphericalData {
  std::size_t ambient_dim = 0;
  Matrix gram;
  std::vector<Vector> positive_roots;
  Matrix lattice_basis;  // ambient_dim x rank, columns span M
  std::optional<Vector> chi;
  std::vector<Halfspace> polytope;  // <normal, p> <= bound, ambient coordinates
  PolyhedralCone valuation_cone;    // N coordinates
  bool fano = false;

  std::size_t rank() const { return lattice_basis.cols(); }
};

/// q ↦ constant + <linear, q>
struct AffineForm {
  Rational constant;
  Vector linear;

  Rational operator()(const Vector& q) const { return constant + dot(linear, q); }
  bool operator==(const AffineForm&) const = default;
};

struct NormalizedModel {
  std::size_t rank = 0;
  Polytope polytope;  // in q coordinates
  Vector chi;         // ambient
  Matrix lattice_basis;
  Matrix gram;
  std::vector<Vector> positive_roots;     // ambient
  std::vector<AffineForm> root_forms;     // κ(α, χ + Eq) for every α in Φ⁺
  std::vector<Rational> root_on_varpi;    // κ(α, ϖ)
  Vector varpi;                           // ambient half-sum of Φ⁺
  std::vector<std::size_t> active_roots;  // indices into positive_roots
  Vector two_varpi_active;                // Σ_{α ∈ Φ_X⁺} α, ambient
  PolyhedralCone valuation_cone;          // N coordinates
  bool fano = false;

  Vector to_ambient(const Vector& q) const;
  /// Solves E m = p for a vector of the linear span of the lattice.
  std::optional<Vector> to_lattice_coordinates(const Vector& ambient_direction) const;
  bool is_toric() const { return positive_roots.empty(); }
};

SphericalData spherical_data_from_json(const nlohmann::json& document);
SphericalData parse_spherical_data(std::string_view text);
SphericalData load_spherical_data(const std::string& path);
nlohmann::json to_json(const SphericalData& data);

/// Validates every invariant of the input and returns the normalized model.
/// Throws InputError with a field path on violation.
NormalizedModel normalize(const SphericalData& data);

/// Indices of positive roots whose pairing with Δ is not identically zero.
std::vector<std::size_t> active_roots(const SphericalData& data);

/// Valuation cone equals the whole space N⊗Q.
bool is_horospherical(const NormalizedModel& model);

// ---------------------------------------------------------------------------
// Fixture-building helpers.

struct RootSystem {
  Matrix gram;  // pairing in simple-root coordinates
  std::vector<Vector> positive_roots;
};

/// Types "A1", "A2", "A3", "B2", "C2", "G2", in simple-root coordinates.
RootSystem root_system(std::string_view type);
/// Orthogonal product of root systems plus a central torus of `torus_dim`
/// coordinates (pairing = identity there).
RootSystem product(const std::vector<RootSystem>& factors, std::size_t torus_dim = 0);

// ---------------------------------------------------------------------------
// Equivalent presentations of the same variety (used by invariance checks).

/// Replaces the lattice basis E by E·U (U unimodular) and transforms the
/// valuation cone by v ↦ Uᵀv.
SphericalData change_lattice_basis(const SphericalData& data, const Matrix& unimodular);
/// Replaces χ by χ + E·shift.
SphericalData shift_base_point(const SphericalData& data, const Vector& shift);
/// Δ ↦ tΔ, χ ↦ tχ; the anticanonical flag is dropped.
SphericalData dilate(const SphericalData& data, const Rational& t);
/// Multiplies the Gram block on `coordinates` by `factor`; the block must be
/// orthogonal to the remaining coordinates.
SphericalData rescale_gram_factor(const SphericalData& data,
                                  const std::vector<std::size_t>& coordinates,
                                  const Rational& factor);

}  // namespace spherik
