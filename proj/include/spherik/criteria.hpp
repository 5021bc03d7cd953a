#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spherik/functional.hpp"
#include "spherik/spherical_data.hpp"

namespace spherik {

enum class Outcome { kExists, kNotExists, kIndeterminate };

std::string to_string(Outcome outcome);
Outcome outcome_from_string(const std::string& text);

/// Raised when a criterion's hypotheses (rank, toric, Fano flag) do not hold.
class NotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Witness {
  PLFunction f;
  Rational value;  // exact L(f)
  bool operator==(const Witness&) const = default;
};

struct Verdict {
  Outcome outcome = Outcome::kIndeterminate;
  std::string criterion;  // "fano-barycenter", "rank-one", "toric-surface", "search"
  std::optional<Witness> witness;
  std::string certificate;  // human-readable reason
  /// Ordered key/value evidence; rationals as "p/q".
  std::vector<std::pair<std::string, std::string>> diagnostics;
};

/// Kähler–Einstein test for anticanonical data:
/// bary(P dμ) - 2ϖ_X ∈ relint (-𝒱)^∨.
Verdict check_fano_KE(const NormalizedModel& model, const FunctionalData& data);
Verdict check_fano_KE(const NormalizedModel& model);

/// Rank one: cscK iff L(ℓ) >= 0 for ℓ generating 𝒱, with equality exactly in
/// the horospherical case.
Verdict check_rank_one(const NormalizedModel& model, const FunctionalData& data);

struct ToricSurfaceOptions {
  double tol = 1e-9;
  int angle_steps = 64;
  int offset_steps = 32;
  /// Creases are kept at relative offset s ∈ [margin, 1 - margin] of the
  /// width of Δ in the crease direction.
  double offset_margin = 0.02;
  int refine_starts = 4;
  int refine_iterations = 200;
};

/// Toric surface: L vanishes on affine functions and is positive on every
/// simple crease max(0, <n_θ, q> - t).
Verdict check_toric_surface(const NormalizedModel& model, const FunctionalData& data,
                            const ToricSurfaceOptions& options = {});

/// L(f) / ∫_Δ (f - min f) P dμ; zero for functions constant on Δ.
Rational normalized_L(const NormalizedModel& model, const FunctionalData& data,
                      const PLFunction& f);

}  // namespace spherik
