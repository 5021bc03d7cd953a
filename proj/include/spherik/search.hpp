#pragma once

// Multi-start search for destabilizing test configurations with at most m
// linearity domains.  A negative result is an exact certificate; a
// nonnegative one proves nothing.

#include <cstdint>
#include <vector>

#include "spherik/functional.hpp"

namespace spherik {

struct SearchOptions {
  std::size_t m = 2;          // maximal number of pieces
  std::size_t budget = 2000;  // objective evaluations over all restarts
  std::size_t restarts = 8;
  std::uint64_t seed = 1;
  std::size_t threads = 0;    // 0: hardware concurrency
};

struct SearchReport {
  std::size_t m = 0;
  std::uint64_t seed = 0;
  PLFunction best_f;
  Rational best_value;             // exact L(best_f)
  Rational best_normalized;        // L / ∫(f - min f) P dμ, exact
  std::vector<double> trace;       // incumbent normalized value per restart
  std::size_t evaluations = 0;
  bool certificate() const { return best_value < 0; }
};

/// Euclidean projection of `x` onto the cone, returned as nonnegative
/// coefficients on the generators and free coefficients on the lineality
/// basis (generators first).
std::vector<double> project_onto_cone(const PolyhedralCone& cone, const std::vector<double>& x);

SearchReport search_destabilizer(const NormalizedModel& model, const FunctionalData& data,
                                 const SearchOptions& options = {});

}  // namespace spherik
