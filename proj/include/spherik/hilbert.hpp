#pragma once

// Brute-force Donaldson–Futaki expansion from lattice-point counts.
//
// For k = D, 2D, ... ≤ k_max (D clears the denominators of f) the oracle
// sums dim V_λ over λ ∈ (kχ + M) ∩ kΔ and the weights -⌈k f((λ - kχ)/k)⌉·dim V_λ,
// then fits w_k/(k d_k) = F0 - F1/k + c2/k² + c3/k³ by least squares.

#include <vector>

#include "spherik/functional.hpp"

namespace spherik {

struct HilbertSample {
  long k = 0;
  Integer d;  // Σ dim V_λ
  Integer w;  // total weight
  double ratio = 0;  // w / (k d)
};

struct HilbertFit {
  long k_max = 0;
  long step = 1;
  std::vector<HilbertSample> samples;
  double F0 = 0;
  double F1 = 0;
  double residual = 0;  // RMS of the fit
  std::size_t terms = 0;
};

struct HilbertOptions {
  long k_max = 30;
  double max_points = 5e7;  // budget guard on the total lattice-point count
  std::size_t threads = 0;
};

/// Σ dim V_λ over (kχ + M) ∩ kΔ, exactly.
Integer hilbert_dimension(const NormalizedModel& model, long k);

HilbertFit hilbert_series_oracle(const NormalizedModel& model, const PLFunction& f,
                                 const HilbertOptions& options = {});

}  // namespace spherik
