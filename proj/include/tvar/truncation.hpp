#pragma once

#include <utility>
#include <vector>

#include "tvar/path.hpp"

namespace tvar {

// Upward / downward / two-sided truncated variation of a sampled path:
// suprema over grid-index subsequences i_0 < ... < i_k of
//   UTV^c = sum_j max(x_{i_j} - x_{i_{j-1}} - c, 0)
//   DTV^c = sum_j max(x_{i_{j-1}} - x_{i_j} - c, 0)
//   TV^c  = sum_j max(|x_{i_j} - x_{i_{j-1}}| - c, 0)
// For a step function these suprema are attained on grid subsequences, so the
// values are exact. c = 0 gives the classical total variation.
struct TruncatedVariations {
  double utv = 0.0;
  double dtv = 0.0;
  double tv = 0.0;
};

// O(n) time, O(1) extra memory. Throws DomainError for c < 0 or non-finite c.
TruncatedVariations truncated_variations(const SampledPath& path, double c);

// Exhaustive maximization over all 2^n index subsequences. Reference
// semantics for truncated_variations; throws DomainError for n > 16.
TruncatedVariations truncated_variations_bruteforce(const SampledPath& path,
                                                    double c);

// Element k equals the truncated variations of the prefix through index k.
// Computed in one O(n) pass; element k depends only on samples 0..k.
struct RunningTruncatedVariations {
  std::vector<double> utv;
  std::vector<double> dtv;
};

RunningTruncatedVariations running_truncated_variations(const SampledPath& path,
                                                        double c);

// The finite-variation approximation
//   x^c_k = x_0 + utv_prefix[k] - dtv_prefix[k]
// together with the final-index variation values. The approximation stays
// within c of the input, has per-step increments dominated by the input's,
// and attains total variation tv.
struct TruncationResult {
  double utv = 0.0;
  double dtv = 0.0;
  double tv = 0.0;
  SampledPath truncated;
};

TruncationResult truncated_path(const SampledPath& path, double c);

// trend = truncated_path(path, c), noise = path - trend pointwise.
// trend + noise reconstructs the path exactly and sup|noise| <= c.
std::pair<SampledPath, SampledPath> decompose(const SampledPath& path, double c);

}  // namespace tvar
