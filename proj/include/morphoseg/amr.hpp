#pragma once

#include <vector>

#include "morphoseg/image.hpp"

namespace morphoseg {

/// Scale range and stopping threshold for adaptive reconstruction.
/// eta == 0 disables early stopping: all scales min_scale..max_scale are
/// folded, which is what the hierarchy and the monotonicity/convergence
/// checks rely on.
struct AmrParams {
    int min_scale = 2;   // s, smallest structuring-element radius (>= 1)
    int max_scale = 50;  // m, scale cap (>= min_scale)
    double eta = 1e-4;   // convergence threshold on the max pointwise gap

    void validate() const;
};

struct AmrResult {
    GradientImage reconstructed;     // pointwise max of per-scale reconstructions
    int iterations_used = 0;         // final scale reached
    std::vector<double> gap_history; // gap_history[0] = max|first term|, then per-scale gaps
};

/// Adaptive morphological reconstruction: fold closing_by_reconstruction
/// over disk radii min_scale..max_scale with pointwise max, stopping early
/// once the gap drops to eta (first tested at min_scale+1). Deterministic;
/// the fold is evaluated in ascending scale order.
AmrResult amr(const GradientImage& g, const AmrParams& params);

/// max over pixels of |cur - prev|; shapes must match.
double convergence_gap(const GradientImage& prev, const GradientImage& cur);

} // namespace morphoseg
