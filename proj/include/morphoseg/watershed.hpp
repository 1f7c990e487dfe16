#pragma once

#include "morphoseg/amr.hpp"
#include "morphoseg/image.hpp"

namespace morphoseg {

/// Label every maximal connected equal-valued plateau whose neighbors are
/// all strictly greater. Minima get labels 1..K in raster order of their
/// first pixel; all other pixels get 0.
LabelImage regional_minima(const GradientImage& g, Connectivity conn = Connectivity::eight);

/// Meyer-style flooding from the seed labels: priority queue ordered by
/// gradient value with strict FIFO tie-break, seeds enqueued in raster
/// order. Every pixel ends up in a basin (no watershed-line pixels), every
/// output region is conn-connected and keeps its seed label. Deterministic.
LabelImage watershed_from_markers(const GradientImage& g, const LabelImage& seeds,
                                  Connectivity conn = Connectivity::eight);

/// gradient -> amr -> regional_minima -> watershed, returning the complete
/// partition of the reconstructed gradient.
LabelImage amr_wt(const GradientImage& g, const AmrParams& params,
                  Connectivity conn = Connectivity::eight);

/// Same pipeline starting from an RGB image (BT.601 gray + Sobel).
LabelImage amr_wt(const ColorImage& img, const AmrParams& params,
                  Connectivity conn = Connectivity::eight);

} // namespace morphoseg
