#pragma once

#include "morphoseg/image.hpp"

namespace morphoseg {

/// Ordered sequence of partitions, finest first. Level 0 is the watershed of
/// the raw gradient; level z >= 1 is the watershed of the reconstruction
/// capped at scale_caps[z]. All levels share dimensions.
struct Hierarchy {
    std::vector<LabelImage> levels;
    std::vector<int> scale_caps; // scale_caps[0] == 0 marks the raw level
};

struct RefinementCheck {
    bool ok = false;
    int violations = 0; // fine regions overlapping >= 2 coarse regions
};

/// Build the nested family: level 0 from the raw gradient, then one level
/// per cap min_scale..max_cap with eta forced to 0 (no early stop), so the
/// underlying gradients are exactly the monotone family.
Hierarchy build_hierarchy(const GradientImage& g, int min_scale, int max_cap,
                          Connectivity conn = Connectivity::eight);

/// True iff every region of `fine` maps into exactly one region of `coarse`.
/// Both inputs must be complete partitions of the same domain.
RefinementCheck is_refinement(const LabelImage& fine, const LabelImage& coarse);

} // namespace morphoseg
