#include "morphoseg/hierarchy.hpp"

#include <algorithm>

#include "morphoseg/amr.hpp"
#include "morphoseg/morphology.hpp"
#include "morphoseg/watershed.hpp"

namespace morphoseg {

Hierarchy build_hierarchy(const GradientImage& g, int min_scale, int max_cap, Connectivity conn) {
    if (min_scale < 1) throw ParamError("build_hierarchy: min_scale must be >= 1");
    if (max_cap < min_scale) throw ParamError("build_hierarchy: max_cap must be >= min_scale");

    Hierarchy hier;
    hier.levels.push_back(
        watershed_from_markers(g, regional_minima(g, conn), conn));
    hier.scale_caps.push_back(0);

    // incremental fold: the cap-q gradient is the cap-(q-1) gradient joined
    // with one more closing term, identical to an independent eta=0 run
    GradientImage psi;
    for (int cap = min_scale; cap <= max_cap; ++cap) {
        const GrayImage term = closing_by_reconstruction(g, StructuringElement::disk(cap));
        if (cap == min_scale) {
            psi = term;
        } else {
            for (size_t i = 0; i < psi.data.size(); ++i)
                psi.data[i] = std::max(psi.data[i], term.data[i]);
        }
        hier.levels.push_back(watershed_from_markers(psi, regional_minima(psi, conn), conn));
        hier.scale_caps.push_back(cap);
    }
    return hier;
}

RefinementCheck is_refinement(const LabelImage& fine, const LabelImage& coarse) {
    if (!fine.same_shape(coarse))
        throw ShapeError("is_refinement: partitions have different shapes");
    if (!is_complete_partition(fine) || !is_complete_partition(coarse))
        throw ParamError("is_refinement: inputs must be complete partitions");

    std::vector<int32_t> mapped(static_cast<size_t>(fine.num_labels) + 1, 0);
    std::vector<char> split(static_cast<size_t>(fine.num_labels) + 1, 0);
    for (size_t i = 0; i < fine.labels.size(); ++i) {
        const int32_t fl = fine.labels[i];
        const int32_t cl = coarse.labels[i];
        if (mapped[fl] == 0)
            mapped[fl] = cl;
        else if (mapped[fl] != cl)
            split[fl] = 1;
    }

    RefinementCheck check;
    check.violations = static_cast<int>(std::count(split.begin(), split.end(), 1));
    check.ok = check.violations == 0;
    return check;
}

} // namespace morphoseg
