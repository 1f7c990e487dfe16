#include "morphoseg/amr.hpp"

#include <algorithm>
#include <cmath>

#include "morphoseg/morphology.hpp"

namespace morphoseg {

void AmrParams::validate() const {
    if (min_scale < 1) throw ParamError("amr: min_scale must be >= 1");
    if (max_scale < min_scale) throw ParamError("amr: max_scale must be >= min_scale");
    if (!(eta >= 0.0)) throw ParamError("amr: eta must be >= 0");
}

double convergence_gap(const GradientImage& prev, const GradientImage& cur) {
    if (!prev.same_shape(cur)) throw ShapeError("convergence_gap: images have different shapes");
    double gap = 0.0;
    for (size_t i = 0; i < prev.data.size(); ++i)
        gap = std::max(gap, std::abs(static_cast<double>(cur.data[i]) - prev.data[i]));
    return gap;
}

AmrResult amr(const GradientImage& g, const AmrParams& params) {
    params.validate();

    AmrResult res;
    for (int scale = params.min_scale; scale <= params.max_scale; ++scale) {
        const GrayImage term = closing_by_reconstruction(g, StructuringElement::disk(scale));
        res.iterations_used = scale;

        if (scale == params.min_scale) {
            res.reconstructed = term;
            double m = 0.0;
            for (float v : term.data) m = std::max(m, std::abs(static_cast<double>(v)));
            res.gap_history.push_back(m);
            continue;
        }

        GradientImage next = res.reconstructed;
        for (size_t i = 0; i < next.data.size(); ++i)
            next.data[i] = std::max(next.data[i], term.data[i]);
        const double gap = convergence_gap(res.reconstructed, next);
        res.gap_history.push_back(gap);
        res.reconstructed = std::move(next);

        // eta == 0 disables early stopping: the full scale family is folded.
        if (params.eta > 0.0 && gap <= params.eta) break;
    }
    return res;
}

} // namespace morphoseg
