#pragma once

#include <span>

#include "morphoseg/image.hpp"

namespace morphoseg {

/// pri/cv in [0,1], vi >= 0 (bits).
struct MetricReport {
    double pri = 0;
    double cv = 0;
    double vi = 0;
};

/// Fraction of unordered pixel pairs on which the two partitions agree
/// (same-same or different-different), via the contingency table.
double rand_index(const LabelImage& a, const LabelImage& b);

/// Mean rand index of seg against each ground truth.
double pri(const LabelImage& seg, std::span<const LabelImage> gts);

/// Covering of gt by seg: sum over gt regions of (|R|/n) * best IoU against
/// a seg region.
double covering(const LabelImage& seg, const LabelImage& gt);
double covering(const LabelImage& seg, std::span<const LabelImage> gts);

/// Variation of information H(seg) + H(gt) - 2 I(seg,gt), base-2 logs.
double vi(const LabelImage& seg, const LabelImage& gt);
double vi(const LabelImage& seg, std::span<const LabelImage> gts);

MetricReport evaluate(const LabelImage& seg, std::span<const LabelImage> gts);

} // namespace morphoseg
