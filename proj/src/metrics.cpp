#include "morphoseg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

namespace morphoseg {

namespace {

struct Contingency {
    std::vector<int64_t> a_sizes; // indexed by label-1
    std::vector<int64_t> b_sizes;
    std::unordered_map<uint64_t, int64_t> joint;
    int64_t n = 0;
};

Contingency contingency(const LabelImage& a, const LabelImage& b, const char* op) {
    if (!a.same_shape(b)) throw ShapeError(std::string(op) + ": partitions have different shapes");
    if (!is_complete_partition(a) || !is_complete_partition(b))
        throw ParamError(std::string(op) + ": inputs must be complete partitions");

    Contingency c;
    c.n = static_cast<int64_t>(a.size());
    c.a_sizes.assign(static_cast<size_t>(a.num_labels), 0);
    c.b_sizes.assign(static_cast<size_t>(b.num_labels), 0);
    c.joint.reserve(a.size() / 4 + 1);
    for (size_t i = 0; i < a.labels.size(); ++i) {
        const auto la = static_cast<uint64_t>(a.labels[i]);
        const auto lb = static_cast<uint64_t>(b.labels[i]);
        ++c.a_sizes[static_cast<size_t>(la) - 1];
        ++c.b_sizes[static_cast<size_t>(lb) - 1];
        ++c.joint[(la << 32) | lb];
    }
    return c;
}

inline double pairs2(int64_t m) { return 0.5 * static_cast<double>(m) * static_cast<double>(m - 1); }

} // namespace

double rand_index(const LabelImage& a, const LabelImage& b) {
    const Contingency c = contingency(a, b, "rand_index");
    if (c.n < 2) return 1.0;

    double sum_a = 0.0, sum_b = 0.0, sum_joint = 0.0;
    for (int64_t s : c.a_sizes) sum_a += pairs2(s);
    for (int64_t s : c.b_sizes) sum_b += pairs2(s);
    for (const auto& [key, cnt] : c.joint) sum_joint += pairs2(cnt);

    const double total = pairs2(c.n);
    // agreements = pairs joint in both + pairs separate in both
    const double agreements = total - sum_a - sum_b + 2.0 * sum_joint;
    return agreements / total;
}

double pri(const LabelImage& seg, std::span<const LabelImage> gts) {
    if (gts.empty()) throw ParamError("pri: at least one ground truth required");
    double sum = 0.0;
    for (const LabelImage& gt : gts) sum += rand_index(seg, gt);
    return sum / static_cast<double>(gts.size());
}

double covering(const LabelImage& seg, const LabelImage& gt) {
    const Contingency c = contingency(seg, gt, "covering");

    // best IoU of each ground-truth region against any segmentation region
    std::vector<double> best(static_cast<size_t>(gt.num_labels), 0.0);
    for (const auto& [key, cnt] : c.joint) {
        const auto ls = static_cast<size_t>(key >> 32);
        const auto lg = static_cast<size_t>(key & 0xffffffffu);
        const double inter = static_cast<double>(cnt);
        const double uni = static_cast<double>(c.a_sizes[ls - 1]) +
                           static_cast<double>(c.b_sizes[lg - 1]) - inter;
        best[lg - 1] = std::max(best[lg - 1], inter / uni);
    }

    double sum = 0.0;
    for (size_t r = 0; r < best.size(); ++r)
        sum += static_cast<double>(c.b_sizes[r]) / static_cast<double>(c.n) * best[r];
    return sum;
}

double covering(const LabelImage& seg, std::span<const LabelImage> gts) {
    if (gts.empty()) throw ParamError("covering: at least one ground truth required");
    double sum = 0.0;
    for (const LabelImage& gt : gts) sum += covering(seg, gt);
    return sum / static_cast<double>(gts.size());
}

double vi(const LabelImage& seg, const LabelImage& gt) {
    const Contingency c = contingency(seg, gt, "vi");
    const double n = static_cast<double>(c.n);

    auto entropy = [n](const std::vector<int64_t>& sizes) {
        double h = 0.0;
        for (int64_t s : sizes)
            if (s > 0) {
                const double p = static_cast<double>(s) / n;
                h -= p * std::log2(p);
            }
        return h;
    };
    const double h_seg = entropy(c.a_sizes);
    const double h_gt = entropy(c.b_sizes);

    double mutual = 0.0;
    for (const auto& [key, cnt] : c.joint) {
        const auto ls = static_cast<size_t>(key >> 32);
        const auto lg = static_cast<size_t>(key & 0xffffffffu);
        const double p = static_cast<double>(cnt) / n;
        const double ps = static_cast<double>(c.a_sizes[ls - 1]) / n;
        const double pg = static_cast<double>(c.b_sizes[lg - 1]) / n;
        mutual += p * std::log2(p / (ps * pg));
    }

    return std::max(0.0, h_seg + h_gt - 2.0 * mutual);
}

double vi(const LabelImage& seg, std::span<const LabelImage> gts) {
    if (gts.empty()) throw ParamError("vi: at least one ground truth required");
    double sum = 0.0;
    for (const LabelImage& gt : gts) sum += vi(seg, gt);
    return sum / static_cast<double>(gts.size());
}

MetricReport evaluate(const LabelImage& seg, std::span<const LabelImage> gts) {
    return {pri(seg, gts), covering(seg, gts), vi(seg, gts)};
}

} // namespace morphoseg
