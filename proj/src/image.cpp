#include "morphoseg/image.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace morphoseg {

void LabelImage::recount_labels() {
    std::unordered_set<int32_t> seen;
    for (int32_t v : labels)
        if (v > 0) seen.insert(v);
    num_labels = static_cast<int>(seen.size());
}

bool is_complete_partition(const LabelImage& img) {
    if (img.num_labels <= 0 || img.labels.empty()) return false;
    std::vector<char> present(static_cast<size_t>(img.num_labels) + 1, 0);
    for (int32_t v : img.labels) {
        if (v < 1 || v > img.num_labels) return false;
        present[static_cast<size_t>(v)] = 1;
    }
    return std::all_of(present.begin() + 1, present.end(), [](char c) { return c != 0; });
}

void validate_gray(const GrayImage& img, const char* what) {
    if (img.width <= 0 || img.height <= 0 ||
        img.data.size() != static_cast<size_t>(img.width) * img.height)
        throw ShapeError(std::string(what) + ": data length does not match width x height");
    for (float v : img.data)
        if (!std::isfinite(v) || v < 0.0f || v > 1.0f)
            throw RangeError(std::string(what) + ": sample outside [0,1]");
}

void validate_color(const ColorImage& img, const char* what) {
    if (img.width <= 0 || img.height <= 0 ||
        img.data.size() != static_cast<size_t>(img.width) * img.height)
        throw ShapeError(std::string(what) + ": data length does not match width x height");
    for (const auto& px : img.data)
        for (float v : px)
            if (!std::isfinite(v) || v < 0.0f || v > 1.0f)
                throw RangeError(std::string(what) + ": channel outside [0,1]");
}

} // namespace morphoseg
