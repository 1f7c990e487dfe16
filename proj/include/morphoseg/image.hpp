#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "morphoseg/errors.hpp"

namespace morphoseg {

/// Single-channel image, row-major, samples in [0,1].
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<float> data;

    GrayImage() = default;
    GrayImage(int w, int h, float fill = 0.0f)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    size_t size() const { return data.size(); }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    float& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    float at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    bool same_shape(const GrayImage& o) const { return width == o.width && height == o.height; }
};

/// Gradient magnitudes share the representation of a plain gray image; by
/// convention they are globally normalized so the maximum magnitude is 1.
using GradientImage = GrayImage;

/// RGB image, row-major, channels in [0,1].
struct ColorImage {
    int width = 0;
    int height = 0;
    std::vector<std::array<float, 3>> data;

    ColorImage() = default;
    ColorImage(int w, int h, std::array<float, 3> fill = {0, 0, 0})
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    size_t size() const { return data.size(); }
    std::array<float, 3>& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    const std::array<float, 3>& at(int x, int y) const {
        return data[static_cast<size_t>(y) * width + x];
    }
};

/// Per-pixel (L,a,b) triples; L in [0,100], a/b roughly in [-128,128].
struct LabImage {
    int width = 0;
    int height = 0;
    std::vector<std::array<float, 3>> data;
};

/// Region identifiers, row-major. Label 0 is reserved for "unassigned";
/// a complete partition carries labels 1..num_labels with no zeros.
struct LabelImage {
    int width = 0;
    int height = 0;
    std::vector<int32_t> labels;
    int num_labels = 0; // count of distinct positive labels

    LabelImage() = default;
    LabelImage(int w, int h, int32_t fill = 0)
        : width(w), height(h), labels(static_cast<size_t>(w) * h, fill) {}

    size_t size() const { return labels.size(); }
    int32_t& at(int x, int y) { return labels[static_cast<size_t>(y) * width + x]; }
    int32_t at(int x, int y) const { return labels[static_cast<size_t>(y) * width + x]; }

    bool same_shape(const LabelImage& o) const { return width == o.width && height == o.height; }

    /// Recount distinct positive labels (call after editing labels directly).
    void recount_labels();
};

enum class Connectivity { four, eight };

/// True iff every pixel is labeled and the labels are exactly 1..num_labels.
bool is_complete_partition(const LabelImage& img);

/// Ceiling of the diagonal extent; a structuring element at least this large
/// reaches every pixel from every other pixel.
inline int image_diameter(int width, int height) {
    return static_cast<int>(std::ceil(std::hypot(static_cast<double>(width),
                                                 static_cast<double>(height))));
}

void validate_gray(const GrayImage& img, const char* what = "image");
void validate_color(const ColorImage& img, const char* what = "image");

} // namespace morphoseg
