#include "morphoseg/color.hpp"

#include <algorithm>
#include <cmath>

namespace morphoseg {

namespace {

inline double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

inline double lab_f(double t) {
    // 6/29 knee of the CIELAB curve
    constexpr double d3 = (6.0 / 29.0) * (6.0 / 29.0) * (6.0 / 29.0);
    constexpr double k = 1.0 / (3.0 * (6.0 / 29.0) * (6.0 / 29.0));
    return t > d3 ? std::cbrt(t) : k * t + 4.0 / 29.0;
}

// D65 reference white
constexpr double kXn = 0.95047;
constexpr double kYn = 1.0;
constexpr double kZn = 1.08883;

} // namespace

std::array<float, 3> srgb_to_lab(float r, float g, float b) {
    const double rl = srgb_to_linear(r);
    const double gl = srgb_to_linear(g);
    const double bl = srgb_to_linear(b);

    const double x = 0.4124564 * rl + 0.3575761 * gl + 0.1804375 * bl;
    const double y = 0.2126729 * rl + 0.7151522 * gl + 0.0721750 * bl;
    const double z = 0.0193339 * rl + 0.1191920 * gl + 0.9503041 * bl;

    const double fx = lab_f(x / kXn);
    const double fy = lab_f(y / kYn);
    const double fz = lab_f(z / kZn);

    return {static_cast<float>(116.0 * fy - 16.0), static_cast<float>(500.0 * (fx - fy)),
            static_cast<float>(200.0 * (fy - fz))};
}

LabImage rgb_to_lab(const ColorImage& img) {
    LabImage out;
    out.width = img.width;
    out.height = img.height;
    out.data.resize(img.data.size());
    for (size_t i = 0; i < img.data.size(); ++i)
        out.data[i] = srgb_to_lab(img.data[i][0], img.data[i][1], img.data[i][2]);
    return out;
}

GrayImage to_gray(const ColorImage& img) {
    GrayImage out(img.width, img.height);
    for (size_t i = 0; i < img.data.size(); ++i) {
        const auto& px = img.data[i];
        const float v = 0.299f * px[0] + 0.587f * px[1] + 0.114f * px[2];
        out.data[i] = std::clamp(v, 0.0f, 1.0f);
    }
    return out;
}

} // namespace morphoseg
