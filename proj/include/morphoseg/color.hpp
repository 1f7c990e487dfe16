#pragma once

#include "morphoseg/image.hpp"

namespace morphoseg {

/// sRGB -> linear RGB (D65) -> XYZ -> CIELAB, D65 reference white.
LabImage rgb_to_lab(const ColorImage& img);

/// Per-pixel CIELAB of a single sRGB triple.
std::array<float, 3> srgb_to_lab(float r, float g, float b);

/// BT.601 luminance: 0.299 R + 0.587 G + 0.114 B, clamped to [0,1].
GrayImage to_gray(const ColorImage& img);

} // namespace morphoseg
