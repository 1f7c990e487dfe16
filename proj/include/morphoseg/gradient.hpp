#pragma once

#include <filesystem>

#include "morphoseg/image.hpp"

namespace morphoseg {

/// 3x3 Sobel magnitude sqrt(Gx^2+Gy^2), border by replication, globally
/// normalized so the maximum magnitude maps to 1. An all-flat image maps to
/// all zeros.
GradientImage sobel_gradient(const GrayImage& img);

/// Ingest an externally computed gradient map: PFM (clamped to [0,1]) or
/// PGM (divided by maxval). Non-finite samples are a format error.
GradientImage load_gradient(const std::filesystem::path& path);

} // namespace morphoseg
