#pragma once

#include <filesystem>
#include <variant>

#include "morphoseg/image.hpp"

namespace morphoseg {

using LoadedImage = std::variant<GrayImage, ColorImage>;

/// Decode a PGM (P5, 8/16-bit), PPM (P6) or PNG (8-bit gray/RGB) file.
/// Samples are rescaled to [0,1] by the format's max value.
LoadedImage load_image(const std::filesystem::path& path);

/// Writes a 16-bit grayscale PNG whose pixel values are the label integers.
/// Round-trips bit-exactly through load_labels. Labels above 65535 overflow
/// the container and raise RangeError.
void save_labels(const LabelImage& labels, const std::filesystem::path& path);
LabelImage load_labels(const std::filesystem::path& path);

/// PFM, grayscale "Pf", scale -1.0 (little-endian), rows bottom-to-top.
void write_pfm(const GrayImage& img, const std::filesystem::path& path);
GrayImage read_pfm(const std::filesystem::path& path);

void write_png_gray8(const GrayImage& img, const std::filesystem::path& path);
void write_png_rgb8(const ColorImage& img, const std::filesystem::path& path);

void write_pgm16(const GrayImage& img, const std::filesystem::path& path);

} // namespace morphoseg
