#pragma once

#include <cstdint>
#include <filesystem>

#include "morphoseg/image.hpp"

namespace morphoseg {

/// Synthetic corpus used by the demo command, the docs, and the test
/// suites. All generators are deterministic; intensities are quantized to
/// the 8-bit grid so file round-trips are exact.

/// Gradient image with two wide Gaussian wells separated by a ridge.
/// noise_amp > 0 superimposes seeded uniform noise (spurious minima).
GradientImage make_two_basin(int width, int height, float noise_amp = 0.0f,
                             uint32_t seed = 7);
LabelImage two_basin_ground_truth(int width, int height);

/// Four flat intensity plateaus meeting at the center, smooth ramps between.
GrayImage make_four_quadrant(int width, int height);
LabelImage four_quadrant_ground_truth(int width, int height);

/// Alternating two-intensity tiles with smooth ramps across tile borders.
GrayImage make_checkerboard(int width, int height, int tile);
LabelImage checkerboard_ground_truth(int width, int height, int tile);

/// Vertical color stripes cycling through three colors; ground truth labels
/// pixels by color class.
ColorImage make_planted_color(int width, int height, int stripes = 6);
LabelImage planted_color_ground_truth(int width, int height, int stripes = 6);

/// Write the corpus (images plus <stem>_gt1.png sidecar labels) into dir.
/// Returns the number of image/ground-truth pairs written.
int write_demo_corpus(const std::filesystem::path& dir, uint32_t seed = 7);

} // namespace morphoseg
