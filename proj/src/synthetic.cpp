#include "morphoseg/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "morphoseg/io.hpp"

namespace morphoseg {

namespace {

// 8-bit grid so PNG round-trips are exact and convergence gaps are either
// exactly zero or at least 1/255
inline float quantize8(double v) {
    return static_cast<float>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0);
}

inline double smoothstep(double u) {
    u = std::clamp(u, 0.0, 1.0);
    return u * u * (3.0 - 2.0 * u);
}

// smooth ramp centered on `edge`, 0 well below, 1 well above
inline double ramp(double x, double edge, double halfwidth) {
    return smoothstep((x - edge + halfwidth) / (2.0 * halfwidth));
}

// smooth square wave with unit amplitude, boundaries at multiples of `tile`
double square_wave(double x, double tile, double halfwidth) {
    const double cell = std::floor(x / tile);
    const double sign = (static_cast<long long>(cell) % 2 == 0) ? 1.0 : -1.0;
    const double d = std::min(x - cell * tile, (cell + 1.0) * tile - x);
    return d >= halfwidth ? sign : sign * smoothstep(d / halfwidth);
}

} // namespace

GradientImage make_two_basin(int width, int height, float noise_amp, uint32_t seed) {
    // gradient-map structure: dark field, two wide Gaussian wells, and a
    // thin bright ridge along the center column separating the basins
    GradientImage g(width, height);
    const double cx = 0.5 * width, cy = 0.5 * height;
    const double wx1 = 0.25 * width, wx2 = 0.75 * width;
    const double well_sigma = 0.13 * std::min(width, height);
    const double ridge_tau = 2.6;

    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double px = x + 0.5, py = y + 0.5;
            const double rd = px - cx;
            const double ridge = std::exp(-rd * rd / (2.0 * ridge_tau * ridge_tau));
            const double d1 = (px - wx1) * (px - wx1) + (py - cy) * (py - cy);
            const double d2 = (px - wx2) * (px - wx2) + (py - cy) * (py - cy);
            const double well = std::max(std::exp(-d1 / (2.0 * well_sigma * well_sigma)),
                                         std::exp(-d2 / (2.0 * well_sigma * well_sigma)));
            g.at(x, y) = quantize8(0.12 + 0.82 * ridge - 0.10 * well);
        }

    if (noise_amp > 0.0f) {
        // spurious seeds: isolated one-pixel dips on a jittered lattice,
        // kept off the ridge crest
        std::mt19937 rng(seed);
        const int spacing = 6;
        for (int gy = 0; gy * spacing + spacing <= height; ++gy)
            for (int gx = 0; gx * spacing + spacing <= width; ++gx) {
                const int x = gx * spacing + 1 + static_cast<int>(rng() % (spacing - 2));
                const int y = gy * spacing + 1 + static_cast<int>(rng() % (spacing - 2));
                const double depth = noise_amp * (0.75 + 0.75 * ((rng() >> 8) * (1.0 / 16777216.0)));
                if (std::abs(x + 0.5 - cx) <= 2.0) continue;
                g.at(x, y) = quantize8(g.at(x, y) - depth);
            }
    }
    return g;
}

LabelImage two_basin_ground_truth(int width, int height) {
    LabelImage gt(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) gt.at(x, y) = x < width / 2 ? 1 : 2;
    gt.num_labels = 2;
    return gt;
}

GrayImage make_four_quadrant(int width, int height) {
    GrayImage img(width, height);
    const double cx = 0.5 * width, cy = 0.5 * height;
    const double tau = 3.0;
    const double v[4] = {0.2, 0.45, 0.7, 0.95}; // TL TR BL BR

    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double sx = ramp(x + 0.5, cx, tau);
            const double sy = ramp(y + 0.5, cy, tau);
            const double val = (1 - sx) * (1 - sy) * v[0] + sx * (1 - sy) * v[1] +
                               (1 - sx) * sy * v[2] + sx * sy * v[3];
            img.at(x, y) = quantize8(val);
        }
    return img;
}

LabelImage four_quadrant_ground_truth(int width, int height) {
    LabelImage gt(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            gt.at(x, y) = 1 + (x < width / 2 ? 0 : 1) + (y < height / 2 ? 0 : 2);
    gt.num_labels = 4;
    return gt;
}

GrayImage make_checkerboard(int width, int height, int tile) {
    if (tile < 4) throw ParamError("make_checkerboard: tile must be >= 4");
    GrayImage img(width, height);
    const double tau = 2.5;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double wx = square_wave(x + 0.5, tile, tau);
            const double wy = square_wave(y + 0.5, tile, tau);
            img.at(x, y) = quantize8(0.5 + 0.3 * wx * wy);
        }
    return img;
}

LabelImage checkerboard_ground_truth(int width, int height, int tile) {
    LabelImage gt(width, height);
    const int tiles_x = (width + tile - 1) / tile;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            gt.at(x, y) = 1 + (y / tile) * tiles_x + (x / tile);
    gt.recount_labels();
    return gt;
}

ColorImage make_planted_color(int width, int height, int stripes) {
    if (stripes < 2) throw ParamError("make_planted_color: need at least 2 stripes");
    ColorImage img(width, height);
    const double stripe_w = static_cast<double>(width) / stripes;
    const double tau = 2.5;
    const double palette[3][3] = {{0.85, 0.10, 0.10}, {0.10, 0.80, 0.15}, {0.12, 0.15, 0.85}};

    for (int x = 0; x < width; ++x) {
        const double px = x + 0.5;
        double rgb[3];
        const int stripe = std::min(stripes - 1, static_cast<int>(px / stripe_w));
        for (int c = 0; c < 3; ++c) rgb[c] = palette[stripe % 3][c];
        // blend across the two adjacent stripe boundaries
        if (stripe > 0) {
            const double s = ramp(px, stripe * stripe_w, tau);
            for (int c = 0; c < 3; ++c)
                rgb[c] = (1 - s) * palette[(stripe - 1) % 3][c] + s * rgb[c];
        }
        if (stripe + 1 < stripes) {
            const double s = ramp(px, (stripe + 1) * stripe_w, tau);
            for (int c = 0; c < 3; ++c)
                rgb[c] = (1 - s) * rgb[c] + s * palette[(stripe + 1) % 3][c];
        }
        for (int y = 0; y < height; ++y)
            img.at(x, y) = {quantize8(rgb[0]), quantize8(rgb[1]), quantize8(rgb[2])};
    }
    return img;
}

LabelImage planted_color_ground_truth(int width, int height, int stripes) {
    LabelImage gt(width, height);
    const double stripe_w = static_cast<double>(width) / stripes;
    for (int x = 0; x < width; ++x) {
        const int stripe = std::min(stripes - 1, static_cast<int>((x + 0.5) / stripe_w));
        const int32_t label = 1 + stripe % 3;
        for (int y = 0; y < height; ++y) gt.at(x, y) = label;
    }
    gt.recount_labels();
    return gt;
}

int write_demo_corpus(const std::filesystem::path& dir, uint32_t seed) {
    std::filesystem::create_directories(dir);

    write_pfm(make_two_basin(64, 64, 0.04f, seed), dir / "two_basin.pfm");
    save_labels(two_basin_ground_truth(64, 64), dir / "two_basin_gt1.png");

    write_png_gray8(make_four_quadrant(64, 64), dir / "four_quadrant.png");
    save_labels(four_quadrant_ground_truth(64, 64), dir / "four_quadrant_gt1.png");

    write_png_gray8(make_checkerboard(64, 64, 16), dir / "checkerboard.png");
    save_labels(checkerboard_ground_truth(64, 64, 16), dir / "checkerboard_gt1.png");

    write_png_rgb8(make_planted_color(96, 48, 6), dir / "planted_color.png");
    save_labels(planted_color_ground_truth(96, 48, 6), dir / "planted_color_gt1.png");

    return 4;
}

} // namespace morphoseg
