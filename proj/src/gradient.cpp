#include "morphoseg/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "morphoseg/io.hpp"

namespace morphoseg {

GradientImage sobel_gradient(const GrayImage& img) {
    const int w = img.width, h = img.height;
    GradientImage out(w, h);

    auto sample = [&](int x, int y) { // border by replication
        return img.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1));
    };

    float max_mag = 0.0f;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const float gx = (sample(x + 1, y - 1) + 2.0f * sample(x + 1, y) + sample(x + 1, y + 1)) -
                             (sample(x - 1, y - 1) + 2.0f * sample(x - 1, y) + sample(x - 1, y + 1));
            const float gy = (sample(x - 1, y + 1) + 2.0f * sample(x, y + 1) + sample(x + 1, y + 1)) -
                             (sample(x - 1, y - 1) + 2.0f * sample(x, y - 1) + sample(x + 1, y - 1));
            const float mag = std::sqrt(gx * gx + gy * gy);
            out.at(x, y) = mag;
            max_mag = std::max(max_mag, mag);
        }

    if (max_mag > 0.0f)
        for (float& v : out.data) v /= max_mag;
    return out;
}

GradientImage load_gradient(const std::filesystem::path& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw IoError(path.string() + ": cannot open for reading");
    char magic[2] = {0, 0};
    probe.read(magic, 2);
    probe.close();

    GradientImage g;
    if (magic[0] == 'P' && magic[1] == 'f') {
        g = read_pfm(path);
        for (float& v : g.data) v = std::clamp(v, 0.0f, 1.0f);
    } else if (magic[0] == 'P' && magic[1] == '5') {
        auto loaded = load_image(path);
        g = std::get<GrayImage>(loaded);
    } else {
        throw FormatError(path.string() + ": gradient files must be PFM or PGM");
    }
    validate_gray(g, "gradient");
    return g;
}

} // namespace morphoseg
