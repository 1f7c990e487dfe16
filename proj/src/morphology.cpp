#include "morphoseg/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <queue>
#include <string>

namespace morphoseg {

StructuringElement StructuringElement::disk(int radius) {
    if (radius < 0) throw ParamError("structuring element radius must be >= 0");
    StructuringElement se;
    se.radius = radius;
    const int r2 = radius * radius;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= r2) se.offsets.push_back({dx, dy});
    return se;
}

namespace {

void check_shapes(const GrayImage& a, const GrayImage& b, const char* op) {
    if (!a.same_shape(b))
        throw ShapeError(std::string(op) + ": images have different shapes");
}

// Sliding-window extremum along one row, window [i-r, i+r] clipped to the
// row. Monotonic-deque, O(n) amortized; selection only, so bit-exact
// against the brute force regardless of fold order.
template <typename Cmp>
void sliding_extremum(const float* src, int n, int r, float* dst, Cmp better) {
    std::deque<int> q; // candidate indices, best at front
    int right = -1;
    for (int i = 0; i < n; ++i) {
        const int hi = std::min(n - 1, i + r);
        while (right < hi) {
            ++right;
            while (!q.empty() && !better(src[q.back()], src[right])) q.pop_back();
            q.push_back(right);
        }
        const int lo = std::max(0, i - r);
        while (q.front() < lo) q.pop_front();
        dst[i] = src[q.front()];
    }
}

enum class Extremum { min, max };

// Disk erosion/dilation by row decomposition: the disk is the union of
// horizontal runs |dx| <= rx(dy), so the 2-D extremum is a fold of 1-D
// sliding extrema over the contributing rows.
GrayImage disk_extremum(const GrayImage& img, const StructuringElement& se, Extremum kind) {
    const int w = img.width, h = img.height, r = se.radius;
    if (r == 0 || img.data.empty()) return img;

    // rx[dy+r]: horizontal half-width of the disk at vertical offset dy
    std::vector<int> rx(static_cast<size_t>(2 * r + 1));
    for (int dy = -r; dy <= r; ++dy)
        rx[static_cast<size_t>(dy + r)] =
            static_cast<int>(std::floor(std::sqrt(static_cast<double>(r) * r - static_cast<double>(dy) * dy)));

    const bool is_min = kind == Extremum::min;
    auto better = [is_min](float a, float b) { return is_min ? a < b : a > b; };

    // one row-filtered copy of the image per distinct run half-width
    std::map<int, std::vector<float>> filtered;
    for (int v : rx) filtered.emplace(v, std::vector<float>());
    for (auto& [halfw, buf] : filtered) {
        buf.resize(img.data.size());
        for (int y = 0; y < h; ++y)
            sliding_extremum(&img.data[static_cast<size_t>(y) * w], w, halfw,
                             &buf[static_cast<size_t>(y) * w], better);
    }

    GrayImage out(w, h);
    for (int y = 0; y < h; ++y) {
        float* dst = &out.data[static_cast<size_t>(y) * w];
        bool first = true;
        for (int dy = -r; dy <= r; ++dy) {
            const int sy = y + dy;
            if (sy < 0 || sy >= h) continue; // border truncation
            const float* row =
                &filtered[rx[static_cast<size_t>(dy + r)]][static_cast<size_t>(sy) * w];
            if (first) {
                std::copy(row, row + w, dst);
                first = false;
            } else if (is_min) {
                for (int x = 0; x < w; ++x) dst[x] = std::min(dst[x], row[x]);
            } else {
                for (int x = 0; x < w; ++x) dst[x] = std::max(dst[x], row[x]);
            }
        }
    }
    return out;
}

// Raster-scan + FIFO hybrid for geodesic reconstruction. The elementary
// step is the radius-1 disk (4-connected plus center). Template parameter
// selects the ordering: Grow=true reconstructs by dilation (marker <= mask),
// Grow=false by erosion (marker >= mask).
template <bool Grow>
GrayImage reconstruct_impl(const GrayImage& marker, const GrayImage& mask, const char* op) {
    check_shapes(marker, mask, op);
    const int w = marker.width, h = marker.height;

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const float f = marker.at(x, y), g = mask.at(x, y);
            if (Grow ? f > g : f < g)
                throw PreconditionError(std::string(op) + ": marker violates mask at pixel (" +
                                        std::to_string(x) + "," + std::to_string(y) + ")");
        }

    auto outer = [](float a, float b) { return Grow ? std::max(a, b) : std::min(a, b); };
    auto clip = [](float a, float b) { return Grow ? std::min(a, b) : std::max(a, b); };

    GrayImage out = marker;
    auto J = [&](int x, int y) -> float& { return out.at(x, y); };
    const auto& I = mask;

    // forward raster pass: fold the already-visited half neighborhood
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            float v = J(x, y);
            if (x > 0) v = outer(v, J(x - 1, y));
            if (y > 0) v = outer(v, J(x, y - 1));
            J(x, y) = clip(v, I.at(x, y));
        }

    // backward pass, queueing pixels whose change can still propagate
    std::queue<int> fifo;
    for (int y = h - 1; y >= 0; --y)
        for (int x = w - 1; x >= 0; --x) {
            float v = J(x, y);
            if (x + 1 < w) v = outer(v, J(x + 1, y));
            if (y + 1 < h) v = outer(v, J(x, y + 1));
            J(x, y) = clip(v, I.at(x, y));

            const float jv = J(x, y);
            auto pending = [&](int nx, int ny) {
                const float jn = J(nx, ny);
                return (Grow ? jn < jv : jn > jv) && jn != I.at(nx, ny);
            };
            if ((x + 1 < w && pending(x + 1, y)) || (y + 1 < h && pending(x, y + 1)))
                fifo.push(y * w + x);
        }

    while (!fifo.empty()) {
        const int p = fifo.front();
        fifo.pop();
        const int x = p % w, y = p / w;
        const float jv = J(x, y);
        const int nx[4] = {x - 1, x + 1, x, x};
        const int ny[4] = {y, y, y - 1, y + 1};
        for (int k = 0; k < 4; ++k) {
            if (nx[k] < 0 || nx[k] >= w || ny[k] < 0 || ny[k] >= h) continue;
            const float jn = J(nx[k], ny[k]);
            if ((Grow ? jn < jv : jn > jv) && jn != I.at(nx[k], ny[k])) {
                J(nx[k], ny[k]) = clip(jv, I.at(nx[k], ny[k]));
                fifo.push(ny[k] * w + nx[k]);
            }
        }
    }
    return out;
}

} // namespace

GrayImage dilate(const GrayImage& img, const StructuringElement& se) {
    return disk_extremum(img, se, Extremum::max);
}

GrayImage erode(const GrayImage& img, const StructuringElement& se) {
    return disk_extremum(img, se, Extremum::min);
}

GrayImage reconstruct_dilation(const GrayImage& marker, const GrayImage& mask) {
    return reconstruct_impl<true>(marker, mask, "reconstruct_dilation");
}

GrayImage reconstruct_erosion(const GrayImage& marker, const GrayImage& mask) {
    return reconstruct_impl<false>(marker, mask, "reconstruct_erosion");
}

GrayImage opening_by_reconstruction(const GrayImage& g, const StructuringElement& se) {
    const GrayImage stage1 = reconstruct_erosion(dilate(g, se), g);
    return reconstruct_dilation(erode(stage1, se), stage1);
}

GrayImage closing_by_reconstruction(const GrayImage& g, const StructuringElement& se) {
    const GrayImage stage1 = reconstruct_dilation(erode(g, se), g);
    return reconstruct_erosion(dilate(stage1, se), stage1);
}

} // namespace morphoseg
