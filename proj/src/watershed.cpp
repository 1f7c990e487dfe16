#include "morphoseg/watershed.hpp"

#include <queue>
#include <vector>

#include "morphoseg/color.hpp"
#include "morphoseg/gradient.hpp"

namespace morphoseg {

namespace {

struct Neighborhood {
    int dx[8];
    int dy[8];
    int count;
};

Neighborhood neighbors_of(Connectivity conn) {
    if (conn == Connectivity::four) return {{-1, 1, 0, 0}, {0, 0, -1, 1}, 4};
    return {{-1, 1, 0, 0, -1, 1, -1, 1}, {0, 0, -1, 1, -1, -1, 1, 1}, 8};
}

} // namespace

LabelImage regional_minima(const GradientImage& g, Connectivity conn) {
    const int w = g.width, h = g.height;
    const Neighborhood nb = neighbors_of(conn);

    LabelImage out(w, h, 0);
    std::vector<char> visited(g.size(), 0);
    std::vector<int> plateau, frontier;
    int next_label = 1;

    for (int start = 0; start < static_cast<int>(g.size()); ++start) {
        if (visited[start]) continue;
        const float level = g.data[start];

        // flood the equal-valued plateau, watching for a lower neighbor
        bool is_minimum = true;
        plateau.clear();
        frontier.clear();
        frontier.push_back(start);
        visited[start] = 1;
        while (!frontier.empty()) {
            const int p = frontier.back();
            frontier.pop_back();
            plateau.push_back(p);
            const int x = p % w, y = p / w;
            for (int k = 0; k < nb.count; ++k) {
                const int qx = x + nb.dx[k], qy = y + nb.dy[k];
                if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
                const int q = qy * w + qx;
                if (g.data[q] < level) {
                    is_minimum = false;
                } else if (g.data[q] == level && !visited[q]) {
                    visited[q] = 1;
                    frontier.push_back(q);
                }
            }
        }

        if (is_minimum) {
            for (int p : plateau) out.labels[p] = next_label;
            ++next_label;
        }
    }
    out.num_labels = next_label - 1;
    return out;
}

LabelImage watershed_from_markers(const GradientImage& g, const LabelImage& seeds,
                                  Connectivity conn) {
    if (g.width != seeds.width || g.height != seeds.height)
        throw ShapeError("watershed_from_markers: gradient and seed shapes differ");
    if (seeds.num_labels < 1) throw ParamError("watershed_from_markers: empty seed image");

    const int w = g.width, h = g.height;
    const Neighborhood nb = neighbors_of(conn);

    struct Entry {
        float priority;
        uint64_t seq;
        int32_t pixel;
        int32_t label;
    };
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.priority != b.priority) return a.priority > b.priority;
            return a.seq > b.seq; // FIFO within equal priority
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, Later> queue;

    LabelImage out = seeds;
    uint64_t seq = 0;

    auto push_neighbors = [&](int p, int32_t label) {
        const int x = p % w, y = p / w;
        for (int k = 0; k < nb.count; ++k) {
            const int qx = x + nb.dx[k], qy = y + nb.dy[k];
            if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
            const int q = qy * w + qx;
            if (out.labels[q] == 0) queue.push({g.data[q], seq++, q, label});
        }
    };

    for (int p = 0; p < static_cast<int>(out.size()); ++p) // seeds in raster order
        if (out.labels[p] > 0) push_neighbors(p, out.labels[p]);

    while (!queue.empty()) {
        const Entry e = queue.top();
        queue.pop();
        if (out.labels[e.pixel] != 0) continue;
        out.labels[e.pixel] = e.label;
        push_neighbors(e.pixel, e.label);
    }

    out.num_labels = seeds.num_labels;
    return out;
}

LabelImage amr_wt(const GradientImage& g, const AmrParams& params, Connectivity conn) {
    const AmrResult r = amr(g, params);
    const LabelImage seeds = regional_minima(r.reconstructed, conn);
    return watershed_from_markers(r.reconstructed, seeds, conn);
}

LabelImage amr_wt(const ColorImage& img, const AmrParams& params, Connectivity conn) {
    return amr_wt(sobel_gradient(to_gray(img)), params, conn);
}

} // namespace morphoseg
