// Test-only reference implementations: naive, obviously-correct versions of
// the operations, kept independent of the library's optimized paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "morphoseg/image.hpp"
#include "morphoseg/morphology.hpp"

namespace oracle {

using morphoseg::Connectivity;
using morphoseg::GrayImage;
using morphoseg::LabelImage;
using morphoseg::StructuringElement;

inline double unit(std::mt19937& rng) { return (rng() >> 8) * (1.0 / 16777216.0); }

// random image on the 8-bit grid (or a coarser one, to force plateaus)
inline GrayImage random_image(int w, int h, std::mt19937& rng, int levels = 255) {
    GrayImage img(w, h);
    for (float& v : img.data)
        v = static_cast<float>(static_cast<double>(rng() % (levels + 1)) / levels);
    return img;
}

// exhaustive neighborhood sweep with border truncation
inline GrayImage brute_extremum(const GrayImage& img, const StructuringElement& se, bool take_min) {
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            float best = img.at(x, y);
            for (const auto& off : se.offsets) {
                const int qx = x + off[0], qy = y + off[1];
                if (!img.in_bounds(qx, qy)) continue;
                best = take_min ? std::min(best, img.at(qx, qy)) : std::max(best, img.at(qx, qy));
            }
            out.at(x, y) = best;
        }
    return out;
}

// one elementary geodesic step on the radius-1 disk (plus shape)
inline GrayImage geodesic_step(const GrayImage& img, const GrayImage& limit, bool grow) {
    static const StructuringElement plus = StructuringElement::disk(1);
    GrayImage stepped = brute_extremum(img, plus, !grow);
    for (size_t i = 0; i < stepped.data.size(); ++i)
        stepped.data[i] =
            grow ? std::min(stepped.data[i], limit.data[i]) : std::max(stepped.data[i], limit.data[i]);
    return stepped;
}

// literal iterate-to-fixpoint reconstruction
inline GrayImage naive_reconstruct(const GrayImage& marker, const GrayImage& mask, bool grow) {
    GrayImage cur = marker;
    for (;;) {
        GrayImage next = geodesic_step(cur, mask, grow);
        if (next.data == cur.data) return cur;
        cur = std::move(next);
    }
}

inline GrayImage naive_reconstruct_dilation(const GrayImage& marker, const GrayImage& mask) {
    return naive_reconstruct(marker, mask, true);
}

inline GrayImage naive_reconstruct_erosion(const GrayImage& marker, const GrayImage& mask) {
    return naive_reconstruct(marker, mask, false);
}

// marker/mask pair for dilation reconstruction (marker <= mask by construction)
inline std::pair<GrayImage, GrayImage> random_marker_mask(int w, int h, std::mt19937& rng) {
    GrayImage mask = random_image(w, h, rng);
    GrayImage marker(w, h);
    for (size_t i = 0; i < mask.data.size(); ++i) {
        const float t = static_cast<float>(static_cast<double>(rng() % 256) / 255.0);
        marker.data[i] = std::min(mask.data[i], t);
    }
    return {marker, mask};
}

// plateau check by definition: connected equal component whose boundary
// neighbors are all strictly greater
inline LabelImage brute_regional_minima(const GrayImage& g, Connectivity conn) {
    const int w = g.width, h = g.height;
    const int n8x[8] = {-1, 1, 0, 0, -1, 1, -1, 1};
    const int n8y[8] = {0, 0, -1, 1, -1, -1, 1, 1};
    const int count = conn == Connectivity::four ? 4 : 8;

    LabelImage out(w, h, 0);
    std::vector<int> comp(g.size(), -1);
    int ncomp = 0;
    for (int start = 0; start < static_cast<int>(g.size()); ++start) {
        if (comp[start] >= 0) continue;
        std::vector<int> stack{start};
        comp[start] = ncomp;
        while (!stack.empty()) {
            const int p = stack.back();
            stack.pop_back();
            const int x = p % w, y = p / w;
            for (int k = 0; k < count; ++k) {
                const int qx = x + n8x[k], qy = y + n8y[k];
                if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
                const int q = qy * w + qx;
                if (comp[q] < 0 && g.data[q] == g.data[p]) {
                    comp[q] = ncomp;
                    stack.push_back(q);
                }
            }
        }
        ++ncomp;
    }

    std::vector<char> is_min(static_cast<size_t>(ncomp), 1);
    for (int p = 0; p < static_cast<int>(g.size()); ++p) {
        const int x = p % w, y = p / w;
        for (int k = 0; k < count; ++k) {
            const int qx = x + n8x[k], qy = y + n8y[k];
            if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
            if (g.data[qy * w + qx] < g.data[p]) is_min[static_cast<size_t>(comp[p])] = 0;
        }
    }

    std::vector<int32_t> label_of(static_cast<size_t>(ncomp), 0);
    int32_t next = 1;
    for (int p = 0; p < static_cast<int>(g.size()); ++p) {
        const int c = comp[p];
        if (!is_min[static_cast<size_t>(c)]) continue;
        if (label_of[static_cast<size_t>(c)] == 0) label_of[static_cast<size_t>(c)] = next++;
        out.labels[p] = label_of[static_cast<size_t>(c)];
    }
    out.num_labels = next - 1;
    return out;
}

// all-pairs Rand index, O(n^2)
inline double brute_rand_index(const LabelImage& a, const LabelImage& b) {
    const auto n = a.labels.size();
    long long agree = 0, total = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            const bool same_a = a.labels[i] == a.labels[j];
            const bool same_b = b.labels[i] == b.labels[j];
            if (same_a == same_b) ++agree;
            ++total;
        }
    return total == 0 ? 1.0 : static_cast<double>(agree) / static_cast<double>(total);
}

// exhaustive per-region IoU covering of gt by seg
inline double brute_covering(const LabelImage& seg, const LabelImage& gt) {
    const double n = static_cast<double>(gt.labels.size());
    double sum = 0.0;
    for (int32_t r = 1; r <= gt.num_labels; ++r) {
        std::vector<char> in_gt(gt.labels.size());
        long long gt_size = 0;
        for (size_t i = 0; i < gt.labels.size(); ++i)
            if ((in_gt[i] = gt.labels[i] == r)) ++gt_size;
        double best = 0.0;
        for (int32_t s = 1; s <= seg.num_labels; ++s) {
            long long inter = 0, seg_size = 0;
            for (size_t i = 0; i < seg.labels.size(); ++i) {
                if (seg.labels[i] == s) {
                    ++seg_size;
                    if (in_gt[i]) ++inter;
                }
            }
            const double uni = static_cast<double>(gt_size + seg_size - inter);
            if (uni > 0) best = std::max(best, static_cast<double>(inter) / uni);
        }
        sum += static_cast<double>(gt_size) / n * best;
    }
    return sum;
}

// entropy route to variation of information, base 2
inline double brute_vi(const LabelImage& a, const LabelImage& b) {
    const double n = static_cast<double>(a.labels.size());
    std::set<int32_t> la(a.labels.begin(), a.labels.end());
    std::set<int32_t> lb(b.labels.begin(), b.labels.end());
    double result = 0.0;
    auto plogp = [](double p) { return p > 0 ? p * std::log2(p) : 0.0; };
    for (int32_t va : la) {
        double ca = 0;
        for (auto v : a.labels) ca += v == va;
        result -= plogp(ca / n);
    }
    for (int32_t vb : lb) {
        double cb = 0;
        for (auto v : b.labels) cb += v == vb;
        result -= plogp(cb / n);
    }
    for (int32_t va : la)
        for (int32_t vb : lb) {
            double cab = 0, ca = 0, cb = 0;
            for (size_t i = 0; i < a.labels.size(); ++i) {
                ca += a.labels[i] == va;
                cb += b.labels[i] == vb;
                cab += a.labels[i] == va && b.labels[i] == vb;
            }
            if (cab > 0)
                result -= 2.0 * (cab / n) * std::log2((cab / n) / ((ca / n) * (cb / n)));
        }
    return std::max(0.0, result);
}

// random complete partition with labels 1..k (every label forced present)
inline LabelImage random_partition(int w, int h, int k, std::mt19937& rng) {
    LabelImage out(w, h);
    for (auto& v : out.labels) v = 1 + static_cast<int32_t>(rng() % static_cast<uint32_t>(k));
    for (int32_t l = 1; l <= k; ++l)
        out.labels[static_cast<size_t>(l - 1) % out.labels.size()] = l;
    out.num_labels = k;
    return out;
}

} // namespace oracle
