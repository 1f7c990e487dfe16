#include "morphoseg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "morphoseg/color.hpp"
#include "morphoseg/gradient.hpp"
#include "morphoseg/watershed.hpp"

namespace morphoseg {

namespace {

// deterministic across platforms: raw engine words, no std distributions
double next_unit(std::mt19937& rng) { return (rng() >> 8) * (1.0 / 16777216.0); }

} // namespace

JacobiEigen jacobi_eigen(std::vector<double> a, int n) {
    if (n < 1 || a.size() != static_cast<size_t>(n) * n)
        throw ParamError("jacobi_eigen: bad matrix size");

    std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

    auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    auto V = [&](int i, int j) -> double& { return v[static_cast<size_t>(i) * n + j]; };

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
        if (off < 1e-26) break;

        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = A(p, p), aqq = A(q, q);
                A(p, p) = app - t * apq;
                A(q, q) = aqq + t * apq;
                A(p, q) = A(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i != p && i != q) {
                        const double aip = A(i, p), aiq = A(i, q);
                        A(i, p) = A(p, i) = aip - s * (aiq + tau * aip);
                        A(i, q) = A(q, i) = aiq + s * (aip - tau * aiq);
                    }
                    const double vip = V(i, p), viq = V(i, q);
                    V(i, p) = vip - s * (viq + tau * vip);
                    V(i, q) = viq + s * (vip - tau * viq);
                }
            }
    }

    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return A(i, i) < A(j, j); });

    JacobiEigen out;
    out.values.resize(static_cast<size_t>(n));
    out.vectors.resize(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        out.values[static_cast<size_t>(j)] = A(order[static_cast<size_t>(j)], order[static_cast<size_t>(j)]);
        for (int i = 0; i < n; ++i)
            out.vectors[static_cast<size_t>(i) * n + j] = V(i, order[static_cast<size_t>(j)]);
    }
    return out;
}

KMeansResult kmeans(const std::vector<double>& points, int n, int dim, int k, uint32_t seed) {
    if (n < 1 || dim < 1 || points.size() != static_cast<size_t>(n) * dim)
        throw ParamError("kmeans: bad point matrix");
    if (k < 1 || k > n) throw ParamError("kmeans: k must be in [1, n]");

    auto point = [&](int i) { return &points[static_cast<size_t>(i) * dim]; };
    auto sqdist = [&](const double* a, const double* b) {
        double d = 0.0;
        for (int c = 0; c < dim; ++c) {
            const double diff = a[c] - b[c];
            d += diff * diff;
        }
        return d;
    };

    std::mt19937 rng(seed);

    // k-means++ seeding
    std::vector<double> centers(static_cast<size_t>(k) * dim);
    std::vector<double> d2(static_cast<size_t>(n), std::numeric_limits<double>::max());
    {
        const int first = static_cast<int>(rng() % static_cast<uint32_t>(n));
        std::copy(point(first), point(first) + dim, centers.begin());
        for (int c = 1; c < k; ++c) {
            double total = 0.0;
            for (int i = 0; i < n; ++i) {
                d2[i] = std::min(d2[i], sqdist(point(i), &centers[static_cast<size_t>(c - 1) * dim]));
                total += d2[i];
            }
            int chosen = 0;
            if (total > 0.0) {
                const double target = next_unit(rng) * total;
                double acc = 0.0;
                chosen = n - 1;
                for (int i = 0; i < n; ++i) {
                    acc += d2[i];
                    if (acc > target) {
                        chosen = i;
                        break;
                    }
                }
            } else {
                chosen = static_cast<int>(rng() % static_cast<uint32_t>(n));
            }
            std::copy(point(chosen), point(chosen) + dim, centers.begin() + static_cast<size_t>(c) * dim);
        }
    }

    KMeansResult res;
    res.assignment.assign(static_cast<size_t>(n), -1);
    std::vector<int> counts(static_cast<size_t>(k));
    std::vector<double> sums(static_cast<size_t>(k) * dim);

    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        double objective = 0.0;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sqdist(point(i), &centers[0]);
            for (int c = 1; c < k; ++c) {
                const double d = sqdist(point(i), &centers[static_cast<size_t>(c) * dim]);
                if (d < best_d) { // ties keep the lowest index
                    best_d = d;
                    best = c;
                }
            }
            objective += best_d;
            if (res.assignment[static_cast<size_t>(i)] != best) {
                res.assignment[static_cast<size_t>(i)] = best;
                changed = true;
            }
        }
        res.objective_history.push_back(objective);
        if (!changed) break;

        std::fill(counts.begin(), counts.end(), 0);
        std::fill(sums.begin(), sums.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const int c = res.assignment[static_cast<size_t>(i)];
            ++counts[static_cast<size_t>(c)];
            for (int d = 0; d < dim; ++d) sums[static_cast<size_t>(c) * dim + d] += point(i)[d];
        }
        for (int c = 0; c < k; ++c)
            if (counts[static_cast<size_t>(c)] > 0) // empty clusters keep their centroid
                for (int d = 0; d < dim; ++d)
                    centers[static_cast<size_t>(c) * dim + d] =
                        sums[static_cast<size_t>(c) * dim + d] / counts[static_cast<size_t>(c)];
    }
    return res;
}

RegionFeatures region_features(const ColorImage& img, const LabelImage& seg) {
    if (img.width != seg.width || img.height != seg.height)
        throw ShapeError("region_features: image and segmentation shapes differ");
    if (!is_complete_partition(seg))
        throw ParamError("region_features: segmentation must be a complete partition");

    RegionFeatures f;
    f.region_count = seg.num_labels;
    f.mean_lab.assign(static_cast<size_t>(seg.num_labels), {0.0, 0.0, 0.0});
    f.pixel_count.assign(static_cast<size_t>(seg.num_labels), 0);

    const LabImage lab = rgb_to_lab(img);
    for (size_t i = 0; i < lab.data.size(); ++i) {
        const size_t r = static_cast<size_t>(seg.labels[i]) - 1;
        for (int c = 0; c < 3; ++c) f.mean_lab[r][static_cast<size_t>(c)] += lab.data[i][static_cast<size_t>(c)];
        ++f.pixel_count[r];
    }
    for (size_t r = 0; r < f.mean_lab.size(); ++r)
        for (int c = 0; c < 3; ++c) f.mean_lab[r][static_cast<size_t>(c)] /= static_cast<double>(f.pixel_count[r]);
    return f;
}

AffinityMatrix affinity(const RegionFeatures& f, double sigma) {
    if (!(sigma > 0.0)) throw ParamError("affinity: sigma must be > 0");

    AffinityMatrix m;
    m.n = f.region_count;
    m.w.assign(static_cast<size_t>(m.n) * m.n, 1.0);
    const double denom = 2.0 * sigma * sigma;
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j) {
            double d2 = 0.0;
            for (int c = 0; c < 3; ++c) {
                const double d = f.mean_lab[static_cast<size_t>(i)][static_cast<size_t>(c)] -
                                 f.mean_lab[static_cast<size_t>(j)][static_cast<size_t>(c)];
                d2 += d * d;
            }
            m.at(i, j) = m.at(j, i) = std::exp(-d2 / denom);
        }
    return m;
}

std::vector<int> spectral_cluster(const AffinityMatrix& w, int k, uint32_t seed) {
    const int n = w.n;
    if (n < 1) throw ParamError("spectral_cluster: empty affinity matrix");
    if (k < 1 || k > n) throw ParamError("spectral_cluster: k must be in [1, n]");

    // L = I - D^{-1/2} W D^{-1/2}
    std::vector<double> dinv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += w.at(i, j);
        dinv[static_cast<size_t>(i)] = 1.0 / std::sqrt(row);
    }
    std::vector<double> lap(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            lap[static_cast<size_t>(i) * n + j] =
                (i == j ? 1.0 : 0.0) - dinv[static_cast<size_t>(i)] * w.at(i, j) * dinv[static_cast<size_t>(j)];

    const JacobiEigen eig = jacobi_eigen(std::move(lap), n);

    // embedding = k smallest eigenvectors as rows, row-normalized
    std::vector<double> emb(static_cast<size_t>(n) * k);
    for (int i = 0; i < n; ++i) {
        double norm = 0.0;
        for (int j = 0; j < k; ++j) {
            const double e = eig.vectors[static_cast<size_t>(i) * n + j];
            emb[static_cast<size_t>(i) * k + j] = e;
            norm += e * e;
        }
        norm = std::sqrt(norm);
        if (norm > 1e-15)
            for (int j = 0; j < k; ++j) emb[static_cast<size_t>(i) * k + j] /= norm;
    }

    return kmeans(emb, n, k, k, seed).assignment;
}

LabelImage cluster_regions(const ColorImage& img, const LabelImage& preseg, int k, double sigma,
                           uint32_t seed) {
    const RegionFeatures f = region_features(img, preseg);
    const int n = f.region_count;
    const std::vector<int> clusters = spectral_cluster(affinity(f, sigma), std::min(k, n), seed);

    // contiguous output labels in order of first appearance over regions 1..n
    std::vector<int32_t> relabel(static_cast<size_t>(n), 0);
    {
        std::vector<int32_t> cluster_label(static_cast<size_t>(k) + 1, 0);
        int32_t next = 1;
        for (int r = 0; r < n; ++r) {
            const int c = clusters[static_cast<size_t>(r)];
            if (cluster_label[static_cast<size_t>(c)] == 0) cluster_label[static_cast<size_t>(c)] = next++;
            relabel[static_cast<size_t>(r)] = cluster_label[static_cast<size_t>(c)];
        }
    }

    LabelImage out(preseg.width, preseg.height);
    for (size_t i = 0; i < preseg.labels.size(); ++i)
        out.labels[i] = relabel[static_cast<size_t>(preseg.labels[i]) - 1];
    out.recount_labels();
    return out;
}

LabelImage amr_sc(const ColorImage& img, const GradientImage& g, const AmrParams& params, int k,
                  double sigma, uint32_t seed, Connectivity conn) {
    if (k < 1) throw ParamError("amr_sc: k must be >= 1");
    const LabelImage preseg = amr_wt(g, params, conn);
    return cluster_regions(img, preseg, k, sigma, seed);
}

LabelImage amr_sc(const ColorImage& img, const AmrParams& params, int k, double sigma,
                  uint32_t seed, Connectivity conn) {
    return amr_sc(img, sobel_gradient(to_gray(img)), params, k, sigma, seed, conn);
}

} // namespace morphoseg
