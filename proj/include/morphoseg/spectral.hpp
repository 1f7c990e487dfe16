#pragma once

#include <cstdint>

#include "morphoseg/amr.hpp"
#include "morphoseg/image.hpp"

namespace morphoseg {

/// Per-region mean CIELAB color and pixel counts of a complete partition.
struct RegionFeatures {
    int region_count = 0;
    std::vector<std::array<double, 3>> mean_lab; // indexed by label-1
    std::vector<int64_t> pixel_count;
};

/// Dense symmetric Gaussian affinity over region features; unit diagonal,
/// entries in (0,1].
struct AffinityMatrix {
    int n = 0;
    std::vector<double> w; // row-major n*n

    double at(int i, int j) const { return w[static_cast<size_t>(i) * n + j]; }
    double& at(int i, int j) { return w[static_cast<size_t>(i) * n + j]; }
};

/// Symmetric eigendecomposition (cyclic Jacobi rotations); adequate for the
/// small dense matrices a pre-segmentation produces.
struct JacobiEigen {
    std::vector<double> values;  // ascending
    std::vector<double> vectors; // row-major n*n, column j = eigenvector j
};
JacobiEigen jacobi_eigen(std::vector<double> a, int n);

struct KMeansResult {
    std::vector<int> assignment;           // point -> cluster in [0,k)
    std::vector<double> objective_history; // sum of squared distances per iteration
};

/// Lloyd iterations with k-means++ seeding from `seed`; at most 100
/// iterations, stops when assignments stabilize. Deterministic for a fixed
/// seed. `points` is row-major n x dim.
KMeansResult kmeans(const std::vector<double>& points, int n, int dim, int k, uint32_t seed);

RegionFeatures region_features(const ColorImage& img, const LabelImage& seg);

/// w(i,j) = exp(-||lab_i - lab_j||^2 / (2 sigma^2)) over all pairs.
AffinityMatrix affinity(const RegionFeatures& f, double sigma);

/// Symmetric normalized-Laplacian embedding (k smallest eigenvalues), row
/// normalization, then k-means. Returns region -> cluster in [0,k).
std::vector<int> spectral_cluster(const AffinityMatrix& w, int k, uint32_t seed);

/// amr_wt pre-segmentation -> region features -> affinity -> spectral
/// clustering -> pixel relabeling. Empty clusters are dropped and the
/// output labels are contiguous 1..k'.
LabelImage amr_sc(const ColorImage& img, const AmrParams& params, int k, double sigma,
                  uint32_t seed, Connectivity conn = Connectivity::eight);

/// Same but with an externally supplied gradient for the pre-segmentation.
LabelImage amr_sc(const ColorImage& img, const GradientImage& g, const AmrParams& params,
                  int k, double sigma, uint32_t seed,
                  Connectivity conn = Connectivity::eight);

/// Group the regions of an existing pre-segmentation (used by amr_sc).
LabelImage cluster_regions(const ColorImage& img, const LabelImage& preseg, int k,
                           double sigma, uint32_t seed);

} // namespace morphoseg
