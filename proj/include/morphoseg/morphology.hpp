#pragma once

#include "morphoseg/image.hpp"

namespace morphoseg {

/// Flat disk-shaped neighborhood: (dx,dy) is a member iff dx^2+dy^2 <= r^2.
/// Radius 0 is exactly {(0,0)}; radius 1 is the 5-pixel plus shape.
struct StructuringElement {
    int radius = 0;
    std::vector<std::array<int, 2>> offsets;

    static StructuringElement disk(int radius);
};

/// out(p) = max over the SE neighborhood of p; out-of-bounds neighbors are
/// ignored (border handled by neighborhood truncation).
GrayImage dilate(const GrayImage& img, const StructuringElement& se);

/// Dual of dilate: min over the truncated neighborhood.
GrayImage erode(const GrayImage& img, const StructuringElement& se);

/// Stable limit of geodesic dilation of marker under mask: iterate
/// min(delta(f), g) to fixpoint, elementary dilation on the radius-1 disk.
/// Requires marker <= mask pointwise. Implemented with the raster-scan +
/// FIFO-queue hybrid; observationally identical to the naive iteration.
GrayImage reconstruct_dilation(const GrayImage& marker, const GrayImage& mask);

/// Stable limit of geodesic erosion: iterate max(eps(f), g) to fixpoint.
/// Requires marker >= mask pointwise.
GrayImage reconstruct_erosion(const GrayImage& marker, const GrayImage& mask);

/// Reconstruction-based open-close filter at one scale. First stage is the
/// erosion-reconstruction of g from dilate(g,se); the second stage applies
/// the dilation-reconstruction to that intermediate with an eroded marker,
/// so every stage's marker/mask precondition holds by construction.
/// Radius 0 is the identity; for radius >= image diameter the result is the
/// constant max(g).
GrayImage opening_by_reconstruction(const GrayImage& g, const StructuringElement& se);

/// Mirror image of opening_by_reconstruction: dilation-reconstruction of g
/// from erode(g,se), then erosion-reconstruction of the intermediate from a
/// dilated marker. Fills dark details smaller than the structuring element;
/// for radius >= image diameter the result is the constant min(g).
GrayImage closing_by_reconstruction(const GrayImage& g, const StructuringElement& se);

} // namespace morphoseg
