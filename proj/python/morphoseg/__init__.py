"""Adaptive morphological reconstruction segmentation toolkit.

Images are numpy arrays: grayscale/gradient images are 2-D float arrays in
[0, 1], color images are (h, w, 3) float arrays, label images are 2-D int32
arrays with region ids 1..n (0 = unassigned).
"""

from ._morphoseg import (
    AmrResult,
    amr,
    amr_sc_rgb,
    amr_wt,
    amr_wt_rgb,
    build_hierarchy,
    checkerboard,
    closing_by_reconstruction,
    convergence_gap,
    covering,
    dilate,
    erode,
    four_quadrant,
    is_refinement,
    load_gradient,
    load_labels,
    opening_by_reconstruction,
    planted_color,
    planted_color_truth,
    pri,
    rand_index,
    read_pfm,
    reconstruct_dilation,
    reconstruct_erosion,
    regional_minima,
    rgb_to_lab,
    save_labels,
    sobel_gradient,
    to_gray,
    two_basin,
    vi,
    watershed_from_markers,
    write_demo_corpus,
    write_pfm,
    __version__,
)

__all__ = [
    "AmrResult",
    "amr",
    "amr_sc_rgb",
    "amr_wt",
    "amr_wt_rgb",
    "build_hierarchy",
    "checkerboard",
    "closing_by_reconstruction",
    "convergence_gap",
    "covering",
    "dilate",
    "erode",
    "four_quadrant",
    "is_refinement",
    "load_gradient",
    "load_labels",
    "opening_by_reconstruction",
    "planted_color",
    "planted_color_truth",
    "pri",
    "rand_index",
    "read_pfm",
    "reconstruct_dilation",
    "reconstruct_erosion",
    "regional_minima",
    "rgb_to_lab",
    "save_labels",
    "sobel_gradient",
    "to_gray",
    "two_basin",
    "vi",
    "watershed_from_markers",
    "write_demo_corpus",
    "write_pfm",
    "__version__",
]
