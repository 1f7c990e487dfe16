// numpy-facing bindings for the main operations: gradients, adaptive
// reconstruction, watershed pipelines, spectral clustering, metrics, and the
// synthetic corpus generators.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "morphoseg/amr.hpp"
#include "morphoseg/color.hpp"
#include "morphoseg/gradient.hpp"
#include "morphoseg/hierarchy.hpp"
#include "morphoseg/io.hpp"
#include "morphoseg/metrics.hpp"
#include "morphoseg/morphology.hpp"
#include "morphoseg/spectral.hpp"
#include "morphoseg/synthetic.hpp"
#include "morphoseg/watershed.hpp"

namespace py = pybind11;
using namespace morphoseg;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;
using LabelArray = py::array_t<int32_t, py::array::c_style | py::array::forcecast>;

GrayImage to_gray_image(const FloatArray& arr) {
    if (arr.ndim() != 2) throw ShapeError("expected a 2-D float array");
    GrayImage img(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
    std::copy(arr.data(), arr.data() + arr.size(), img.data.begin());
    return img;
}

ColorImage to_color_image(const FloatArray& arr) {
    if (arr.ndim() != 3 || arr.shape(2) != 3)
        throw ShapeError("expected an (h, w, 3) float array");
    ColorImage img(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
    const float* p = arr.data();
    for (auto& px : img.data) {
        px = {p[0], p[1], p[2]};
        p += 3;
    }
    return img;
}

LabelImage to_label_image(const LabelArray& arr) {
    if (arr.ndim() != 2) throw ShapeError("expected a 2-D int32 array");
    LabelImage img(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
    std::copy(arr.data(), arr.data() + arr.size(), img.labels.begin());
    img.recount_labels();
    return img;
}

py::array from_gray(const GrayImage& img) {
    py::array_t<float> arr({img.height, img.width});
    std::copy(img.data.begin(), img.data.end(), arr.mutable_data());
    return arr;
}

py::array from_labels(const LabelImage& img) {
    py::array_t<int32_t> arr({img.height, img.width});
    std::copy(img.labels.begin(), img.labels.end(), arr.mutable_data());
    return arr;
}

py::array from_lab(const LabImage& img) {
    py::array_t<float> arr({img.height, img.width, 3});
    float* p = arr.mutable_data();
    for (const auto& px : img.data) {
        p[0] = px[0];
        p[1] = px[1];
        p[2] = px[2];
        p += 3;
    }
    return arr;
}

py::array from_color(const ColorImage& img) {
    py::array_t<float> arr({img.height, img.width, 3});
    float* p = arr.mutable_data();
    for (const auto& px : img.data) {
        p[0] = px[0];
        p[1] = px[1];
        p[2] = px[2];
        p += 3;
    }
    return arr;
}

std::vector<LabelImage> to_label_vector(const std::vector<LabelArray>& arrays) {
    std::vector<LabelImage> out;
    out.reserve(arrays.size());
    for (const auto& a : arrays) out.push_back(to_label_image(a));
    return out;
}

Connectivity conn_of(int connectivity) {
    if (connectivity == 4) return Connectivity::four;
    if (connectivity == 8) return Connectivity::eight;
    throw ParamError("connectivity must be 4 or 8");
}

} // namespace

PYBIND11_MODULE(_morphoseg, m) {
    m.doc() = "adaptive morphological reconstruction segmentation toolkit";

    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);

    py::class_<AmrResult>(m, "AmrResult")
        .def_property_readonly("reconstructed",
                               [](const AmrResult& r) { return from_gray(r.reconstructed); })
        .def_readonly("iterations_used", &AmrResult::iterations_used)
        .def_readonly("gap_history", &AmrResult::gap_history);

    // gradients and reconstruction
    m.def(
        "sobel_gradient", [](const FloatArray& img) { return from_gray(sobel_gradient(to_gray_image(img))); },
        py::arg("image"));
    m.def(
        "amr",
        [](const FloatArray& g, int s, int m_, double eta) {
            return amr(to_gray_image(g), AmrParams{s, m_, eta});
        },
        py::arg("gradient"), py::arg("s") = 2, py::arg("m") = 50, py::arg("eta") = 1e-4);
    m.def(
        "convergence_gap",
        [](const FloatArray& prev, const FloatArray& cur) {
            return convergence_gap(to_gray_image(prev), to_gray_image(cur));
        },
        py::arg("prev"), py::arg("cur"));

    m.def(
        "dilate",
        [](const FloatArray& img, int radius) {
            return from_gray(dilate(to_gray_image(img), StructuringElement::disk(radius)));
        },
        py::arg("image"), py::arg("radius"));
    m.def(
        "erode",
        [](const FloatArray& img, int radius) {
            return from_gray(erode(to_gray_image(img), StructuringElement::disk(radius)));
        },
        py::arg("image"), py::arg("radius"));
    m.def(
        "reconstruct_dilation",
        [](const FloatArray& marker, const FloatArray& mask) {
            return from_gray(reconstruct_dilation(to_gray_image(marker), to_gray_image(mask)));
        },
        py::arg("marker"), py::arg("mask"));
    m.def(
        "reconstruct_erosion",
        [](const FloatArray& marker, const FloatArray& mask) {
            return from_gray(reconstruct_erosion(to_gray_image(marker), to_gray_image(mask)));
        },
        py::arg("marker"), py::arg("mask"));
    m.def(
        "opening_by_reconstruction",
        [](const FloatArray& img, int radius) {
            return from_gray(
                opening_by_reconstruction(to_gray_image(img), StructuringElement::disk(radius)));
        },
        py::arg("image"), py::arg("radius"));
    m.def(
        "closing_by_reconstruction",
        [](const FloatArray& img, int radius) {
            return from_gray(
                closing_by_reconstruction(to_gray_image(img), StructuringElement::disk(radius)));
        },
        py::arg("image"), py::arg("radius"));

    // seeds and watershed
    m.def(
        "regional_minima",
        [](const FloatArray& g, int connectivity) {
            return from_labels(regional_minima(to_gray_image(g), conn_of(connectivity)));
        },
        py::arg("gradient"), py::arg("connectivity") = 8);
    m.def(
        "watershed_from_markers",
        [](const FloatArray& g, const LabelArray& seeds, int connectivity) {
            return from_labels(
                watershed_from_markers(to_gray_image(g), to_label_image(seeds), conn_of(connectivity)));
        },
        py::arg("gradient"), py::arg("seeds"), py::arg("connectivity") = 8);
    m.def(
        "amr_wt",
        [](const FloatArray& g, int s, int m_, double eta, int connectivity) {
            return from_labels(
                amr_wt(to_gray_image(g), AmrParams{s, m_, eta}, conn_of(connectivity)));
        },
        py::arg("gradient"), py::arg("s") = 2, py::arg("m") = 50, py::arg("eta") = 1e-4,
        py::arg("connectivity") = 8);
    m.def(
        "amr_wt_rgb",
        [](const FloatArray& img, int s, int m_, double eta, int connectivity) {
            return from_labels(
                amr_wt(to_color_image(img), AmrParams{s, m_, eta}, conn_of(connectivity)));
        },
        py::arg("image"), py::arg("s") = 2, py::arg("m") = 50, py::arg("eta") = 1e-4,
        py::arg("connectivity") = 8);

    // hierarchy
    m.def(
        "build_hierarchy",
        [](const FloatArray& g, int s, int max_cap, int connectivity) {
            const Hierarchy h = build_hierarchy(to_gray_image(g), s, max_cap, conn_of(connectivity));
            py::list levels;
            for (const auto& level : h.levels) levels.append(from_labels(level));
            return py::make_tuple(levels, h.scale_caps);
        },
        py::arg("gradient"), py::arg("s") = 1, py::arg("max_cap") = 10,
        py::arg("connectivity") = 8);
    m.def(
        "is_refinement",
        [](const LabelArray& fine, const LabelArray& coarse) {
            const RefinementCheck c = is_refinement(to_label_image(fine), to_label_image(coarse));
            return py::make_tuple(c.ok, c.violations);
        },
        py::arg("fine"), py::arg("coarse"));

    // spectral pipeline
    m.def(
        "amr_sc_rgb",
        [](const FloatArray& img, int k, int s, int m_, double eta, double sigma, uint32_t seed,
           int connectivity) {
            return from_labels(amr_sc(to_color_image(img), AmrParams{s, m_, eta}, k, sigma, seed,
                                      conn_of(connectivity)));
        },
        py::arg("image"), py::arg("k"), py::arg("s") = 2, py::arg("m") = 50,
        py::arg("eta") = 1e-4, py::arg("sigma") = 1.0, py::arg("seed") = 7,
        py::arg("connectivity") = 8);

    // color
    m.def(
        "rgb_to_lab", [](const FloatArray& img) { return from_lab(rgb_to_lab(to_color_image(img))); },
        py::arg("image"));
    m.def(
        "to_gray", [](const FloatArray& img) { return from_gray(to_gray(to_color_image(img))); },
        py::arg("image"));

    // metrics
    m.def(
        "rand_index",
        [](const LabelArray& a, const LabelArray& b) {
            return rand_index(to_label_image(a), to_label_image(b));
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "pri",
        [](const LabelArray& seg, const std::vector<LabelArray>& gts) {
            return pri(to_label_image(seg), to_label_vector(gts));
        },
        py::arg("seg"), py::arg("ground_truths"));
    m.def(
        "covering",
        [](const LabelArray& seg, const std::vector<LabelArray>& gts) {
            const auto v = to_label_vector(gts);
            return covering(to_label_image(seg), std::span<const LabelImage>(v));
        },
        py::arg("seg"), py::arg("ground_truths"));
    m.def(
        "vi",
        [](const LabelArray& seg, const std::vector<LabelArray>& gts) {
            const auto v = to_label_vector(gts);
            return vi(to_label_image(seg), std::span<const LabelImage>(v));
        },
        py::arg("seg"), py::arg("ground_truths"));

    // file formats
    m.def("save_labels",
          [](const LabelArray& labels, const std::filesystem::path& path) {
              save_labels(to_label_image(labels), path);
          });
    m.def("load_labels",
          [](const std::filesystem::path& path) { return from_labels(load_labels(path)); });
    m.def("write_pfm", [](const FloatArray& img, const std::filesystem::path& path) {
        write_pfm(to_gray_image(img), path);
    });
    m.def("read_pfm", [](const std::filesystem::path& path) { return from_gray(read_pfm(path)); });
    m.def("load_gradient",
          [](const std::filesystem::path& path) { return from_gray(load_gradient(path)); });

    // synthetic corpus
    m.def(
        "two_basin",
        [](int w, int h, float noise, uint32_t seed) {
            return from_gray(make_two_basin(w, h, noise, seed));
        },
        py::arg("width") = 64, py::arg("height") = 64, py::arg("noise") = 0.0f,
        py::arg("seed") = 7);
    m.def(
        "four_quadrant", [](int w, int h) { return from_gray(make_four_quadrant(w, h)); },
        py::arg("width") = 64, py::arg("height") = 64);
    m.def(
        "checkerboard",
        [](int w, int h, int tile) { return from_gray(make_checkerboard(w, h, tile)); },
        py::arg("width") = 64, py::arg("height") = 64, py::arg("tile") = 16);
    m.def(
        "planted_color",
        [](int w, int h, int stripes) { return from_color(make_planted_color(w, h, stripes)); },
        py::arg("width") = 96, py::arg("height") = 48, py::arg("stripes") = 6);
    m.def(
        "planted_color_truth",
        [](int w, int h, int stripes) {
            return from_labels(planted_color_ground_truth(w, h, stripes));
        },
        py::arg("width") = 96, py::arg("height") = 48, py::arg("stripes") = 6);
    m.def(
        "write_demo_corpus",
        [](const std::filesystem::path& dir, uint32_t seed) { return write_demo_corpus(dir, seed); },
        py::arg("dir"), py::arg("seed") = 7);

#ifdef MORPHOSEG_VERSION
    m.attr("__version__") = MORPHOSEG_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
