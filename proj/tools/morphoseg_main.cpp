// Batch command-line front end: reconstruct / segment / hierarchy / spectral
// / eval / demo. Exit codes: 0 success, 2 input or configuration error,
// 3 internal invariant violation.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "morphoseg/amr.hpp"
#include "morphoseg/color.hpp"
#include "morphoseg/gradient.hpp"
#include "morphoseg/hierarchy.hpp"
#include "morphoseg/io.hpp"
#include "morphoseg/metrics.hpp"
#include "morphoseg/spectral.hpp"
#include "morphoseg/synthetic.hpp"
#include "morphoseg/watershed.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace morphoseg;

namespace {

struct RunConfig {
    std::vector<std::string> inputs;
    std::string out_dir = ".";
    int s = 2;
    int m = 50;
    double eta = 1e-4;
    int connectivity = 8;
    std::string gradient = "sobel"; // "sobel" or a PFM/PGM path
    int k = 0;
    double sigma = 1.0;
    uint32_t seed = 7;
    bool overlay = false;
    std::string gt_dir;

    AmrParams amr_params() const { return AmrParams{s, m, eta}; }
    Connectivity conn() const {
        return connectivity == 4 ? Connectivity::four : Connectivity::eight;
    }
    json flags_json() const {
        return json{{"s", s},
                    {"m", m},
                    {"eta", eta},
                    {"connectivity", connectivity},
                    {"gradient", gradient},
                    {"k", k},
                    {"sigma", sigma},
                    {"seed", seed},
                    {"overlay", overlay}};
    }
};

int thread_budget(size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("MORPHOSEG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    if (n < 1) n = 1;
    return static_cast<int>(std::min<size_t>(n, jobs));
}

// bounded worker pool; per-input log lines are buffered and flushed in input
// order, the first failure (by input order) is rethrown
void for_each_input(const std::vector<std::string>& inputs,
                    const std::function<std::string(const std::string&)>& work) {
    const size_t n = inputs.size();
    std::vector<std::string> messages(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                messages[i] = work(inputs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const int threads = thread_budget(n);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (size_t i = 0; i < n; ++i)
        if (!messages[i].empty()) std::cout << messages[i] << std::endl;
    for (size_t i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
}

void require_inputs_exist(const RunConfig& cfg) {
    for (const auto& p : cfg.inputs)
        if (!fs::exists(p)) throw IoError(p + ": no such file");
    if (cfg.gradient != "sobel" && !fs::exists(cfg.gradient))
        throw IoError(cfg.gradient + ": no such gradient file");
    if (!cfg.gt_dir.empty() && !fs::is_directory(cfg.gt_dir))
        throw IoError(cfg.gt_dir + ": not a directory");
    fs::create_directories(cfg.out_dir);
}

bool is_pfm(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    return magic[0] == 'P' && magic[1] == 'f';
}

struct PipelineInput {
    GradientImage gradient;
    ColorImage color;  // for overlays / spectral features
    bool has_color = false;
};

PipelineInput load_pipeline_input(const fs::path& path, const RunConfig& cfg) {
    PipelineInput in;
    if (is_pfm(path)) {
        in.gradient = load_gradient(path);
        if (cfg.gradient != "sobel") {
            in.gradient = load_gradient(cfg.gradient);
        }
        return in;
    }

    const LoadedImage img = load_image(path);
    GrayImage gray;
    if (std::holds_alternative<ColorImage>(img)) {
        in.color = std::get<ColorImage>(img);
        in.has_color = true;
        gray = to_gray(in.color);
    } else {
        gray = std::get<GrayImage>(img);
    }

    if (cfg.gradient == "sobel") {
        in.gradient = sobel_gradient(gray);
    } else {
        in.gradient = load_gradient(cfg.gradient);
        if (in.gradient.width != gray.width || in.gradient.height != gray.height)
            throw ShapeError(cfg.gradient + ": gradient shape does not match " + path.string());
    }
    return in;
}

ColorImage overlay_boundaries(const PipelineInput& in, const LabelImage& labels) {
    ColorImage base(labels.width, labels.height);
    if (in.has_color) {
        base = in.color;
    } else {
        for (int y = 0; y < labels.height; ++y)
            for (int x = 0; x < labels.width; ++x) {
                const float v = in.gradient.at(x, y);
                base.at(x, y) = {v, v, v};
            }
    }
    for (int y = 0; y < labels.height; ++y)
        for (int x = 0; x < labels.width; ++x) {
            const int32_t l = labels.at(x, y);
            const bool edge = (x + 1 < labels.width && labels.at(x + 1, y) != l) ||
                              (y + 1 < labels.height && labels.at(x, y + 1) != l);
            if (edge) base.at(x, y) = {1.0f, 0.0f, 0.0f};
        }
    return base;
}

void write_sidecar(const fs::path& path, const RunConfig& cfg, const std::string& command,
                   json payload) {
    payload["command"] = command;
    payload["flags"] = cfg.flags_json();
    std::ofstream out(path);
    out << payload.dump(2) << "\n";
}

std::string stem_of(const fs::path& p) { return p.stem().string(); }

// ------------------------------------------------------------- commands --

int cmd_reconstruct(const RunConfig& cfg) {
    require_inputs_exist(cfg);
    for_each_input(cfg.inputs, [&](const std::string& input) {
        const PipelineInput in = load_pipeline_input(input, cfg);
        const AmrResult r = amr(in.gradient, cfg.amr_params());

        const fs::path out = fs::path(cfg.out_dir) / (stem_of(input) + "_psi.pfm");
        write_pfm(r.reconstructed, out);
        write_sidecar(fs::path(cfg.out_dir) / (stem_of(input) + "_reconstruct.json"), cfg,
                      "reconstruct",
                      json{{"input", input},
                           {"output", out.string()},
                           {"iterations_used", r.iterations_used},
                           {"gap_history", r.gap_history}});
        return input + " -> " + out.string() + " (" + std::to_string(r.iterations_used) +
               " scales)";
    });
    return 0;
}

int cmd_segment(const RunConfig& cfg) {
    require_inputs_exist(cfg);
    for_each_input(cfg.inputs, [&](const std::string& input) {
        const PipelineInput in = load_pipeline_input(input, cfg);
        const LabelImage labels = amr_wt(in.gradient, cfg.amr_params(), cfg.conn());

        const fs::path out = fs::path(cfg.out_dir) / (stem_of(input) + "_labels.png");
        save_labels(labels, out);
        if (cfg.overlay)
            write_png_rgb8(overlay_boundaries(in, labels),
                           fs::path(cfg.out_dir) / (stem_of(input) + "_overlay.png"));
        write_sidecar(fs::path(cfg.out_dir) / (stem_of(input) + "_segment.json"), cfg, "segment",
                      json{{"input", input},
                           {"output", out.string()},
                           {"region_count", labels.num_labels}});
        return input + " -> " + out.string() + " (" + std::to_string(labels.num_labels) +
               " regions)";
    });
    return 0;
}

int cmd_hierarchy(const RunConfig& cfg) {
    require_inputs_exist(cfg);
    for_each_input(cfg.inputs, [&](const std::string& input) {
        const PipelineInput in = load_pipeline_input(input, cfg);
        const Hierarchy hier = build_hierarchy(in.gradient, cfg.s, cfg.m, cfg.conn());

        json manifest = json::array();
        for (size_t z = 0; z < hier.levels.size(); ++z) {
            char name[64];
            std::snprintf(name, sizeof(name), "%s_level%02zu.png", stem_of(input).c_str(), z);
            const fs::path out = fs::path(cfg.out_dir) / name;
            save_labels(hier.levels[z], out);

            const bool nested = z + 1 < hier.levels.size()
                                    ? is_refinement(hier.levels[z], hier.levels[z + 1]).ok
                                    : true;
            manifest.push_back(json{{"level", z},
                                    {"scale_cap", hier.scale_caps[z]},
                                    {"region_count", hier.levels[z].num_labels},
                                    {"refinement_ok", nested},
                                    {"file", out.string()}});
        }
        write_sidecar(fs::path(cfg.out_dir) / (stem_of(input) + "_hierarchy.json"), cfg,
                      "hierarchy", json{{"input", input}, {"levels", manifest}});
        return input + " -> " + std::to_string(hier.levels.size()) + " levels";
    });
    return 0;
}

int cmd_spectral(const RunConfig& cfg) {
    if (cfg.k < 1) throw ParamError("spectral: --k is required and must be >= 1");
    require_inputs_exist(cfg);
    for_each_input(cfg.inputs, [&](const std::string& input) {
        const PipelineInput in = load_pipeline_input(input, cfg);
        ColorImage color = in.color;
        if (!in.has_color) { // promote grayscale input to a flat color image
            color = ColorImage(in.gradient.width, in.gradient.height);
            const LoadedImage img = is_pfm(input) ? LoadedImage(in.gradient) : load_image(input);
            const GrayImage& gray =
                std::holds_alternative<GrayImage>(img) ? std::get<GrayImage>(img) : in.gradient;
            for (int y = 0; y < color.height; ++y)
                for (int x = 0; x < color.width; ++x) {
                    const float v = gray.at(x, y);
                    color.at(x, y) = {v, v, v};
                }
        }

        const LabelImage labels =
            amr_sc(color, in.gradient, cfg.amr_params(), cfg.k, cfg.sigma, cfg.seed, cfg.conn());
        const fs::path out = fs::path(cfg.out_dir) / (stem_of(input) + "_clusters.png");
        save_labels(labels, out);
        write_sidecar(fs::path(cfg.out_dir) / (stem_of(input) + "_spectral.json"), cfg, "spectral",
                      json{{"input", input},
                           {"output", out.string()},
                           {"cluster_count", labels.num_labels}});
        return input + " -> " + out.string() + " (" + std::to_string(labels.num_labels) +
               " clusters)";
    });
    return 0;
}

std::vector<LabelImage> find_ground_truths(const fs::path& gt_dir, std::string stem) {
    // segmentation outputs carry a pipeline suffix; strip it for the lookup
    for (const char* suffix : {"_labels", "_clusters"}) {
        if (stem.size() > std::strlen(suffix) &&
            stem.ends_with(suffix))
            stem = stem.substr(0, stem.size() - std::strlen(suffix));
    }

    std::vector<fs::path> files;
    if (fs::is_directory(gt_dir / stem)) {
        for (const auto& entry : fs::directory_iterator(gt_dir / stem))
            if (entry.path().extension() == ".png") files.push_back(entry.path());
    } else {
        for (const auto& entry : fs::directory_iterator(gt_dir)) {
            const std::string name = entry.path().filename().string();
            if (name.starts_with(stem + "_gt") && entry.path().extension() == ".png")
                files.push_back(entry.path());
        }
        if (files.empty() && fs::exists(gt_dir / (stem + ".png")))
            files.push_back(gt_dir / (stem + ".png"));
    }
    std::sort(files.begin(), files.end());

    std::vector<LabelImage> gts;
    for (const auto& f : files) gts.push_back(load_labels(f));
    if (gts.empty())
        throw IoError(gt_dir.string() + ": no ground truths found for '" + stem + "'");
    return gts;
}

int cmd_eval(const RunConfig& cfg) {
    require_inputs_exist(cfg);
    if (cfg.gt_dir.empty()) throw ParamError("eval: --gt <dir> is required");

    struct Row {
        std::string name;
        MetricReport report;
        size_t gt_count;
    };
    std::vector<Row> rows(cfg.inputs.size());
    std::mutex mu;

    std::atomic<size_t> index{0};
    for_each_input(cfg.inputs, [&](const std::string& input) {
        const LabelImage seg = load_labels(input);
        if (!is_complete_partition(seg))
            throw ParamError(input + ": segmentation is not a complete partition");
        const auto gts = find_ground_truths(cfg.gt_dir, stem_of(input));
        const MetricReport r = evaluate(seg, gts);
        {
            std::lock_guard<std::mutex> lock(mu);
            rows[index.fetch_add(1)] = Row{stem_of(input), r, gts.size()};
        }
        return std::string();
    });
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.name < b.name; });

    const fs::path csv_path = fs::path(cfg.out_dir) / "eval.csv";
    std::ofstream csv(csv_path);
    csv << "image,pri,cv,vi,num_gts\n";
    MetricReport mean{};
    for (const Row& row : rows) {
        csv << row.name << "," << row.report.pri << "," << row.report.cv << "," << row.report.vi
            << "," << row.gt_count << "\n";
        mean.pri += row.report.pri;
        mean.cv += row.report.cv;
        mean.vi += row.report.vi;
    }
    const double n = static_cast<double>(rows.size());
    mean.pri /= n;
    mean.cv /= n;
    mean.vi /= n;
    csv << "mean," << mean.pri << "," << mean.cv << "," << mean.vi << "," << rows.size() << "\n";
    csv.close();

    write_sidecar(fs::path(cfg.out_dir) / "eval.json", cfg, "eval",
                  json{{"csv", csv_path.string()},
                       {"vi_base", 2},
                       {"images", rows.size()},
                       {"mean", {{"pri", mean.pri}, {"cv", mean.cv}, {"vi", mean.vi}}}});
    std::cout << "wrote " << csv_path.string() << " (" << rows.size() << " images, mean pri "
              << mean.pri << ")" << std::endl;
    return 0;
}

int cmd_demo(const RunConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    const int count = write_demo_corpus(cfg.out_dir, cfg.seed);
    write_sidecar(fs::path(cfg.out_dir) / "demo.json", cfg, "demo",
                  json{{"images", count}, {"dir", cfg.out_dir}});
    std::cout << "wrote " << count << " demo images (with ground truths) to " << cfg.out_dir
              << std::endl;
    return 0;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg, bool with_amr = true) {
    cmd->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    if (with_amr) {
        cmd->add_option("--s", cfg.s, "minimum structuring-element scale")->capture_default_str();
        cmd->add_option("--m", cfg.m, "maximum scale cap")->capture_default_str();
        cmd->add_option("--eta", cfg.eta, "convergence threshold (0 disables early stop)")
            ->capture_default_str();
        cmd->add_option("--connectivity", cfg.connectivity, "pixel connectivity")
            ->check(CLI::IsMember({4, 8}))
            ->capture_default_str();
        cmd->add_option("--gradient", cfg.gradient,
                        "gradient source: 'sobel' or a PFM/PGM file path")
            ->capture_default_str();
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive morphological reconstruction segmentation toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;

    CLI::App* reconstruct = app.add_subcommand("reconstruct", "write the reconstructed gradient");
    reconstruct->add_option("inputs", cfg.inputs, "input images or PFM gradients")->required();
    add_common_flags(reconstruct, cfg);

    CLI::App* segment = app.add_subcommand("segment", "watershed segmentation");
    segment->add_option("inputs", cfg.inputs, "input images or PFM gradients")->required();
    add_common_flags(segment, cfg);
    segment->add_flag("--overlay", cfg.overlay, "write a boundary overlay image");

    CLI::App* hierarchy = app.add_subcommand("hierarchy", "nested partitions per scale cap");
    hierarchy->add_option("inputs", cfg.inputs, "input images or PFM gradients")->required();
    add_common_flags(hierarchy, cfg);

    CLI::App* spectral = app.add_subcommand("spectral", "spectral clustering of the watershed");
    spectral->add_option("inputs", cfg.inputs, "input images")->required();
    add_common_flags(spectral, cfg);
    spectral->add_option("--k", cfg.k, "number of clusters")->required();
    spectral->add_option("--sigma", cfg.sigma, "affinity bandwidth")->capture_default_str();
    spectral->add_option("--seed", cfg.seed, "clustering seed")->capture_default_str();

    CLI::App* eval = app.add_subcommand("eval", "score segmentations against ground truths");
    eval->add_option("inputs", cfg.inputs, "segmentation label PNGs")->required();
    eval->add_option("--gt", cfg.gt_dir, "ground-truth directory")->required();
    eval->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();

    CLI::App* demo = app.add_subcommand("demo", "generate the synthetic corpus");
    demo->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    demo->add_option("--seed", cfg.seed, "corpus seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (reconstruct->parsed()) return cmd_reconstruct(cfg);
        if (segment->parsed()) return cmd_segment(cfg);
        if (hierarchy->parsed()) return cmd_hierarchy(cfg);
        if (spectral->parsed()) return cmd_spectral(cfg);
        if (eval->parsed()) return cmd_eval(cfg);
        if (demo->parsed()) return cmd_demo(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << std::endl;
        return 3;
    }
    return 0;
}
