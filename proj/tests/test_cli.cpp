// End-to-end checks of the installed command-line surface: runs the real
// binary, inspects exit codes, emitted files, and sidecar JSON.
#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "morphoseg/amr.hpp"
#include "morphoseg/gradient.hpp"
#include "morphoseg/io.hpp"
#include "morphoseg/synthetic.hpp"
#include "morphoseg/watershed.hpp"

using namespace morphoseg;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int exit_code;
    std::string output; // stdout + stderr
};

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "morphoseg_cli_tests";
    fs::create_directories(dir);
    return dir;
}

CliResult run_cli(const std::string& args) {
    const fs::path log = work_dir() / "cli_log.txt";
    const std::string cmd =
        std::string(MORPHOSEG_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return {WEXITSTATUS(status), buffer.str()};
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("cli: reconstruct on a constant image stops right away") {
    const fs::path dir = work_dir() / "reconstruct_const";
    fs::create_directories(dir);
    write_png_gray8(GrayImage(16, 16, 0.5f), dir / "flat.png");

    const CliResult r =
        run_cli("reconstruct " + (dir / "flat.png").string() + " --s 2 --out " + dir.string());
    REQUIRE(r.exit_code == 0);

    const GrayImage psi = read_pfm(dir / "flat_psi.pfm");
    for (float v : psi.data) CHECK(v == 0.0f); // flat image has an all-zero gradient

    const json sidecar = json::parse(read_file(dir / "flat_reconstruct.json"));
    CHECK(sidecar["iterations_used"] == 3); // s + 1
    CHECK(sidecar["gap_history"].back() == 0.0);
    CHECK(sidecar["flags"]["s"] == 2);
}

TEST_CASE("cli: two-basin gradient reconstruct converges under eta") {
    const fs::path dir = work_dir() / "reconstruct_basin";
    fs::create_directories(dir);
    write_pfm(make_two_basin(48, 48, 0.04f, 7), dir / "basin.pfm");

    const CliResult r =
        run_cli("reconstruct " + (dir / "basin.pfm").string() + " --s 1 --out " + dir.string());
    REQUIRE(r.exit_code == 0);
    const json sidecar = json::parse(read_file(dir / "basin_reconstruct.json"));
    CHECK(sidecar["gap_history"].back().get<double>() <= 1e-4);
}

TEST_CASE("cli: missing input exits 2 and names the path") {
    const CliResult r = run_cli("segment /definitely/not/here.png --out /tmp");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("/definitely/not/here.png") != std::string::npos);
}

TEST_CASE("cli: segment writes labels, overlay, and sidecar") {
    const fs::path dir = work_dir() / "segment";
    fs::create_directories(dir);
    write_png_gray8(make_four_quadrant(64, 64), dir / "quad.png");

    const CliResult r =
        run_cli("segment " + (dir / "quad.png").string() + " --overlay --out " + dir.string());
    REQUIRE(r.exit_code == 0);

    const LabelImage labels = load_labels(dir / "quad_labels.png");
    CHECK(labels.num_labels == 4);
    CHECK(is_complete_partition(labels));
    CHECK(fs::exists(dir / "quad_overlay.png"));

    // boundaries hug the two dividing lines
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) {
            const int32_t l = labels.at(x, y);
            const bool edge = (x + 1 < 64 && labels.at(x + 1, y) != l) ||
                              (y + 1 < 64 && labels.at(x, y + 1) != l);
            if (edge) CHECK((std::abs(x - 31) <= 1 || std::abs(y - 31) <= 1));
        }

    const json sidecar = json::parse(read_file(dir / "quad_segment.json"));
    CHECK(sidecar["region_count"] == 4);
}

TEST_CASE("cli: --gradient file reproduces the in-library pipeline") {
    const fs::path dir = work_dir() / "gradient_file";
    fs::create_directories(dir);

    const GrayImage img = make_four_quadrant(48, 48);
    write_png_gray8(img, dir / "quad.png");
    const GradientImage g = sobel_gradient(img);
    write_pfm(g, dir / "quad_grad.pfm");

    const CliResult r = run_cli("segment " + (dir / "quad.png").string() + " --gradient " +
                                (dir / "quad_grad.pfm").string() + " --out " + dir.string());
    REQUIRE(r.exit_code == 0);

    const LabelImage expect = amr_wt(g, AmrParams{});
    CHECK(load_labels(dir / "quad_labels.png").labels == expect.labels);
}

TEST_CASE("cli: hierarchy emits per-level files and a manifest") {
    const fs::path dir = work_dir() / "hierarchy";
    fs::create_directories(dir);
    write_pfm(make_two_basin(32, 32), dir / "basin.pfm");

    const CliResult r = run_cli("hierarchy " + (dir / "basin.pfm").string() +
                                " --s 1 --m 4 --out " + dir.string());
    REQUIRE(r.exit_code == 0);

    const json manifest = json::parse(read_file(dir / "basin_hierarchy.json"));
    REQUIRE(manifest["levels"].size() == 5); // raw + caps 1..4
    for (const auto& level : manifest["levels"]) {
        CHECK(fs::exists(level["file"].get<std::string>()));
        CHECK(level["region_count"].get<int>() >= 1);
    }
    CHECK(manifest["levels"][0]["scale_cap"] == 0);
    CHECK(manifest["levels"][4]["scale_cap"] == 4);
}

TEST_CASE("cli: spectral clusters the planted-color image") {
    const fs::path dir = work_dir() / "spectral";
    fs::create_directories(dir);
    write_png_rgb8(make_planted_color(96, 48, 6), dir / "stripes.png");

    const CliResult r = run_cli("spectral " + (dir / "stripes.png").string() +
                                " --k 3 --seed 5 --out " + dir.string());
    REQUIRE(r.exit_code == 0);
    CHECK(load_labels(dir / "stripes_clusters.png").num_labels == 3);
}

TEST_CASE("cli: eval scores a perfect segmentation as 1/1/0") {
    const fs::path dir = work_dir() / "eval";
    const fs::path gt = dir / "gt";
    fs::create_directories(gt);

    const LabelImage truth = four_quadrant_ground_truth(32, 32);
    save_labels(truth, dir / "img_labels.png");
    save_labels(truth, gt / "img_gt1.png");
    save_labels(truth, gt / "img_gt2.png");

    const CliResult r = run_cli("eval " + (dir / "img_labels.png").string() + " --gt " +
                                gt.string() + " --out " + dir.string());
    REQUIRE(r.exit_code == 0);

    const std::string csv = read_file(dir / "eval.csv");
    CHECK(csv.find("img_labels,1,1,0,2") != std::string::npos);
    CHECK(csv.find("mean,1,1,0,1") != std::string::npos);
}

TEST_CASE("cli: demo corpus is complete and regenerates bit-identically") {
    const fs::path a = work_dir() / "demo_a";
    const fs::path b = work_dir() / "demo_b";
    fs::remove_all(a);
    fs::remove_all(b);

    REQUIRE(run_cli("demo --seed 7 --out " + a.string()).exit_code == 0);
    REQUIRE(run_cli("demo --seed 7 --out " + b.string()).exit_code == 0);

    int images = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        const std::string name = entry.path().filename().string();
        if (name.ends_with("_gt1.png") || name.ends_with(".json")) continue;
        ++images;
        const fs::path stem = entry.path().stem();
        CHECK(fs::exists(a / (stem.string() + "_gt1.png")));
        CHECK(read_file(entry.path()) == read_file(b / name)); // bit-identical
    }
    CHECK(images >= 4);

    const LabelImage two = load_labels(a / "two_basin_gt1.png");
    CHECK(two.num_labels == 2);
}

TEST_CASE("cli: outputs are bit-identical across worker-pool sizes") {
    const fs::path dir = work_dir() / "threads";
    fs::create_directories(dir);
    write_png_gray8(make_four_quadrant(48, 48), dir / "a.png");
    write_png_gray8(make_checkerboard(48, 48, 12), dir / "b.png");
    write_pfm(make_two_basin(48, 48, 0.04f, 7), dir / "c.pfm");

    const std::string inputs =
        (dir / "a.png").string() + " " + (dir / "b.png").string() + " " + (dir / "c.pfm").string();
    const fs::path one = dir / "one", four = dir / "four";

    CliResult r = run_cli("segment " + inputs + " --out " + one.string());
    REQUIRE(r.exit_code == 0);
    setenv("MORPHOSEG_THREADS", "4", 1);
    r = run_cli("segment " + inputs + " --out " + four.string());
    unsetenv("MORPHOSEG_THREADS");
    REQUIRE(r.exit_code == 0);

    for (const char* name : {"a_labels.png", "b_labels.png", "c_labels.png"})
        CHECK(read_file(one / name) == read_file(four / name));
}

TEST_CASE("cli: unknown subcommand is a usage error") {
    CHECK(run_cli("transmogrify --out /tmp").exit_code == 2);
}
