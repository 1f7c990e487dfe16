#include <doctest.h>

#include <random>

#include "morphoseg/morphology.hpp"
#include "oracles.hpp"

using namespace morphoseg;

TEST_CASE("disk structuring element membership") {
    const auto se0 = StructuringElement::disk(0);
    CHECK(se0.offsets.size() == 1);
    CHECK(se0.offsets[0] == std::array<int, 2>{0, 0});

    for (int r : {1, 2, 3, 5}) {
        const auto se = StructuringElement::disk(r);
        size_t expected = 0;
        for (int dy = -r; dy <= r; ++dy)
            for (int dx = -r; dx <= r; ++dx)
                if (dx * dx + dy * dy <= r * r) ++expected;
        CHECK(se.offsets.size() == expected);
        bool has_center = false;
        for (const auto& off : se.offsets) {
            CHECK(off[0] * off[0] + off[1] * off[1] <= r * r);
            has_center |= off[0] == 0 && off[1] == 0;
        }
        CHECK(has_center);
    }
    CHECK(StructuringElement::disk(1).offsets.size() == 5);  // plus shape
    CHECK(StructuringElement::disk(2).offsets.size() == 13);
}

TEST_CASE("dilate: flats, plus shape, brute-force oracle") {
    const GrayImage flat(6, 5, 0.42f);
    CHECK(dilate(flat, StructuringElement::disk(3)).data == flat.data);

    GrayImage spot(5, 5, 0.0f);
    spot.at(2, 2) = 1.0f;
    const GrayImage d = dilate(spot, StructuringElement::disk(1));
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) {
            const bool in_plus = std::abs(x - 2) + std::abs(y - 2) <= 1;
            CHECK(d.at(x, y) == (in_plus ? 1.0f : 0.0f));
        }

    std::mt19937 rng(101);
    for (int trial = 0; trial < 30; ++trial) {
        const GrayImage img = oracle::random_image(7, 7, rng);
        const auto se = StructuringElement::disk(2);
        CHECK(dilate(img, se).data == oracle::brute_extremum(img, se, false).data);
    }
}

TEST_CASE("erode: flats, dual plus shape, brute-force oracle") {
    const GrayImage flat(4, 9, 0.77f);
    CHECK(erode(flat, StructuringElement::disk(2)).data == flat.data);

    GrayImage pit(5, 5, 1.0f);
    pit.at(2, 2) = 0.0f;
    const GrayImage e = erode(pit, StructuringElement::disk(1));
    for (int y = 0; y < 5; ++y)
        for (int x = 0; x < 5; ++x) {
            const bool in_plus = std::abs(x - 2) + std::abs(y - 2) <= 1;
            CHECK(e.at(x, y) == (in_plus ? 0.0f : 1.0f));
        }

    std::mt19937 rng(202);
    for (int trial = 0; trial < 30; ++trial) {
        const GrayImage img = oracle::random_image(7, 7, rng);
        const auto se = StructuringElement::disk(2);
        CHECK(erode(img, se).data == oracle::brute_extremum(img, se, true).data);
    }
}

TEST_CASE("erode/dilate against oracle across radii and shapes") {
    std::mt19937 rng(303);
    for (int r : {1, 3, 4, 6}) {
        const GrayImage img = oracle::random_image(17, 9, rng);
        const auto se = StructuringElement::disk(r);
        CHECK(erode(img, se).data == oracle::brute_extremum(img, se, true).data);
        CHECK(dilate(img, se).data == oracle::brute_extremum(img, se, false).data);
    }
}

TEST_CASE("erode marker is anti-extensive") {
    std::mt19937 rng(404);
    for (int trial = 0; trial < 20; ++trial) {
        const GrayImage g = oracle::random_image(9, 8, rng);
        const GrayImage e = erode(g, StructuringElement::disk(1 + trial % 4));
        for (size_t i = 0; i < g.data.size(); ++i) CHECK(e.data[i] <= g.data[i]);
    }
}

TEST_CASE("reconstruct_dilation: identity, 1-D plateau, precondition") {
    std::mt19937 rng(7);
    const GrayImage g = oracle::random_image(6, 6, rng);
    CHECK(reconstruct_dilation(g, g).data == g.data);

    // mask [0,3,3,0,2,2,0]/3 with a marker on the left plateau only: the
    // right plateau must stay unreached
    GrayImage mask(7, 1), marker(7, 1);
    const float two_thirds = 2.0f / 3.0f;
    mask.data = {0, 1.0f, 1.0f, 0, two_thirds, two_thirds, 0};
    marker.data = {0, 1.0f, 0, 0, 0, 0, 0};
    const GrayImage rec = reconstruct_dilation(marker, mask);
    CHECK(rec.data == std::vector<float>{0, 1.0f, 1.0f, 0, 0, 0, 0});

    GrayImage bad = mask;
    bad.data[4] = 1.0f; // marker above mask at (4,0)
    CHECK_THROWS_AS(reconstruct_dilation(bad, mask), PreconditionError);
    try {
        reconstruct_dilation(bad, mask);
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("(4,0)") != std::string::npos);
    }
}

TEST_CASE("reconstruct_dilation from the constant-minimum marker") {
    std::mt19937 rng(55);
    for (int trial = 0; trial < 25; ++trial) {
        const GrayImage mask = oracle::random_image(8, 8, rng);
        const float lo = *std::min_element(mask.data.begin(), mask.data.end());
        const GrayImage marker(8, 8, lo);
        CHECK(reconstruct_dilation(marker, mask).data ==
              oracle::naive_reconstruct_dilation(marker, mask).data);
    }
}

TEST_CASE("reconstruction hybrid equals naive fixpoint on random pairs") {
    std::mt19937 rng(606);
    for (int trial = 0; trial < 60; ++trial) {
        const auto [marker, mask] = oracle::random_marker_mask(8, 8, rng);
        CHECK(reconstruct_dilation(marker, mask).data ==
              oracle::naive_reconstruct_dilation(marker, mask).data);
    }
}

TEST_CASE("reconstruct_dilation output is stable under one more step") {
    std::mt19937 rng(707);
    for (int trial = 0; trial < 20; ++trial) {
        const auto [marker, mask] = oracle::random_marker_mask(9, 7, rng);
        const GrayImage rec = reconstruct_dilation(marker, mask);
        CHECK(oracle::geodesic_step(rec, mask, true).data == rec.data);
        for (size_t i = 0; i < rec.data.size(); ++i) {
            CHECK(rec.data[i] >= marker.data[i]);
            CHECK(rec.data[i] <= mask.data[i]);
        }
    }
}

TEST_CASE("reconstruct_erosion: identity, duality, constant-max marker") {
    std::mt19937 rng(808);
    const GrayImage g = oracle::random_image(5, 5, rng);
    CHECK(reconstruct_erosion(g, g).data == g.data);
    CHECK_THROWS_AS(reconstruct_erosion(GrayImage(5, 5, 0.0f), GrayImage(5, 5, 0.5f)),
                    PreconditionError);

    // duality on the 1/256 grid, where 1-x is exact in float
    for (int trial = 0; trial < 40; ++trial) {
        GrayImage mask(8, 8), marker(8, 8);
        for (size_t i = 0; i < mask.data.size(); ++i) {
            const float a = static_cast<float>(rng() % 257) / 256.0f;
            const float b = static_cast<float>(rng() % 257) / 256.0f;
            mask.data[i] = std::min(a, b);
            marker.data[i] = std::max(a, b);
        }
        GrayImage cmarker(8, 8), cmask(8, 8);
        for (size_t i = 0; i < mask.data.size(); ++i) {
            cmarker.data[i] = 1.0f - marker.data[i];
            cmask.data[i] = 1.0f - mask.data[i];
        }
        GrayImage dual = reconstruct_dilation(cmarker, cmask);
        for (float& v : dual.data) v = 1.0f - v;
        CHECK(reconstruct_erosion(marker, mask).data == dual.data);
    }

    for (int trial = 0; trial < 25; ++trial) {
        const GrayImage mask = oracle::random_image(8, 8, rng);
        const float hi = *std::max_element(mask.data.begin(), mask.data.end());
        const GrayImage marker(8, 8, hi);
        CHECK(reconstruct_erosion(marker, mask).data ==
              oracle::naive_reconstruct_erosion(marker, mask).data);
    }
}

TEST_CASE("opening/closing by reconstruction: radius 0 and flats") {
    std::mt19937 rng(909);
    const GrayImage g = oracle::random_image(10, 10, rng);
    const auto id = StructuringElement::disk(0);
    CHECK(opening_by_reconstruction(g, id).data == g.data);
    CHECK(closing_by_reconstruction(g, id).data == g.data);

    const GrayImage flat(9, 9, 0.31f);
    for (int r : {1, 2, 5}) {
        CHECK(opening_by_reconstruction(flat, StructuringElement::disk(r)).data == flat.data);
        CHECK(closing_by_reconstruction(flat, StructuringElement::disk(r)).data == flat.data);
    }
}

TEST_CASE("opening/closing equal their two-stage composition") {
    std::mt19937 rng(111);
    const auto se = StructuringElement::disk(2);
    for (int trial = 0; trial < 15; ++trial) {
        const GrayImage g = oracle::random_image(10, 10, rng);

        const GrayImage c1 = reconstruct_dilation(erode(g, se), g);
        const GrayImage closing = reconstruct_erosion(dilate(c1, se), c1);
        CHECK(closing_by_reconstruction(g, se).data == closing.data);

        const GrayImage o1 = reconstruct_erosion(dilate(g, se), g);
        const GrayImage opening = reconstruct_dilation(erode(o1, se), o1);
        CHECK(opening_by_reconstruction(g, se).data == opening.data);
    }
}

TEST_CASE("closing by reconstruction matches naive fixpoint composition") {
    std::mt19937 rng(222);
    for (int r : {1, 2, 3}) {
        const auto se = StructuringElement::disk(r);
        for (int trial = 0; trial < 8; ++trial) {
            const GrayImage g = oracle::random_image(10, 10, rng);
            const GrayImage s1 =
                oracle::naive_reconstruct_dilation(oracle::brute_extremum(g, se, true), g);
            const GrayImage expect =
                oracle::naive_reconstruct_erosion(oracle::brute_extremum(s1, se, false), s1);
            CHECK(closing_by_reconstruction(g, se).data == expect.data);
        }
    }
}

TEST_CASE("giant structuring elements hit the global extremum limits") {
    std::mt19937 rng(333);
    for (int trial = 0; trial < 10; ++trial) {
        const GrayImage g = oracle::random_image(8, 8, rng);
        const float lo = *std::min_element(g.data.begin(), g.data.end());
        const float hi = *std::max_element(g.data.begin(), g.data.end());
        for (int r : {12, 20}) {
            const auto se = StructuringElement::disk(r);
            for (float v : closing_by_reconstruction(g, se).data) CHECK(v == lo);
            for (float v : opening_by_reconstruction(g, se).data) CHECK(v == hi);
        }
    }
}

TEST_CASE("closing stays within the mask's range") {
    std::mt19937 rng(444);
    for (int trial = 0; trial < 10; ++trial) {
        const GrayImage g = oracle::random_image(12, 7, rng);
        const float lo = *std::min_element(g.data.begin(), g.data.end());
        const float hi = *std::max_element(g.data.begin(), g.data.end());
        const GrayImage c = closing_by_reconstruction(g, StructuringElement::disk(2));
        for (float v : c.data) {
            CHECK(v >= lo);
            CHECK(v <= hi);
        }
    }
}
