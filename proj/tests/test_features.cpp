#include "fundopt/features.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace fundopt;

namespace {

SegmentationMasks concentric(Eigen::Index side, double r_disc, double r_cup) {
    SegmentationMasks masks;
    const double c = (static_cast<double>(side) - 1.0) / 2.0;
    masks.disc = oracles::raster_circle(side, side, c, c, r_disc);
    masks.cup = oracles::raster_circle(side, side, c, c, r_cup);
    return masks;
}

GrayImage random_gray(int rows, int cols, std::mt19937_64& rng) {
    GrayImage img(rows, cols);
    std::uniform_int_distribution<int> dist(0, 255);
    for (Eigen::Index y = 0; y < rows; ++y) {
        for (Eigen::Index x = 0; x < cols; ++x) {
            img(y, x) = static_cast<std::uint8_t>(dist(rng));
        }
    }
    return img;
}

} // namespace

TEST_CASE("mask_area") {
    CHECK(mask_area(BinaryMask::Constant(5, 5, false)) == 0);
    CHECK(mask_area(BinaryMask::Constant(10, 10, true)) == 100);

    const BinaryMask circle = oracles::raster_circle(64, 64, 31.5, 31.5, 20.0);
    std::int64_t count = 0;
    for (Eigen::Index y = 0; y < 64; ++y) {
        for (Eigen::Index x = 0; x < 64; ++x) {
            count += circle(y, x) ? 1 : 0;
        }
    }
    CHECK(mask_area(circle) == count);
    CHECK(std::abs(static_cast<double>(count) - M_PI * 400.0) < 60.0);
}

TEST_CASE("cdr_area") {
    SegmentationMasks same = concentric(64, 20.0, 20.0);
    CHECK(cdr_area(same) == doctest::Approx(1.0));

    SegmentationMasks empty_cup = concentric(64, 20.0, 20.0);
    empty_cup.cup.setConstant(false);
    CHECK(cdr_area(empty_cup) == doctest::Approx(0.0));

    SegmentationMasks quarter = concentric(64, 20.0, 10.0);
    const double expected = static_cast<double>(mask_area(quarter.cup)) /
                            static_cast<double>(mask_area(quarter.disc));
    CHECK(cdr_area(quarter) == doctest::Approx(expected));
    CHECK(cdr_area(quarter) == doctest::Approx(0.25).epsilon(0.02));

    SegmentationMasks no_disc = concentric(64, 20.0, 10.0);
    no_disc.disc.setConstant(false);
    CHECK_THROWS_WITH_AS(cdr_area(no_disc), "empty disc",
                         std::invalid_argument);
}

TEST_CASE("cdr_axes from bounding boxes") {
    SegmentationMasks same = concentric(64, 20.0, 20.0);
    auto [v, h] = cdr_axes(same);
    CHECK(v == doctest::Approx(1.0));
    CHECK(h == doctest::Approx(1.0));

    SegmentationMasks empty_cup = same;
    empty_cup.cup.setConstant(false);
    std::tie(v, h) = cdr_axes(empty_cup);
    CHECK(v == 0.0);
    CHECK(h == 0.0);

    // disc box 60 wide x 40 tall, cup box 30 x 20
    SegmentationMasks boxes;
    boxes.disc = BinaryMask::Constant(100, 100, false);
    boxes.cup = BinaryMask::Constant(100, 100, false);
    for (Eigen::Index y = 10; y < 50; ++y) {
        for (Eigen::Index x = 20; x < 80; ++x) {
            boxes.disc(y, x) = true;
        }
    }
    for (Eigen::Index y = 20; y < 40; ++y) {
        for (Eigen::Index x = 30; x < 60; ++x) {
            boxes.cup(y, x) = true;
        }
    }
    std::tie(v, h) = cdr_axes(boxes);
    CHECK(v == doctest::Approx(0.5));
    CHECK(h == doctest::Approx(0.5));

    SegmentationMasks no_disc = boxes;
    no_disc.disc.setConstant(false);
    CHECK_THROWS_AS(cdr_axes(no_disc), std::invalid_argument);
}

TEST_CASE("nrr_area and the partition identity") {
    SegmentationMasks same = concentric(64, 20.0, 20.0);
    CHECK(nrr_area(same) == 0);

    SegmentationMasks annulus = concentric(64, 20.0, 10.0);
    CHECK(nrr_area(annulus) ==
          mask_area(annulus.disc) - mask_area(annulus.cup));
    CHECK(cup_within_disc(annulus));

    // bad segmentation: cup sticks out of the disc
    SegmentationMasks bad;
    bad.disc = oracles::raster_circle(64, 64, 20.0, 31.5, 10.0);
    bad.cup = oracles::raster_circle(64, 64, 40.0, 31.5, 15.0);
    CHECK(nrr_area(bad) == 0);
    CHECK_FALSE(cup_within_disc(bad));

    // partition: ISNT quadrants sum exactly to the rim when cup is inside
    const IsntAreas isnt = isnt_areas(annulus, Laterality::right);
    CHECK(isnt.inferior + isnt.superior + isnt.nasal + isnt.temporal ==
          nrr_area(annulus));
}

TEST_CASE("isnt_areas") {
    SegmentationMasks annulus = concentric(129, 50.0, 25.0);

    SUBCASE("concentric annulus splits evenly") {
        const IsntAreas isnt = isnt_areas(annulus, Laterality::right);
        const double total = static_cast<double>(
            isnt.inferior + isnt.superior + isnt.nasal + isnt.temporal);
        for (const std::int64_t q :
             {isnt.inferior, isnt.superior, isnt.nasal, isnt.temporal}) {
            CHECK(std::abs(static_cast<double>(q) - total / 4.0) <
                  0.01 * total);
        }
    }

    SUBCASE("superior half removed empties the superior quadrant") {
        SegmentationMasks cut = annulus;
        // blank the image-top half strictly above the centroid row
        for (Eigen::Index y = 0; y < 64; ++y) {
            for (Eigen::Index x = 0; x < 129; ++x) {
                cut.disc(y, x) = false;
            }
        }
        const IsntAreas isnt = isnt_areas(cut, Laterality::right);
        CHECK(isnt.superior <= isnt.inferior / 20);
    }

    SUBCASE("laterality swaps nasal and temporal exactly") {
        // asymmetric rim so nasal != temporal
        SegmentationMasks lop = annulus;
        for (Eigen::Index y = 0; y < 129; ++y) {
            for (Eigen::Index x = 0; x < 40; ++x) {
                lop.cup(y, x) = lop.disc(y, x);
            }
        }
        const IsntAreas right = isnt_areas(lop, Laterality::right);
        const IsntAreas left = isnt_areas(lop, Laterality::left);
        CHECK(right.nasal == left.temporal);
        CHECK(right.temporal == left.nasal);
        CHECK(right.superior == left.superior);
        CHECK(right.inferior == left.inferior);
        CHECK(right.nasal != right.temporal);
    }

    SUBCASE("empty disc") {
        SegmentationMasks none;
        none.disc = BinaryMask::Constant(8, 8, false);
        none.cup = BinaryMask::Constant(8, 8, false);
        CHECK_THROWS_AS(isnt_areas(none, Laterality::right),
                        std::invalid_argument);
    }
}

TEST_CASE("glcm_compute hand-counted cases") {
    // values 0 and 255 land in levels 0 and 1 at L=2
    GrayImage img(2, 2);
    img << 0, 0, 255, 255;
    const BinaryMask full = BinaryMask::Constant(2, 2, true);

    SUBCASE("horizontal offset pairs like values") {
        const GlcmMatrix g = glcm_compute(img, full, 2, {{0, 1}});
        CHECK(g.probs(0, 0) == doctest::Approx(0.5));
        CHECK(g.probs(1, 1) == doctest::Approx(0.5));
        CHECK(g.probs(0, 1) == doctest::Approx(0.0));
        CHECK(g.probs(1, 0) == doctest::Approx(0.0));
    }

    SUBCASE("vertical offset pairs unlike values") {
        const GlcmMatrix g = glcm_compute(img, full, 2, {{1, 0}});
        CHECK(g.probs(0, 1) == doctest::Approx(0.5));
        CHECK(g.probs(1, 0) == doctest::Approx(0.5));
        CHECK(g.probs(0, 0) == doctest::Approx(0.0));
    }

    SUBCASE("constant image concentrates in one cell") {
        GrayImage flat = GrayImage::Constant(3, 3, 40);
        const GlcmMatrix g = glcm_compute(flat, BinaryMask::Constant(3, 3, true),
                                          4, glcm_default_offsets());
        CHECK(g.probs(0, 0) == doctest::Approx(1.0));
        CHECK(g.probs.sum() == doctest::Approx(1.0));
    }

    SUBCASE("degenerate ROI") {
        BinaryMask none = BinaryMask::Constant(2, 2, false);
        CHECK_THROWS_WITH_AS(glcm_compute(img, none, 2, {{0, 1}}),
                             "degenerate ROI", std::invalid_argument);
    }
}

TEST_CASE("glcm properties: symmetric, normalized, matches brute force") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const GrayImage img = random_gray(8, 8, rng);
        const BinaryMask roi = BinaryMask::Constant(8, 8, true);
        const GlcmMatrix g = glcm_compute(img, roi, 4, glcm_default_offsets());

        CHECK(std::abs(g.probs.sum() - 1.0) < 1e-12);
        CHECK((g.probs - g.probs.transpose()).cwiseAbs().maxCoeff() == 0.0);

        const oracles::GlcmOracle o =
            oracles::glcm_brute_force(img, roi, 4, glcm_default_offsets());
        CHECK((g.probs - o.probs).cwiseAbs().maxCoeff() < 1e-12);

        const TextureFeatures f = glcm_features(g);
        CHECK(f.contrast == doctest::Approx(o.contrast).epsilon(1e-12));
        CHECK(f.dissimilarity ==
              doctest::Approx(o.dissimilarity).epsilon(1e-12));
        CHECK(f.homogeneity == doctest::Approx(o.homogeneity).epsilon(1e-12));
        CHECK(f.energy == doctest::Approx(o.energy).epsilon(1e-12));
        CHECK(f.correlation == doctest::Approx(o.correlation).epsilon(1e-12));
        CHECK(f.angular_second_moment ==
              doctest::Approx(o.asm_value).epsilon(1e-12));
    }
}

TEST_CASE("glcm_features closed forms") {
    GlcmMatrix diag;
    diag.levels = 2;
    diag.probs = Eigen::MatrixXd::Zero(2, 2);
    diag.probs(0, 0) = 0.5;
    diag.probs(1, 1) = 0.5;
    TextureFeatures f = glcm_features(diag);
    CHECK(f.contrast == doctest::Approx(0.0));
    CHECK(f.homogeneity == doctest::Approx(1.0));
    CHECK(f.angular_second_moment == doctest::Approx(0.5));
    CHECK(f.energy == doctest::Approx(std::sqrt(0.5)));
    CHECK(f.correlation == doctest::Approx(1.0));

    GlcmMatrix anti;
    anti.levels = 2;
    anti.probs = Eigen::MatrixXd::Zero(2, 2);
    anti.probs(0, 1) = 0.5;
    anti.probs(1, 0) = 0.5;
    f = glcm_features(anti);
    CHECK(f.contrast == doctest::Approx(1.0));
    CHECK(f.dissimilarity == doctest::Approx(1.0));
    CHECK(f.correlation == doctest::Approx(-1.0));

    GlcmMatrix single;
    single.levels = 2;
    single.probs = Eigen::MatrixXd::Zero(2, 2);
    single.probs(1, 1) = 1.0;
    f = glcm_features(single);
    CHECK(f.contrast == doctest::Approx(0.0));
    CHECK(f.angular_second_moment == doctest::Approx(1.0));
    CHECK(f.correlation == doctest::Approx(1.0)); // degenerate rule
}

TEST_CASE("extract_features composes the pieces") {
    std::mt19937_64 rng(37);
    const GrayImage img = random_gray(64, 64, rng);
    SegmentationMasks masks = concentric(64, 20.0, 10.0);

    const FeatureRecord rec =
        extract_features(img, masks, Laterality::right);
    CHECK(rec.disc_area == mask_area(masks.disc));
    CHECK(rec.cup_area == mask_area(masks.cup));
    CHECK(rec.cdr_area == doctest::Approx(cdr_area(masks)));
    CHECK(rec.nrr_area == nrr_area(masks));
    CHECK(rec.cup_within_disc);
    const IsntAreas isnt = isnt_areas(masks, Laterality::right);
    CHECK(rec.isnt.inferior == isnt.inferior);
    CHECK(rec.isnt.superior == isnt.superior);
    const TextureFeatures tex = glcm_features(glcm_compute(
        img, masks.disc, kGlcmDefaultLevels, glcm_default_offsets()));
    CHECK(rec.texture.contrast == doctest::Approx(tex.contrast));
    CHECK(rec.vessels.max_vesselness >= rec.vessels.mean_vesselness);

    SUBCASE("cup equal to disc zeroes the rim") {
        SegmentationMasks same = concentric(64, 20.0, 20.0);
        const FeatureRecord r2 =
            extract_features(img, same, Laterality::right);
        CHECK(r2.cdr_area == doctest::Approx(1.0));
        CHECK(r2.nrr_area == 0);
        CHECK(r2.isnt.inferior == 0);
        CHECK(r2.isnt.superior == 0);
        CHECK(r2.isnt.nasal == 0);
        CHECK(r2.isnt.temporal == 0);
    }

    SUBCASE("empty disc fails") {
        SegmentationMasks none = masks;
        none.disc.setConstant(false);
        CHECK_THROWS_AS(extract_features(img, none, Laterality::right),
                        std::invalid_argument);
    }
}
