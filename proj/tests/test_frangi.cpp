#include "fundopt/frangi.hpp"

#include "synthetic.hpp"

#include <doctest.h>

using namespace fundopt;

TEST_CASE("hessian_at_scale") {
    SUBCASE("constant image gives zero fields") {
        const GrayImage flat = GrayImage::Constant(32, 32, 77);
        const HessianField h = hessian_at_scale(flat, 2.0);
        CHECK(h.xx.cwiseAbs().maxCoeff() < 1e-10);
        CHECK(h.yy.cwiseAbs().maxCoeff() < 1e-10);
        CHECK(h.xy.cwiseAbs().maxCoeff() < 1e-10);
    }

    SUBCASE("quadratic ramp has the analytic second derivative") {
        // value = x^2 scaled into range; d2/dx2 = 2 -> Hxx ~ 2 sigma^2
        const double sigma = 2.0;
        GrayImage img(48, 48);
        for (Eigen::Index y = 0; y < 48; ++y) {
            for (Eigen::Index x = 0; x < 48; ++x) {
                img(y, x) = static_cast<std::uint8_t>((x * x) / 10);
            }
        }
        // use a float-accurate version: the quantized u8 ramp is noisy, so
        // check against the smoothed truth with a loose band instead
        const HessianField h = hessian_at_scale(img, sigma);
        const double expect = 2.0 * sigma * sigma / 10.0;
        // interior, away from the reflected borders
        double sum = 0.0;
        int n = 0;
        for (Eigen::Index y = 16; y < 32; ++y) {
            for (Eigen::Index x = 16; x < 32; ++x) {
                sum += h.xx(y, x);
                CHECK(std::abs(h.yy(y, x)) < 0.2);
                ++n;
            }
        }
        CHECK(sum / n == doctest::Approx(expect).epsilon(0.1));
    }

    SUBCASE("symmetric blob has equal xx and yy at the peak") {
        GrayImage img(33, 33);
        for (Eigen::Index y = 0; y < 33; ++y) {
            for (Eigen::Index x = 0; x < 33; ++x) {
                const double dx = static_cast<double>(x) - 16.0;
                const double dy = static_cast<double>(y) - 16.0;
                img(y, x) = static_cast<std::uint8_t>(
                    std::lround(200.0 * std::exp(-(dx * dx + dy * dy) / 32.0)));
            }
        }
        const HessianField h = hessian_at_scale(img, 2.0);
        CHECK(h.xx(16, 16) == doctest::Approx(h.yy(16, 16)).epsilon(1e-6));
        CHECK(h.xy(16, 16) == doctest::Approx(0.0).epsilon(1e-6));
    }

    SUBCASE("sigma must be positive") {
        CHECK_THROWS_AS(hessian_at_scale(GrayImage::Constant(4, 4, 0), 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("frangi_vesselness") {
    SUBCASE("constant image is identically zero") {
        const GrayImage flat = GrayImage::Constant(48, 48, 123);
        const RealImage v = frangi_vesselness(flat, {});
        CHECK(v.maxCoeff() == 0.0);
        CHECK(v.minCoeff() == 0.0);
    }

    SUBCASE("dark line scores far above background") {
        const GrayImage img = synthetic::dark_line_image(64, 64, 32, 1);
        const RealImage v = frangi_vesselness(img, {});
        double on = 0.0, off = 0.0;
        int n_on = 0, n_off = 0;
        for (Eigen::Index y = 8; y < 56; ++y) {
            for (Eigen::Index x = 8; x < 56; ++x) {
                if (x >= 31 && x <= 33) {
                    on += v(y, x);
                    ++n_on;
                } else if (x < 24 || x > 40) {
                    off += v(y, x);
                    ++n_off;
                }
            }
        }
        CHECK(on / n_on >= 5.0 * (off / n_off));
    }

    SUBCASE("bright line on dark field gives near-zero response") {
        GrayImage img = GrayImage::Constant(64, 64, 30);
        for (Eigen::Index y = 0; y < 64; ++y) {
            img(y, 31) = img(y, 32) = 220;
        }
        const RealImage v = frangi_vesselness(img, {});
        // the ridge interior has lambda2 < 0 and must stay silent
        for (Eigen::Index y = 16; y < 48; ++y) {
            CHECK(v(y, 31) == 0.0);
            CHECK(v(y, 32) == 0.0);
        }
    }

    SUBCASE("values stay in [0, 1] and offsets cancel") {
        const GrayImage img = synthetic::dark_line_image(48, 48, 20, 2);
        GrayImage shifted = img;
        for (Eigen::Index y = 0; y < 48; ++y) {
            for (Eigen::Index x = 0; x < 48; ++x) {
                shifted(y, x) = static_cast<std::uint8_t>(
                    std::min(255, static_cast<int>(img(y, x)) + 30));
            }
        }
        const RealImage v1 = frangi_vesselness(img, {});
        const RealImage v2 = frangi_vesselness(shifted, {});
        CHECK(v1.minCoeff() >= 0.0);
        CHECK(v1.maxCoeff() <= 1.0);
        CHECK((v1 - v2).cwiseAbs().maxCoeff() < 1e-9);
    }

    SUBCASE("parameter validation") {
        FrangiParams bad;
        bad.beta = 0.0;
        CHECK_THROWS_AS(frangi_vesselness(GrayImage::Constant(8, 8, 0), bad),
                        std::invalid_argument);
        FrangiParams none;
        none.scales.clear();
        CHECK_THROWS_AS(
            frangi_vesselness(GrayImage::Constant(8, 8, 0), none),
            std::invalid_argument);
    }
}

TEST_CASE("vessel_summary") {
    SUBCASE("all-zero map") {
        const RealImage v = RealImage::Zero(10, 10);
        const VesselSummary s =
            vessel_summary(v, BinaryMask::Constant(10, 10, true));
        CHECK(s.mean_vesselness == 0.0);
        CHECK(s.max_vesselness == 0.0);
        CHECK(s.vessel_density == 0.0);
    }

    SUBCASE("single bright pixel") {
        RealImage v = RealImage::Zero(10, 10);
        v(3, 4) = 1.0;
        const VesselSummary s =
            vessel_summary(v, BinaryMask::Constant(10, 10, true));
        CHECK(s.max_vesselness == doctest::Approx(1.0));
        CHECK(s.mean_vesselness == doctest::Approx(0.01));
    }

    SUBCASE("line density tracks the true pixel fraction") {
        const GrayImage img = synthetic::dark_line_image(64, 64, 32, 1);
        const RealImage v = frangi_vesselness(img, {});
        const VesselSummary s =
            vessel_summary(v, BinaryMask::Constant(64, 64, true));
        const double line_fraction = 3.0 / 64.0;
        CHECK(std::abs(s.vessel_density - line_fraction) < 0.05);
    }

    SUBCASE("empty roi") {
        const RealImage v = RealImage::Zero(4, 4);
        CHECK_THROWS_WITH_AS(
            vessel_summary(v, BinaryMask::Constant(4, 4, false)), "empty roi",
            std::invalid_argument);
    }
}
