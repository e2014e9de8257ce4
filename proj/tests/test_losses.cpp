#include "fundopt/losses.hpp"

#include <doctest.h>

#include <random>

using namespace fundopt;

namespace {

Eigen::ArrayXd arr(std::initializer_list<double> values) {
    Eigen::ArrayXd a(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values) {
        a[i++] = v;
    }
    return a;
}

} // namespace

TEST_CASE("dice_loss") {
    CHECK(dice_loss(arr({1, 0, 1, 0}), arr({1, 0, 1, 0})) ==
          doctest::Approx(0.0));
    CHECK(dice_loss(arr({1, 1, 0, 0}), arr({0, 0, 1, 1})) ==
          doctest::Approx(1.0));
    CHECK(dice_loss(arr({1, 1, 0, 0}), arr({1, 0, 1, 0})) ==
          doctest::Approx(0.5));
    CHECK_THROWS_WITH_AS(dice_loss(arr({0, 0}), arr({0, 0})),
                         "undefined Dice", std::invalid_argument);
    CHECK_THROWS_AS(dice_loss(arr({1, 0}), arr({1, 0, 1})),
                    std::invalid_argument);

    // dice_loss(p, p) = 0 for every nonzero binary p
    std::mt19937_64 rng(41);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::ArrayXd p(16);
        for (Eigen::Index i = 0; i < 16; ++i) {
            p[i] = coin(rng) ? 1.0 : 0.0;
        }
        if (p.sum() == 0.0) {
            p[0] = 1.0;
        }
        CHECK(dice_loss(p, p) == doctest::Approx(0.0));
    }
}

TEST_CASE("cross_entropy_loss") {
    CHECK(cross_entropy_loss(arr({1, 0, 1}), arr({1, 0, 1})) ==
          doctest::Approx(0.0).epsilon(1e-5));
    CHECK(cross_entropy_loss(arr({0.5}), arr({1})) ==
          doctest::Approx(std::log(2.0)));
    CHECK(cross_entropy_loss(arr({0.9}), arr({0})) ==
          doctest::Approx(-std::log(0.1)));
}

TEST_CASE("seg_loss weights") {
    const Eigen::ArrayXd p = arr({1, 1, 0, 0});
    const Eigen::ArrayXd g = arr({1, 0, 1, 0});
    CHECK(seg_loss(p, g, {1.0, 0.0}) == doctest::Approx(dice_loss(p, g)));
    CHECK(seg_loss(p, g, {0.0, 1.0}) ==
          doctest::Approx(cross_entropy_loss(p, g)));
    CHECK(seg_loss(p, g, {1.0, 1.0}) ==
          doctest::Approx(0.5 + cross_entropy_loss(p, g)));

    // linear in the weights
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const SegLossWeights w1{u(rng), u(rng)};
        const SegLossWeights w2{u(rng), u(rng)};
        const SegLossWeights sum{w1.lambda_dice + w2.lambda_dice,
                                 w1.lambda_ce + w2.lambda_ce};
        CHECK(seg_loss(p, g, sum) ==
              doctest::Approx(seg_loss(p, g, w1) + seg_loss(p, g, w2)));
    }
}

TEST_CASE("focal_loss") {
    FocalParams fp;

    SUBCASE("perfect confident prediction is ~0") {
        CHECK(focal_loss(1.0, 1.0, fp) == doctest::Approx(0.0).epsilon(1e-5));
        CHECK(focal_loss(0.0, 0.0, fp) == doctest::Approx(0.0).epsilon(1e-5));
    }

    SUBCASE("gamma 0, alpha 0.5 halves the BCE") {
        FocalParams plain;
        plain.gamma = 0.0;
        plain.alpha = 0.5;
        std::mt19937_64 rng(47);
        std::uniform_real_distribution<double> u(0.05, 0.95);
        std::bernoulli_distribution coin(0.5);
        for (int trial = 0; trial < 20; ++trial) {
            const double yhat = u(rng);
            const double y = coin(rng) ? 1.0 : 0.0;
            const double bce =
                -(y * std::log(yhat) + (1.0 - y) * std::log(1.0 - yhat));
            CHECK(focal_loss(yhat, y, plain) ==
                  doctest::Approx(0.5 * bce).epsilon(1e-9));
        }
    }

    SUBCASE("hand-computed value") {
        fp.alpha = 0.25;
        fp.gamma = 2.0;
        // 0.25 * 0.01 * (-ln 0.9)
        CHECK(focal_loss(0.9, 1.0, fp) ==
              doctest::Approx(2.634e-4).epsilon(1e-3));
    }

    SUBCASE("monotone: decreasing in yhat when y=1, increasing when y=0") {
        double prev1 = focal_loss(0.05, 1.0, fp);
        double prev0 = focal_loss(0.05, 0.0, fp);
        for (double yhat = 0.1; yhat < 1.0; yhat += 0.05) {
            const double cur1 = focal_loss(yhat, 1.0, fp);
            const double cur0 = focal_loss(yhat, 0.0, fp);
            CHECK(cur1 <= prev1);
            CHECK(cur0 >= prev0);
            prev1 = cur1;
            prev0 = cur0;
        }
    }

    SUBCASE("nonnegative everywhere") {
        std::mt19937_64 rng(53);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            FocalParams rp;
            rp.alpha = 0.05 + 0.9 * u(rng);
            rp.gamma = 4.0 * u(rng);
            CHECK(focal_loss(u(rng), u(rng) < 0.5 ? 0.0 : 1.0, rp) >= 0.0);
        }
    }
}

TEST_CASE("fn_penalty") {
    CHECK(fn_penalty(0.3, 0.0) == 0.0);
    CHECK(fn_penalty(0.2, 1.0) == doctest::Approx(0.8));
    CHECK(fn_penalty(1.0, 1.0) == 0.0);
}

TEST_CASE("total_loss") {
    FocalParams fp;
    fp.alpha = 0.25;
    fp.gamma = 2.0;

    SUBCASE("beta 0 reduces to focal") {
        FocalParams nb = fp;
        nb.beta_fn = 0.0;
        CHECK(total_loss(0.7, 1.0, nb) ==
              doctest::Approx(focal_loss(0.7, 1.0, nb)));
    }

    SUBCASE("component sum") {
        fp.beta_fn = 0.5;
        CHECK(total_loss(0.9, 1.0, fp) ==
              doctest::Approx(2.634e-4 + 0.05).epsilon(1e-4));
    }

    SUBCASE("negative label kills the FN term") {
        fp.beta_fn = 10.0;
        CHECK(total_loss(0.4, 0.0, fp) ==
              doctest::Approx(focal_loss(0.4, 0.0, fp)));
    }
}

TEST_CASE("total_loss gradient matches central differences") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    std::bernoulli_distribution coin(0.5);
    const double h = 1e-6;
    for (int trial = 0; trial < 50; ++trial) {
        FocalParams fp;
        fp.alpha = 0.1 + 0.8 * u(rng);
        fp.gamma = 0.5 + 3.0 * u(rng);
        fp.beta_fn = u(rng);
        const double yhat = u(rng);
        const double y = coin(rng) ? 1.0 : 0.0;

        const double numeric = (total_loss(yhat + h, y, fp) -
                                total_loss(yhat - h, y, fp)) /
                               (2.0 * h);
        const double analytic = total_loss_grad(yhat, y, fp);
        CHECK(std::abs(numeric - analytic) <=
              1e-5 * std::max(1.0, std::abs(analytic)));
    }
}
