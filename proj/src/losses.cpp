#include "fundopt/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fundopt {

namespace {

void check_lengths(const Eigen::ArrayXd& pred, const Eigen::ArrayXd& truth) {
    if (pred.size() != truth.size()) {
        throw std::invalid_argument("pred/truth length mismatch");
    }
    if (pred.size() == 0) {
        throw std::invalid_argument("empty input");
    }
}

} // namespace

double dice_loss(const Eigen::ArrayXd& pred, const Eigen::ArrayXd& truth) {
    check_lengths(pred, truth);
    const double denom = pred.sum() + truth.sum();
    if (denom <= 0.0) {
        throw std::invalid_argument("undefined Dice");
    }
    return 1.0 - 2.0 * (pred * truth).sum() / denom;
}

double cross_entropy_loss(const Eigen::ArrayXd& pred,
                          const Eigen::ArrayXd& truth, double eps) {
    check_lengths(pred, truth);
    const Eigen::ArrayXd p = pred.min(1.0 - eps).max(eps);
    return -(truth * p.log() + (1.0 - truth) * (1.0 - p).log()).mean();
}

double seg_loss(const Eigen::ArrayXd& pred, const Eigen::ArrayXd& truth,
                const SegLossWeights& weights) {
    return weights.lambda_dice * dice_loss(pred, truth) +
           weights.lambda_ce * cross_entropy_loss(pred, truth);
}

double focal_loss(double yhat, double y, const FocalParams& fp) {
    const double p = std::clamp(yhat, fp.eps, 1.0 - fp.eps);
    return -fp.alpha * std::pow(1.0 - p, fp.gamma) * y * std::log(p) -
           (1.0 - fp.alpha) * std::pow(p, fp.gamma) * (1.0 - y) *
               std::log(1.0 - p);
}

double fn_penalty(double yhat, double y) { return y * (1.0 - yhat); }

double total_loss(double yhat, double y, const FocalParams& fp) {
    return focal_loss(yhat, y, fp) + fp.beta_fn * fn_penalty(yhat, y);
}

double total_loss_grad(double yhat, double y, const FocalParams& fp) {
    const double p = std::clamp(yhat, fp.eps, 1.0 - fp.eps);
    const double q = 1.0 - p;
    // d/dp of the positive term: -alpha y [ -gamma (1-p)^(g-1) log p
    //                                      + (1-p)^g / p ]
    const double pos =
        -fp.alpha * y *
        (-fp.gamma * std::pow(q, fp.gamma - 1.0) * std::log(p) +
         std::pow(q, fp.gamma) / p);
    // d/dp of the negative term: -(1-alpha)(1-y) [ gamma p^(g-1) log(1-p)
    //                                             - p^g / (1-p) ]
    const double neg =
        -(1.0 - fp.alpha) * (1.0 - y) *
        (fp.gamma * std::pow(p, fp.gamma - 1.0) * std::log(q) -
         std::pow(p, fp.gamma) / q);
    return pos + neg - fp.beta_fn * y;
}

} // namespace fundopt
