#pragma once

#include <Eigen/Core>

namespace fundopt {

struct SegLossWeights {
    double lambda_dice = 1.0;
    double lambda_ce = 1.0;
};

struct FocalParams {
    double alpha = 0.25;
    double gamma = 2.0;
    double beta_fn = 0.5;
    double eps = 1e-7;
};

/// 1 - 2*sum(p*g) / (sum(p) + sum(g)). Throws
/// std::invalid_argument("undefined Dice") when both vectors are all zero.
double dice_loss(const Eigen::ArrayXd& pred, const Eigen::ArrayXd& truth);

/// Mean binary cross-entropy with predictions clamped to [eps, 1-eps].
double cross_entropy_loss(const Eigen::ArrayXd& pred,
                          const Eigen::ArrayXd& truth, double eps = 1e-7);

double seg_loss(const Eigen::ArrayXd& pred, const Eigen::ArrayXd& truth,
                const SegLossWeights& weights);

/// -alpha (1-p)^gamma y log p - (1-alpha) p^gamma (1-y) log(1-p), with the
/// prediction clamped to [eps, 1-eps].
double focal_loss(double yhat, double y, const FocalParams& fp);

/// False-negative penalty y * (1 - yhat).
double fn_penalty(double yhat, double y);

/// focal_loss + beta_fn * fn_penalty.
double total_loss(double yhat, double y, const FocalParams& fp);

/// Analytic d(total_loss)/d(yhat), valid at interior points where the clamp
/// is inactive.
double total_loss_grad(double yhat, double y, const FocalParams& fp);

} // namespace fundopt
