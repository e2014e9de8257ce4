#pragma once

#include <Eigen/Core>

namespace fundopt {

/// Squared-exponential kernel over normalized inputs. The lengthscale is a
/// scalar (size-1 vector) or one entry per normalized coordinate.
struct KernelSpec {
    Eigen::VectorXd lengthscale = Eigen::VectorXd::Constant(1, 0.2);
    double signal_variance = 1.0;
    double noise_variance = 1e-6;
    /// Re-select the scalar lengthscale from {0.05, 0.1, 0.2, 0.4, 0.8} by
    /// log marginal likelihood at each fit.
    bool refine_lengthscale = true;
};

/// k(x, x') = signal_variance * exp(-1/2 sum((x_d - x'_d) / l_d)^2).
/// Throws std::invalid_argument on dimension mismatch.
double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& x2);

/// Exact GP posterior state: Cholesky factor of K + noise*I plus solved
/// weights, with target standardization constants for de-standardized
/// prediction.
struct GpModel {
    Eigen::MatrixXd inputs;       ///< n x d, normalized points
    Eigen::VectorXd targets_std;  ///< standardized targets
    KernelSpec kernel;            ///< kernel actually used (post-refinement)
    Eigen::MatrixXd chol;         ///< lower-triangular L, L L^T = K + s I
    Eigen::VectorXd alpha;        ///< (K + s I)^{-1} targets_std
    double target_mean = 0.0;
    double target_scale = 1.0;
    double jitter = 0.0;          ///< diagonal jitter added to factorize
};

/// Fits the exact GP. Targets are z-scored unless standardize_targets is
/// false (a constant target vector keeps scale 1). Factorization retries
/// with escalating jitter 1e-10 .. 1e-6 and then throws
/// std::runtime_error("GP fit failed").
GpModel gp_fit(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
               const KernelSpec& spec, bool standardize_targets = true);

/// Posterior (mean, variance) at a point, de-standardized; the variance is
/// clamped at zero.
std::pair<double, double> gp_predict(const GpModel& m,
                                     const Eigen::VectorXd& x);

/// Log marginal likelihood of the fitted model (standardized targets).
double log_marginal_likelihood(const GpModel& m);

/// EI under maximization: (mu - f_best - xi) Phi(z) + sigma phi(z) with
/// z = (mu - f_best - xi) / sigma; at sigma = 0 this is the hinge
/// max(0, mu - f_best - xi).
double expected_improvement(double mu, double sigma, double f_best,
                            double xi);

/// mu + kappa * sigma.
double ucb(double mu, double sigma, double kappa);

} // namespace fundopt
