#include "fundopt/gp.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fundopt {

namespace {

Eigen::VectorXd lengthscales_for(const KernelSpec& spec, Eigen::Index dims) {
    if (spec.lengthscale.size() == dims) {
        return spec.lengthscale;
    }
    if (spec.lengthscale.size() == 1) {
        return Eigen::VectorXd::Constant(dims, spec.lengthscale[0]);
    }
    throw std::invalid_argument("kernel lengthscale dimension mismatch");
}

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec,
                              const Eigen::MatrixXd& inputs) {
    const Eigen::VectorXd ls = lengthscales_for(spec, inputs.cols());
    const Eigen::MatrixXd scaled =
        (inputs.array().rowwise() / ls.transpose().array()).matrix();
    const auto n = inputs.rows();
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = spec.signal_variance;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d2 = (scaled.row(i) - scaled.row(j)).squaredNorm();
            k(i, j) = k(j, i) = spec.signal_variance * std::exp(-0.5 * d2);
        }
    }
    return k;
}

struct Factorization {
    Eigen::MatrixXd chol;
    Eigen::VectorXd alpha;
    double jitter = 0.0;
    bool ok = false;
};

// Cholesky with escalating diagonal jitter. A factorization only counts as
// successful when its smallest pivot is resolvable against the matrix scale;
// otherwise a singular K can slip through with garbage weights.
Factorization factorize(const Eigen::MatrixXd& k, const Eigen::VectorXd& y,
                        double noise_variance) {
    Factorization f;
    const double scale = k.diagonal().maxCoeff() + noise_variance;
    const double jitters[] = {0.0,  1e-10, 1e-9, 1e-8,
                              1e-7, 1e-6};
    for (double jitter : jitters) {
        Eigen::MatrixXd kn = k;
        kn.diagonal().array() += noise_variance + jitter;
        const Eigen::LLT<Eigen::MatrixXd> llt(kn);
        if (llt.info() != Eigen::Success) {
            continue;
        }
        const Eigen::MatrixXd l = llt.matrixL();
        const double min_pivot = l.diagonal().minCoeff();
        if (!(min_pivot * min_pivot > 1e-12 * scale)) {
            continue;
        }
        const Eigen::VectorXd alpha = llt.solve(y);
        if (!alpha.allFinite()) {
            continue;
        }
        f.chol = l;
        f.alpha = alpha;
        f.jitter = jitter;
        f.ok = true;
        return f;
    }
    return f;
}

double lml_of(const Factorization& f, const Eigen::VectorXd& y) {
    const auto n = static_cast<double>(y.size());
    return -0.5 * y.dot(f.alpha) - f.chol.diagonal().array().log().sum() -
           0.5 * n * std::log(2.0 * std::numbers::pi);
}

} // namespace

double kernel_eval(const KernelSpec& spec, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& x2) {
    if (x.size() != x2.size()) {
        throw std::invalid_argument("kernel_eval: dimension mismatch");
    }
    const Eigen::VectorXd ls = lengthscales_for(spec, x.size());
    const double d2 = ((x - x2).array() / ls.array()).matrix().squaredNorm();
    return spec.signal_variance * std::exp(-0.5 * d2);
}

GpModel gp_fit(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets,
               const KernelSpec& spec, bool standardize_targets) {
    if (inputs.rows() == 0 || inputs.rows() != targets.size()) {
        throw std::invalid_argument("gp_fit: need >= 1 (point, target) pair");
    }

    GpModel m;
    m.inputs = inputs;
    m.kernel = spec;
    if (standardize_targets) {
        m.target_mean = targets.mean();
        const double var =
            (targets.array() - m.target_mean).square().sum() /
            static_cast<double>(targets.size());
        const double sd = std::sqrt(var);
        m.target_scale = sd > 0.0 ? sd : 1.0;
    }
    m.targets_std = (targets.array() - m.target_mean) / m.target_scale;

    const bool refine =
        spec.refine_lengthscale && spec.lengthscale.size() == 1;
    const double grid[] = {0.05, 0.1, 0.2, 0.4, 0.8};

    Factorization best;
    double best_lml = 0.0;
    if (refine) {
        for (double ls : grid) {
            KernelSpec trial = spec;
            trial.lengthscale = Eigen::VectorXd::Constant(1, ls);
            const Factorization f =
                factorize(kernel_matrix(trial, inputs), m.targets_std,
                          spec.noise_variance);
            if (!f.ok) {
                continue;
            }
            const double lml = lml_of(f, m.targets_std);
            if (!best.ok || lml > best_lml) {
                best = f;
                best_lml = lml;
                m.kernel = trial;
            }
        }
    } else {
        best = factorize(kernel_matrix(spec, inputs), m.targets_std,
                         spec.noise_variance);
    }

    if (!best.ok) {
        throw std::runtime_error("GP fit failed");
    }
    m.chol = std::move(best.chol);
    m.alpha = std::move(best.alpha);
    m.jitter = best.jitter;
    return m;
}

std::pair<double, double> gp_predict(const GpModel& m,
                                     const Eigen::VectorXd& x) {
    const auto n = m.inputs.rows();
    Eigen::VectorXd k_star(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k_star[i] = kernel_eval(m.kernel, m.inputs.row(i).transpose(), x);
    }
    const double mu_std = k_star.dot(m.alpha);
    const Eigen::VectorXd v =
        m.chol.triangularView<Eigen::Lower>().solve(k_star);
    const double var_std =
        std::max(0.0, m.kernel.signal_variance - v.squaredNorm());

    return {m.target_mean + m.target_scale * mu_std,
            m.target_scale * m.target_scale * var_std};
}

double log_marginal_likelihood(const GpModel& m) {
    const auto n = static_cast<double>(m.targets_std.size());
    return -0.5 * m.targets_std.dot(m.alpha) -
           m.chol.diagonal().array().log().sum() -
           0.5 * n * std::log(2.0 * std::numbers::pi);
}

namespace {

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

} // namespace

double expected_improvement(double mu, double sigma, double f_best,
                            double xi) {
    const double gain = mu - f_best - xi;
    if (sigma <= 0.0) {
        return std::max(0.0, gain);
    }
    const double z = gain / sigma;
    return gain * normal_cdf(z) + sigma * normal_pdf(z);
}

double ucb(double mu, double sigma, double kappa) {
    return mu + kappa * sigma;
}

} // namespace fundopt
