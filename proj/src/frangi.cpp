#include "fundopt/frangi.hpp"

#include "fundopt/imaging.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fundopt {

namespace {

// Sampled 1-D Gaussian and its derivatives, radius 3*sigma. The smoothing
// kernel is normalized to unit sum; the second-derivative kernel is shifted
// to an exactly zero sum so constant inputs map to zero response; the first
// derivative is kept exactly antisymmetric.
struct DerivativeKernels {
    std::vector<double> g, gx, gxx;
    int radius = 0;
};

DerivativeKernels sampled_kernels(double sigma) {
    DerivativeKernels k;
    k.radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    const int n = 2 * k.radius + 1;
    k.g.resize(n);
    k.gx.resize(n);
    k.gxx.resize(n);

    const double s2 = sigma * sigma;
    double sum_g = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i - k.radius);
        const double base = std::exp(-0.5 * t * t / s2) /
                            (std::sqrt(2.0 * std::numbers::pi) * sigma);
        k.g[i] = base;
        k.gx[i] = -t / s2 * base;
        k.gxx[i] = (t * t - s2) / (s2 * s2) * base;
        sum_g += base;
    }
    for (int i = 0; i < n; ++i) {
        k.g[i] /= sum_g;
    }
    // Exact antisymmetry for the first derivative.
    k.gx[k.radius] = 0.0;
    for (int i = 1; i <= k.radius; ++i) {
        k.gx[k.radius - i] = -k.gx[k.radius + i];
    }
    double sum_gxx = 0.0;
    for (double v : k.gxx) {
        sum_gxx += v;
    }
    for (double& v : k.gxx) {
        v -= sum_gxx / static_cast<double>(n);
    }
    return k;
}

inline Eigen::Index reflect(Eigen::Index i, Eigen::Index n) {
    while (i < 0 || i >= n) {
        if (i < 0) {
            i = -i - 1;
        }
        if (i >= n) {
            i = 2 * n - 1 - i;
        }
    }
    return i;
}

RealImage convolve_rows(const RealImage& src, const std::vector<double>& kern,
                        int radius) {
    RealImage out(src.rows(), src.cols());
    for (Eigen::Index y = 0; y < src.rows(); ++y) {
        for (Eigen::Index x = 0; x < src.cols(); ++x) {
            double acc = 0.0;
            for (int t = -radius; t <= radius; ++t) {
                acc += kern[t + radius] * src(y, reflect(x + t, src.cols()));
            }
            out(y, x) = acc;
        }
    }
    return out;
}

RealImage convolve_cols(const RealImage& src, const std::vector<double>& kern,
                        int radius) {
    RealImage out(src.rows(), src.cols());
    for (Eigen::Index y = 0; y < src.rows(); ++y) {
        for (Eigen::Index x = 0; x < src.cols(); ++x) {
            double acc = 0.0;
            for (int t = -radius; t <= radius; ++t) {
                acc += kern[t + radius] * src(reflect(y + t, src.rows()), x);
            }
            out(y, x) = acc;
        }
    }
    return out;
}

// Structureness below this is indistinguishable from rounding noise; the
// response there is pinned to zero so flat images stay identically zero.
constexpr double kStructurenessFloor = 1e-12;

} // namespace

HessianField hessian_at_scale(const GrayImage& img, double sigma) {
    if (sigma <= 0.0) {
        throw std::invalid_argument("hessian_at_scale: sigma must be > 0");
    }
    const RealImage real = img.cast<double>();
    const DerivativeKernels k = sampled_kernels(sigma);
    const double s2 = sigma * sigma;

    HessianField h;
    h.xx = s2 * convolve_cols(convolve_rows(real, k.gxx, k.radius), k.g,
                              k.radius);
    h.yy = s2 * convolve_cols(convolve_rows(real, k.g, k.radius), k.gxx,
                              k.radius);
    h.xy = s2 * convolve_cols(convolve_rows(real, k.gx, k.radius), k.gx,
                              k.radius);
    return h;
}

RealImage frangi_vesselness(const GrayImage& img, const FrangiParams& params) {
    if (params.beta <= 0.0) {
        throw std::invalid_argument("frangi_vesselness: beta must be > 0");
    }
    if (params.scales.empty()) {
        throw std::invalid_argument("frangi_vesselness: scales must be nonempty");
    }
    if (params.c && *params.c <= 0.0) {
        throw std::invalid_argument("frangi_vesselness: c must be > 0");
    }

    const double two_beta2 = 2.0 * params.beta * params.beta;
    RealImage result = RealImage::Zero(img.rows(), img.cols());
    RealImage lambda1(img.rows(), img.cols());
    RealImage lambda2(img.rows(), img.cols());

    for (double sigma : params.scales) {
        const HessianField h = hessian_at_scale(img, sigma);

        double max_s = 0.0;
        for (Eigen::Index y = 0; y < img.rows(); ++y) {
            for (Eigen::Index x = 0; x < img.cols(); ++x) {
                const double mean = 0.5 * (h.xx(y, x) + h.yy(y, x));
                const double diff = 0.5 * (h.xx(y, x) - h.yy(y, x));
                const double root =
                    std::sqrt(diff * diff + h.xy(y, x) * h.xy(y, x));
                double a = mean + root;
                double b = mean - root;
                if (std::abs(a) > std::abs(b)) {
                    std::swap(a, b);
                }
                lambda1(y, x) = a; // |lambda1| <= |lambda2|
                lambda2(y, x) = b;
                max_s = std::max(max_s, std::hypot(a, b));
            }
        }

        const double c = params.c ? *params.c : 0.5 * max_s;
        if (c <= 0.0) {
            continue; // flat at this scale
        }
        const double two_c2 = 2.0 * c * c;

        for (Eigen::Index y = 0; y < img.rows(); ++y) {
            for (Eigen::Index x = 0; x < img.cols(); ++x) {
                const double l2 = lambda2(y, x);
                if (l2 <= 0.0) {
                    continue; // keep only dark ridges on bright background
                }
                const double l1 = lambda1(y, x);
                const double s2 = l1 * l1 + l2 * l2;
                if (s2 < kStructurenessFloor * kStructurenessFloor) {
                    continue;
                }
                const double rb = l1 / l2;
                const double response = std::exp(-rb * rb / two_beta2) *
                                        (1.0 - std::exp(-s2 / two_c2));
                result(y, x) = std::max(result(y, x), response);
            }
        }
    }
    return result;
}

VesselSummary vessel_summary(const RealImage& vesselness,
                             const BinaryMask& roi) {
    if (vesselness.rows() != roi.rows() || vesselness.cols() != roi.cols()) {
        throw std::invalid_argument("vessel_summary: shape mismatch");
    }
    const auto count = roi.count();
    if (count == 0) {
        throw std::invalid_argument("empty roi");
    }

    double sum = 0.0;
    double max_v = 0.0;
    Histogram256 hist{};
    for (Eigen::Index y = 0; y < roi.rows(); ++y) {
        for (Eigen::Index x = 0; x < roi.cols(); ++x) {
            if (!roi(y, x)) {
                continue;
            }
            const double v = vesselness(y, x);
            sum += v;
            max_v = std::max(max_v, v);
            const int bin = std::min(255, static_cast<int>(v * 256.0));
            ++hist[bin];
        }
    }

    const int split = otsu_threshold(hist);
    std::uint64_t above = 0;
    for (int b = split + 1; b < 256; ++b) {
        above += hist[b];
    }

    VesselSummary summary;
    summary.mean_vesselness = sum / static_cast<double>(count);
    summary.max_vesselness = max_v;
    summary.vessel_density =
        static_cast<double>(above) / static_cast<double>(count);
    return summary;
}

} // namespace fundopt
