#pragma once

#include "fundopt/image.hpp"

#include <optional>
#include <vector>

namespace fundopt {

struct FrangiParams {
    double beta = 0.5;
    /// Structureness scale; unset means auto (half the maximum structureness
    /// per scale).
    std::optional<double> c;
    std::vector<double> scales = {1.0, 2.0, 4.0, 8.0};
};

/// Per-pixel symmetric 2x2 second-derivative fields at one scale.
struct HessianField {
    RealImage xx, xy, yy;
};

/// Scale-normalized (sigma^2 d^2) Gaussian second derivatives via sampled
/// separable kernels with reflected borders.
HessianField hessian_at_scale(const GrayImage& img, double sigma);

/// Multi-scale ridge response in [0, 1]. Per scale, with Hessian eigenvalues
/// |l1| <= |l2|: response = exp(-(l1/l2)^2 / 2 beta^2) *
/// (1 - exp(-(l1^2 + l2^2) / 2 c^2)) where l2 > 0 (dark ridges on a bright
/// background), else 0; the map is the maximum over scales.
RealImage frangi_vesselness(const GrayImage& img, const FrangiParams& params);

struct VesselSummary {
    double mean_vesselness = 0.0;
    double max_vesselness = 0.0;
    /// Fraction of ROI pixels above an Otsu split of the vesselness map.
    double vessel_density = 0.0;
};

/// Aggregates a vesselness map over an ROI. Throws
/// std::invalid_argument("empty roi") when the ROI has no pixels.
VesselSummary vessel_summary(const RealImage& vesselness,
                             const BinaryMask& roi);

} // namespace fundopt
