#pragma once

#include "fundopt/frangi.hpp"
#include "fundopt/image.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <utility>
#include <vector>

namespace fundopt {

/// Optic disc and cup masks of equal shape. cup within disc is not assumed;
/// violations are surfaced through FeatureRecord::cup_within_disc.
struct SegmentationMasks {
    BinaryMask disc;
    BinaryMask cup;
};

struct TextureFeatures {
    double contrast = 0.0;
    double dissimilarity = 0.0;
    double homogeneity = 0.0;
    double energy = 0.0;
    double correlation = 0.0;
    double angular_second_moment = 0.0;
};

/// Symmetric co-occurrence probabilities over quantized gray levels.
struct GlcmMatrix {
    int levels = 0;
    Eigen::MatrixXd probs;
};

enum class Laterality { right, left };

/// Neuroretinal rim pixel counts per quadrant.
struct IsntAreas {
    std::int64_t inferior = 0;
    std::int64_t superior = 0;
    std::int64_t nasal = 0;
    std::int64_t temporal = 0;
};

struct FeatureRecord {
    std::int64_t disc_area = 0;
    std::int64_t cup_area = 0;
    double cdr_area = 0.0;
    double cdr_vertical = 0.0;
    double cdr_horizontal = 0.0;
    std::int64_t nrr_area = 0;
    IsntAreas isnt;
    TextureFeatures texture;
    VesselSummary vessels;
    bool cup_within_disc = true;
};

std::int64_t mask_area(const BinaryMask& m);

/// Cup area / disc area. Throws std::invalid_argument("empty disc") when the
/// disc is empty.
double cdr_area(const SegmentationMasks& masks);

/// (vertical, horizontal) ratios of tight inclusive bounding-box extents.
/// An empty cup yields (0, 0).
std::pair<double, double> cdr_axes(const SegmentationMasks& masks);

/// max(0, disc area - cup area). Negative differences from bad segmentations
/// clamp to zero.
std::int64_t nrr_area(const SegmentationMasks& masks);

bool cup_within_disc(const SegmentationMasks& masks);

/// Partitions the rim pixels (disc and not cup) by angle from the disc
/// centroid, with quadrant boundaries at 45/135/225/315 degrees. Superior is
/// image-up. For a right eye the temporal quadrant is the image-left
/// half-plane; laterality flips nasal and temporal.
IsntAreas isnt_areas(const SegmentationMasks& masks, Laterality laterality);

/// Co-occurrence matrix over an ROI: intensities quantized to `levels`
/// uniform bins over [0, 255], pair counts accumulated over all offsets
/// (dy, dx) for pixel pairs both inside the ROI, symmetrized, normalized.
/// Throws std::invalid_argument("degenerate ROI") when no valid pair exists.
GlcmMatrix glcm_compute(const GrayImage& img, const BinaryMask& roi,
                        int levels,
                        const std::vector<std::pair<int, int>>& offsets);

/// Haralick metrics of a GLCM. Correlation of a zero-variance matrix is
/// defined as 1 (a constant ROI is perfectly correlated).
TextureFeatures glcm_features(const GlcmMatrix& g);

/// Default GLCM quantization and offset set used by extract_features.
inline constexpr int kGlcmDefaultLevels = 8;
const std::vector<std::pair<int, int>>& glcm_default_offsets();

/// Full per-eye feature vector. GLCM features are computed over the disc
/// ROI; vessel features over the whole image.
FeatureRecord extract_features(const GrayImage& img,
                               const SegmentationMasks& masks,
                               Laterality laterality,
                               const FrangiParams& frangi = {});

} // namespace fundopt
