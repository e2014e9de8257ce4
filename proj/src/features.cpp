#include "fundopt/features.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fundopt {

std::int64_t mask_area(const BinaryMask& m) {
    return static_cast<std::int64_t>(m.count());
}

double cdr_area(const SegmentationMasks& masks) {
    const std::int64_t disc = mask_area(masks.disc);
    if (disc == 0) {
        throw std::invalid_argument("empty disc");
    }
    return static_cast<double>(mask_area(masks.cup)) /
           static_cast<double>(disc);
}

namespace {

struct BoundingBox {
    Eigen::Index min_x = 0, max_x = -1, min_y = 0, max_y = -1;
    bool empty() const { return max_x < min_x; }
    double width() const {
        return static_cast<double>(max_x - min_x + 1);
    }
    double height() const {
        return static_cast<double>(max_y - min_y + 1);
    }
};

BoundingBox tight_bounds(const BinaryMask& m) {
    BoundingBox box;
    bool found = false;
    for (Eigen::Index y = 0; y < m.rows(); ++y) {
        for (Eigen::Index x = 0; x < m.cols(); ++x) {
            if (!m(y, x)) {
                continue;
            }
            if (!found) {
                box.min_x = box.max_x = x;
                box.min_y = box.max_y = y;
                found = true;
            } else {
                box.min_x = std::min(box.min_x, x);
                box.max_x = std::max(box.max_x, x);
                box.min_y = std::min(box.min_y, y);
                box.max_y = std::max(box.max_y, y);
            }
        }
    }
    return box;
}

} // namespace

std::pair<double, double> cdr_axes(const SegmentationMasks& masks) {
    const BoundingBox disc = tight_bounds(masks.disc);
    if (disc.empty()) {
        throw std::invalid_argument("empty disc");
    }
    const BoundingBox cup = tight_bounds(masks.cup);
    if (cup.empty()) {
        return {0.0, 0.0};
    }
    return {cup.height() / disc.height(), cup.width() / disc.width()};
}

std::int64_t nrr_area(const SegmentationMasks& masks) {
    return std::max<std::int64_t>(
        0, mask_area(masks.disc) - mask_area(masks.cup));
}

bool cup_within_disc(const SegmentationMasks& masks) {
    return !(masks.cup && !masks.disc).any();
}

IsntAreas isnt_areas(const SegmentationMasks& masks, Laterality laterality) {
    const std::int64_t disc = mask_area(masks.disc);
    if (disc == 0) {
        throw std::invalid_argument("empty disc");
    }

    // Disc centroid.
    double sum_x = 0.0;
    double sum_y = 0.0;
    for (Eigen::Index y = 0; y < masks.disc.rows(); ++y) {
        for (Eigen::Index x = 0; x < masks.disc.cols(); ++x) {
            if (masks.disc(y, x)) {
                sum_x += static_cast<double>(x);
                sum_y += static_cast<double>(y);
            }
        }
    }
    const double cx = sum_x / static_cast<double>(disc);
    const double cy = sum_y / static_cast<double>(disc);

    std::int64_t up = 0, down = 0, image_left = 0, image_right = 0;
    for (Eigen::Index y = 0; y < masks.disc.rows(); ++y) {
        for (Eigen::Index x = 0; x < masks.disc.cols(); ++x) {
            if (!masks.disc(y, x) || masks.cup(y, x)) {
                continue;
            }
            const double dx = static_cast<double>(x) - cx;
            // Rows grow downward; flip so positive dy points up.
            const double dy = cy - static_cast<double>(y);
            const double deg =
                std::atan2(dy, dx) * 180.0 / std::numbers::pi;
            if (deg >= 45.0 && deg < 135.0) {
                ++up;
            } else if (deg >= -135.0 && deg < -45.0) {
                ++down;
            } else if (deg >= -45.0 && deg < 45.0) {
                ++image_right;
            } else {
                ++image_left;
            }
        }
    }

    IsntAreas areas;
    areas.superior = up;
    areas.inferior = down;
    if (laterality == Laterality::right) {
        areas.temporal = image_left;
        areas.nasal = image_right;
    } else {
        areas.temporal = image_right;
        areas.nasal = image_left;
    }
    return areas;
}

GlcmMatrix glcm_compute(const GrayImage& img, const BinaryMask& roi,
                        int levels,
                        const std::vector<std::pair<int, int>>& offsets) {
    if (levels < 2) {
        throw std::invalid_argument("glcm_compute: levels must be >= 2");
    }
    if (offsets.empty()) {
        throw std::invalid_argument("glcm_compute: offsets must be nonempty");
    }
    if (img.rows() != roi.rows() || img.cols() != roi.cols()) {
        throw std::invalid_argument("glcm_compute: image/roi shape mismatch");
    }

    auto quantize = [levels](std::uint8_t v) {
        return static_cast<int>(static_cast<int>(v) * levels / 256);
    };

    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(levels, levels);
    double total = 0.0;
    for (const auto& [dy, dx] : offsets) {
        for (Eigen::Index y = 0; y < img.rows(); ++y) {
            const Eigen::Index y2 = y + dy;
            if (y2 < 0 || y2 >= img.rows()) {
                continue;
            }
            for (Eigen::Index x = 0; x < img.cols(); ++x) {
                const Eigen::Index x2 = x + dx;
                if (x2 < 0 || x2 >= img.cols()) {
                    continue;
                }
                if (!roi(y, x) || !roi(y2, x2)) {
                    continue;
                }
                const int a = quantize(img(y, x));
                const int b = quantize(img(y2, x2));
                counts(a, b) += 1.0;
                counts(b, a) += 1.0;
                total += 2.0;
            }
        }
    }
    if (total == 0.0) {
        throw std::invalid_argument("degenerate ROI");
    }

    GlcmMatrix g;
    g.levels = levels;
    g.probs = counts / total;
    return g;
}

TextureFeatures glcm_features(const GlcmMatrix& g) {
    const int n = g.levels;
    const Eigen::MatrixXd& p = g.probs;

    TextureFeatures f;
    double mu_i = 0.0, mu_j = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double pij = p(i, j);
            const double d = static_cast<double>(i - j);
            f.contrast += pij * d * d;
            f.dissimilarity += pij * std::abs(d);
            f.homogeneity += pij / (1.0 + d * d);
            f.angular_second_moment += pij * pij;
            mu_i += pij * i;
            mu_j += pij * j;
        }
    }
    f.energy = std::sqrt(f.angular_second_moment);

    double var_i = 0.0, var_j = 0.0, cov = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double pij = p(i, j);
            var_i += pij * (i - mu_i) * (i - mu_i);
            var_j += pij * (j - mu_j) * (j - mu_j);
            cov += pij * (i - mu_i) * (j - mu_j);
        }
    }
    const double denom = std::sqrt(var_i) * std::sqrt(var_j);
    f.correlation = denom > 0.0 ? cov / denom : 1.0;
    return f;
}

const std::vector<std::pair<int, int>>& glcm_default_offsets() {
    static const std::vector<std::pair<int, int>> offsets = {
        {0, 1}, {1, 0}, {1, 1}, {1, -1}};
    return offsets;
}

FeatureRecord extract_features(const GrayImage& img,
                               const SegmentationMasks& masks,
                               Laterality laterality,
                               const FrangiParams& frangi) {
    if (mask_area(masks.disc) == 0) {
        throw std::invalid_argument("empty disc");
    }

    FeatureRecord rec;
    rec.disc_area = mask_area(masks.disc);
    rec.cup_area = mask_area(masks.cup);
    rec.cdr_area = cdr_area(masks);
    std::tie(rec.cdr_vertical, rec.cdr_horizontal) = cdr_axes(masks);
    rec.nrr_area = nrr_area(masks);
    rec.isnt = isnt_areas(masks, laterality);
    rec.cup_within_disc = cup_within_disc(masks);

    rec.texture = glcm_features(glcm_compute(
        img, masks.disc, kGlcmDefaultLevels, glcm_default_offsets()));

    const RealImage vesselness = frangi_vesselness(img, frangi);
    const BinaryMask full_roi =
        BinaryMask::Constant(img.rows(), img.cols(), true);
    rec.vessels = vessel_summary(vesselness, full_roi);
    return rec;
}

} // namespace fundopt
