#include "fundopt/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fundopt {

GrayImage rgb_to_gray(const RgbImage& img) {
    const auto luma = (0.299 * img.r.cast<double>() +
                       0.587 * img.g.cast<double>() +
                       0.114 * img.b.cast<double>())
                          .round()
                          .min(255.0)
                          .max(0.0);
    return luma.cast<std::uint8_t>();
}

Histogram256 compute_histogram(const GrayImage& img) {
    Histogram256 hist{};
    const std::uint8_t* data = img.data();
    const auto n = static_cast<std::size_t>(img.size());
    for (std::size_t i = 0; i < n; ++i) {
        ++hist[data[i]];
    }
    return hist;
}

int otsu_threshold(const Histogram256& hist) {
    std::uint64_t total = 0;
    std::uint64_t weighted_total = 0;
    for (int v = 0; v < 256; ++v) {
        total += hist[v];
        weighted_total += static_cast<std::uint64_t>(v) * hist[v];
    }
    if (total == 0) {
        throw std::invalid_argument("empty histogram");
    }

    // Between-class variance at split T, up to the constant 1/total^2:
    //   (s0*total - weighted_total*w0)^2 / (w0 * w1)
    // with w0, s0 the zeroth/first moments of bins [0, T]. The numerator is
    // an exact integer; the double conversion is deterministic, so the
    // lowest-tie rule is stable.
    int best_t = -1;
    double best_score = -1.0;
    std::uint64_t w0 = 0;
    std::uint64_t s0 = 0;
    for (int t = 0; t < 255; ++t) {
        w0 += hist[t];
        s0 += static_cast<std::uint64_t>(t) * hist[t];
        const std::uint64_t w1 = total - w0;
        if (w0 == 0 || w1 == 0) {
            continue;
        }
        const auto num = static_cast<double>(
            static_cast<__int128>(s0) * static_cast<__int128>(total) -
            static_cast<__int128>(weighted_total) * static_cast<__int128>(w0));
        const double score =
            num * num / (static_cast<double>(w0) * static_cast<double>(w1));
        if (score > best_score) {
            best_score = score;
            best_t = t;
        }
    }
    if (best_t < 0) {
        // All mass in one bin: no valid split, return the occupied bin.
        for (int v = 0; v < 256; ++v) {
            if (hist[v] > 0) {
                return v;
            }
        }
    }
    return best_t;
}

BinaryMask make_binary_mask(const GrayImage& img, int threshold) {
    return img.cast<int>() > threshold;
}

DiskGeometry estimate_center_radius(const BinaryMask& mask) {
    const auto rows = mask.rows();
    const auto cols = mask.cols();

    ImagePlane<bool> visited = ImagePlane<bool>::Constant(rows, cols, false);
    std::vector<Eigen::Index> stack;

    std::uint64_t best_area = 0;
    double best_sum_x = 0.0;
    double best_sum_y = 0.0;

    for (Eigen::Index y = 0; y < rows; ++y) {
        for (Eigen::Index x = 0; x < cols; ++x) {
            if (!mask(y, x) || visited(y, x)) {
                continue;
            }
            std::uint64_t area = 0;
            std::uint64_t sum_x = 0;
            std::uint64_t sum_y = 0;
            visited(y, x) = true;
            stack.push_back(y * cols + x);
            while (!stack.empty()) {
                const Eigen::Index idx = stack.back();
                stack.pop_back();
                const Eigen::Index cy = idx / cols;
                const Eigen::Index cx = idx % cols;
                ++area;
                sum_x += static_cast<std::uint64_t>(cx);
                sum_y += static_cast<std::uint64_t>(cy);
                const Eigen::Index ny[4] = {cy - 1, cy + 1, cy, cy};
                const Eigen::Index nx[4] = {cx, cx, cx - 1, cx + 1};
                for (int k = 0; k < 4; ++k) {
                    if (ny[k] < 0 || ny[k] >= rows || nx[k] < 0 ||
                        nx[k] >= cols) {
                        continue;
                    }
                    if (mask(ny[k], nx[k]) && !visited(ny[k], nx[k])) {
                        visited(ny[k], nx[k]) = true;
                        stack.push_back(ny[k] * cols + nx[k]);
                    }
                }
            }
            if (area > best_area) {
                best_area = area;
                best_sum_x = static_cast<double>(sum_x);
                best_sum_y = static_cast<double>(sum_y);
            }
        }
    }

    if (best_area == 0) {
        throw std::invalid_argument("no foreground");
    }

    DiskGeometry geom;
    geom.center_x = best_sum_x / static_cast<double>(best_area);
    geom.center_y = best_sum_y / static_cast<double>(best_area);
    geom.radius =
        std::sqrt(static_cast<double>(best_area) / std::numbers::pi);
    return geom;
}

namespace {

// Bilinear sample with pixel centers at integer coordinates; out-of-bounds
// neighbors contribute black.
double sample_bilinear(const ImagePlane<std::uint8_t>& plane, double x,
                       double y) {
    const auto rows = plane.rows();
    const auto cols = plane.cols();
    const auto x0 = static_cast<Eigen::Index>(std::floor(x));
    const auto y0 = static_cast<Eigen::Index>(std::floor(y));
    const double fx = x - static_cast<double>(x0);
    const double fy = y - static_cast<double>(y0);

    auto at = [&](Eigen::Index yy, Eigen::Index xx) -> double {
        if (yy < 0 || yy >= rows || xx < 0 || xx >= cols) {
            return 0.0;
        }
        return static_cast<double>(plane(yy, xx));
    };

    return (1.0 - fy) * ((1.0 - fx) * at(y0, x0) + fx * at(y0, x0 + 1)) +
           fy * ((1.0 - fx) * at(y0 + 1, x0) + fx * at(y0 + 1, x0 + 1));
}

std::uint8_t to_u8(double v) {
    return static_cast<std::uint8_t>(
        std::clamp(std::lround(v), 0L, 255L));
}

} // namespace

RgbImage crop_and_resize(const RgbImage& img, const DiskGeometry& geom,
                         int out_size) {
    if (out_size < 16) {
        throw std::invalid_argument("crop_and_resize: out_size must be >= 16");
    }
    if (geom.radius <= 0.0) {
        throw std::invalid_argument("crop_and_resize: radius must be > 0");
    }

    RgbImage out = RgbImage::zero(out_size, out_size);
    const double side = 2.0 * geom.radius;
    const double scale = side / static_cast<double>(out_size);
    const double left = geom.center_x - geom.radius;
    const double top = geom.center_y - geom.radius;

    for (int i = 0; i < out_size; ++i) {
        const double sy = top + (static_cast<double>(i) + 0.5) * scale;
        for (int j = 0; j < out_size; ++j) {
            const double sx = left + (static_cast<double>(j) + 0.5) * scale;
            out.r(i, j) = to_u8(sample_bilinear(img.r, sx, sy));
            out.g(i, j) = to_u8(sample_bilinear(img.g, sx, sy));
            out.b(i, j) = to_u8(sample_bilinear(img.b, sx, sy));
        }
    }
    return out;
}

RgbImage apply_circular_mask(const RgbImage& img) {
    if (img.width() != img.height()) {
        throw std::invalid_argument("apply_circular_mask: image must be square");
    }
    const auto side = img.width();
    const double c = (static_cast<double>(side) - 1.0) / 2.0;
    const double r2 =
        (static_cast<double>(side) / 2.0) * (static_cast<double>(side) / 2.0);

    RgbImage out = img;
    for (Eigen::Index y = 0; y < side; ++y) {
        for (Eigen::Index x = 0; x < side; ++x) {
            const double dx = static_cast<double>(x) - c;
            const double dy = static_cast<double>(y) - c;
            if (dx * dx + dy * dy > r2) {
                out.r(y, x) = 0;
                out.g(y, x) = 0;
                out.b(y, x) = 0;
            }
        }
    }
    return out;
}

RgbImage standardize(const RgbImage& img, int out_size) {
    const GrayImage gray = rgb_to_gray(img);
    const Histogram256 hist = compute_histogram(gray);
    const int threshold = otsu_threshold(hist);
    const BinaryMask mask = make_binary_mask(gray, threshold);
    if (mask.count() == 0) {
        throw std::invalid_argument("no foreground");
    }
    const DiskGeometry geom = estimate_center_radius(mask);
    const RgbImage cropped = crop_and_resize(img, geom, out_size);
    return apply_circular_mask(cropped);
}

} // namespace fundopt
