#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>

namespace fundopt {

/// Row-major 2-D raster plane. Row index = y (top to bottom), column = x.
template <class Scalar>
using ImagePlane =
    Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using GrayImage = ImagePlane<std::uint8_t>;
using BinaryMask = ImagePlane<bool>;
using RealImage = ImagePlane<double>;

/// 8-bit color image as three channel planes of identical shape.
struct RgbImage {
    ImagePlane<std::uint8_t> r, g, b;

    Eigen::Index height() const { return r.rows(); }
    Eigen::Index width() const { return r.cols(); }

    static RgbImage zero(Eigen::Index height, Eigen::Index width) {
        RgbImage img;
        img.r.setZero(height, width);
        img.g.setZero(height, width);
        img.b.setZero(height, width);
        return img;
    }

    static RgbImage constant(Eigen::Index height, Eigen::Index width,
                             std::uint8_t red, std::uint8_t green,
                             std::uint8_t blue) {
        RgbImage img;
        img.r.setConstant(height, width, red);
        img.g.setConstant(height, width, green);
        img.b.setConstant(height, width, blue);
        return img;
    }
};

using Histogram256 = std::array<std::uint64_t, 256>;

/// Disk estimate from a foreground mask: fractional center plus
/// area-equivalent radius, both in pixel units.
struct DiskGeometry {
    double center_x = 0.0;
    double center_y = 0.0;
    double radius = 0.0;
};

} // namespace fundopt
