#pragma once

#include "fundopt/image.hpp"

namespace fundopt {

/// Rec.601 luma: round(0.299 R + 0.587 G + 0.114 B), clamped to [0, 255].
GrayImage rgb_to_gray(const RgbImage& img);

Histogram256 compute_histogram(const GrayImage& img);

/// Otsu's threshold: the split T maximizing the between-class variance
/// w0*w1*(mu0-mu1)^2, where class 0 holds the pixels with intensity <= T.
/// Only splits with both classes nonempty are considered; ties resolve to
/// the lowest T. A histogram occupied in a single bin returns that bin.
/// Throws std::invalid_argument("empty histogram") on an all-zero histogram.
int otsu_threshold(const Histogram256& hist);

/// Foreground = intensity strictly greater than the threshold.
BinaryMask make_binary_mask(const GrayImage& img, int threshold);

/// Centroid of the largest 4-connected foreground component plus the
/// area-equivalent radius sqrt(area / pi). Equal-area components resolve to
/// the first in row-major scan order.
/// Throws std::invalid_argument("no foreground") on an empty mask.
DiskGeometry estimate_center_radius(const BinaryMask& mask);

/// Extracts the square window of side 2*radius centered on the disk and
/// bilinearly resamples it to out_size x out_size. Samples falling outside
/// the source image read as black.
RgbImage crop_and_resize(const RgbImage& img, const DiskGeometry& geom,
                         int out_size);

/// Blacks out pixels farther than side/2 from the center of a square image.
RgbImage apply_circular_mask(const RgbImage& img);

/// Full standardization pipeline: grayscale, histogram, Otsu threshold,
/// binary mask, disk estimation, crop-and-resize, circular mask.
RgbImage standardize(const RgbImage& img, int out_size = 512);

} // namespace fundopt
