#pragma once

#include <limits>

#include "coremark/image.hpp"

namespace coremark {

// Returned by psnr() for identical images.
inline constexpr double kPsnrInfinite = std::numeric_limits<double>::infinity();

struct QualityMetrics {
  double psnr = kPsnrInfinite;
  double ssim = 1.0;
};

// Percentage of positions where the two bit sequences agree.
double accuracy(const Bits& extracted, const Bits& embedded);

// Both metrics work on the 8-bit expansion (black 0, white 255), peak 255.
double psnr(const BinaryImage& a, const BinaryImage& b);

// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), K1 = 0.01,
// K2 = 0.03, averaged over every window position that fits in the image.
double ssim(const BinaryImage& a, const BinaryImage& b);

QualityMetrics quality(const BinaryImage& original, const BinaryImage& marked);

}  // namespace coremark
