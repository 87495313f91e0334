#include "coremark/metrics.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "coremark/error.hpp"

namespace coremark {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kPeak = 255.0;
constexpr double kC1 = (0.01 * kPeak) * (0.01 * kPeak);
constexpr double kC2 = (0.03 * kPeak) * (0.03 * kPeak);
// Window top-left positions are processed in tiles of this size; tiles whose
// footprint holds no differing pixel contribute exactly 1 per window.
constexpr int kTile = 32;

void check_same_size(const BinaryImage& a, const BinaryImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::DimensionMismatch, "images differ in size");
  }
}

std::array<double, kWindow> gaussian_taps() {
  std::array<double, kWindow> taps{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    const double d = i - kWindow / 2;
    taps[i] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// Sum of per-window SSIM over window origins [x0, x0 + nx) x [y0, y0 + ny).
double ssim_tile(const BinaryImage& a, const BinaryImage& b,
                 const std::array<double, kWindow>& taps, int x0, int y0,
                 int nx, int ny) {
  const int fh = ny + kWindow - 1;
  // Horizontal pass over the footprint: mu_a, mu_b, a^2, b^2, ab.
  std::vector<std::array<double, 5>> horiz(static_cast<std::size_t>(nx) * fh);
  for (int y = 0; y < fh; ++y) {
    for (int x = 0; x < nx; ++x) {
      std::array<double, 5> acc{};
      for (int k = 0; k < kWindow; ++k) {
        const double va = a.at(x0 + x + k, y0 + y) * kPeak;
        const double vb = b.at(x0 + x + k, y0 + y) * kPeak;
        const double t = taps[k];
        acc[0] += t * va;
        acc[1] += t * vb;
        acc[2] += t * va * va;
        acc[3] += t * vb * vb;
        acc[4] += t * va * vb;
      }
      horiz[static_cast<std::size_t>(y) * nx + x] = acc;
    }
  }
  double total = 0.0;
  for (int y = 0; y < ny; ++y) {
    for (int x = 0; x < nx; ++x) {
      std::array<double, 5> m{};
      for (int k = 0; k < kWindow; ++k) {
        const auto& h = horiz[static_cast<std::size_t>(y + k) * nx + x];
        for (int c = 0; c < 5; ++c) m[c] += taps[k] * h[c];
      }
      const double mu_a = m[0];
      const double mu_b = m[1];
      const double var_a = m[2] - mu_a * mu_a;
      const double var_b = m[3] - mu_b * mu_b;
      const double cov = m[4] - mu_a * mu_b;
      total += ((2 * mu_a * mu_b + kC1) * (2 * cov + kC2)) /
               ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
    }
  }
  return total;
}

}  // namespace

double accuracy(const Bits& extracted, const Bits& embedded) {
  if (extracted.size() != embedded.size() || embedded.empty()) {
    throw Error(ErrorCode::LengthMismatch,
                "accuracy needs equal, non-empty sequences (" +
                    std::to_string(extracted.size()) + " vs " +
                    std::to_string(embedded.size()) + ")");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < embedded.size(); ++i) {
    correct += extracted[i] == embedded[i];
  }
  return 100.0 * static_cast<double>(correct) /
         static_cast<double>(embedded.size());
}

double psnr(const BinaryImage& a, const BinaryImage& b) {
  check_same_size(a, b);
  const std::size_t diff = hamming_distance(a, b);
  if (diff == 0) return kPsnrInfinite;
  // Every differing pixel contributes 255^2 to the squared error.
  const double mse = kPeak * kPeak * static_cast<double>(diff) /
                     static_cast<double>(a.pixels().size());
  return 10.0 * std::log10(kPeak * kPeak / mse);
}

double ssim(const BinaryImage& a, const BinaryImage& b) {
  check_same_size(a, b);
  if (a.width() < kWindow || a.height() < kWindow) {
    throw Error(ErrorCode::ImageTooSmall, "SSIM needs both sides >= 11 px");
  }
  const int nx = a.width() - kWindow + 1;
  const int ny = a.height() - kWindow + 1;

  // Prefix sums of the difference mask for constant-time dirty checks.
  const int w = a.width();
  std::vector<int> prefix(static_cast<std::size_t>(w + 1) * (a.height() + 1), 0);
  auto P = [&](int x, int y) -> int& {
    return prefix[static_cast<std::size_t>(y) * (w + 1) + x];
  };
  for (int y = 0; y < a.height(); ++y) {
    int row_sum = 0;
    for (int x = 0; x < w; ++x) {
      row_sum += a.at(x, y) != b.at(x, y);
      P(x + 1, y + 1) = P(x + 1, y) + row_sum;
    }
  }
  auto diffs_in = [&](int x0, int y0, int x1, int y1) {
    return P(x1, y1) - P(x0, y1) - P(x1, y0) + P(x0, y0);
  };

  const auto taps = gaussian_taps();
  double total = 0.0;
  for (int ty = 0; ty < ny; ty += kTile) {
    const int th = std::min(kTile, ny - ty);
    for (int tx = 0; tx < nx; tx += kTile) {
      const int tw = std::min(kTile, nx - tx);
      if (diffs_in(tx, ty, tx + tw + kWindow - 1, ty + th + kWindow - 1) == 0) {
        total += static_cast<double>(tw) * th;
      } else {
        total += ssim_tile(a, b, taps, tx, ty, tw, th);
      }
    }
  }
  return total / (static_cast<double>(nx) * ny);
}

QualityMetrics quality(const BinaryImage& original, const BinaryImage& marked) {
  return {psnr(original, marked), ssim(original, marked)};
}

}  // namespace coremark
