#include "coremark/image.hpp"

#include <algorithm>
#include <string>

#include "coremark/error.hpp"

namespace coremark {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "image dimensions must be positive, got " +
                    std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

BinaryImage::BinaryImage(int width, int height, Pixel fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * height,
                 fill == kBlack ? kBlack : kWhite);
}

BinaryImage::BinaryImage(int width, int height, std::vector<Pixel> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::DimensionMismatch,
                "pixel count does not match width x height");
  }
  for (Pixel p : pixels_) {
    if (p > 1) {
      throw Error(ErrorCode::InvalidArgument, "binary pixels must be 0 or 1");
    }
  }
}

std::vector<Pixel> BinaryImage::column(int x) const {
  std::vector<Pixel> col(height_);
  for (int y = 0; y < height_; ++y) col[y] = at(x, y);
  return col;
}

BinaryImage BinaryImage::crop(const Rect& r) const {
  if (r.empty() || r.x < 0 || r.y < 0 || r.right() > width_ ||
      r.bottom() > height_) {
    throw Error(ErrorCode::OutOfBounds, "crop rectangle outside image");
  }
  BinaryImage out(r.width, r.height);
  for (int y = 0; y < r.height; ++y) {
    auto src = row(r.y + y).subspan(r.x, r.width);
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

void BinaryImage::paste(const BinaryImage& src, int x, int y) {
  for (int sy = 0; sy < src.height(); ++sy) {
    for (int sx = 0; sx < src.width(); ++sx) {
      if (in_bounds(x + sx, y + sy)) at(x + sx, y + sy) = src.at(sx, sy);
    }
  }
}

BinaryImage BinaryImage::transposed() const {
  BinaryImage out(height_, width_);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) out.at(y, x) = at(x, y);
  }
  return out;
}

BinaryImage BinaryImage::padded(int border) const {
  BinaryImage out(width_ + 2 * border, height_ + 2 * border);
  out.paste(*this, border, border);
  return out;
}

std::size_t BinaryImage::count_black() const {
  return static_cast<std::size_t>(
      std::count(pixels_.begin(), pixels_.end(), kBlack));
}

bool BinaryImage::has_black() const {
  return std::find(pixels_.begin(), pixels_.end(), kBlack) != pixels_.end();
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(ErrorCode::DimensionMismatch,
                "pixel count does not match width x height");
  }
}

GrayImage to_gray(const BinaryImage& img) {
  std::vector<std::uint8_t> px(img.pixels().size());
  std::transform(img.pixels().begin(), img.pixels().end(), px.begin(),
                 [](Pixel p) -> std::uint8_t { return p == kBlack ? 0 : 255; });
  return GrayImage(img.width(), img.height(), std::move(px));
}

BinaryImage binarize(const GrayImage& img, int threshold) {
  std::vector<Pixel> px(img.pixels().size());
  std::transform(img.pixels().begin(), img.pixels().end(), px.begin(),
                 [threshold](std::uint8_t v) -> Pixel {
                   return v < threshold ? kBlack : kWhite;
                 });
  return BinaryImage(img.width(), img.height(), std::move(px));
}

std::size_t hamming_distance(const BinaryImage& a, const BinaryImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw Error(ErrorCode::DimensionMismatch, "images differ in size");
  }
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.pixels().size(); ++i) {
    n += a.pixels()[i] != b.pixels()[i];
  }
  return n;
}

}  // namespace coremark
