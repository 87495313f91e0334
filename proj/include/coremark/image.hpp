#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace coremark {

using Pixel = std::uint8_t;
inline constexpr Pixel kBlack = 0;
inline constexpr Pixel kWhite = 1;

// Watermark bits, one per element, each 0 or 1.
using Bits = std::vector<std::uint8_t>;

// Half-open pixel rectangle [x, x + width) x [y, y + height).
struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  int right() const { return x + width; }
  int bottom() const { return y + height; }
  bool empty() const { return width <= 0 || height <= 0; }
  bool contains(const Rect& other) const {
    return other.x >= x && other.y >= y && other.right() <= right() &&
           other.bottom() <= bottom();
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

// Row-major bilevel raster. 0 is black ink, 1 is white paper.
class BinaryImage {
 public:
  BinaryImage() = default;
  BinaryImage(int width, int height, Pixel fill = kWhite);
  BinaryImage(int width, int height, std::vector<Pixel> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return pixels_.empty(); }

  Pixel at(int x, int y) const { return pixels_[index(x, y)]; }
  Pixel& at(int x, int y) { return pixels_[index(x, y)]; }
  // Out-of-bounds reads return white.
  Pixel get_or_white(int x, int y) const {
    return in_bounds(x, y) ? at(x, y) : kWhite;
  }
  bool in_bounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::span<const Pixel> row(int y) const {
    return {pixels_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::span<Pixel> row(int y) {
    return {pixels_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::vector<Pixel> column(int x) const;

  const std::vector<Pixel>& pixels() const { return pixels_; }

  BinaryImage crop(const Rect& r) const;
  void paste(const BinaryImage& src, int x, int y);
  BinaryImage transposed() const;
  BinaryImage padded(int border) const;

  std::size_t count_black() const;
  bool has_black() const;

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Pixel> pixels_;
};

class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 255);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return pixels_[index(x, y)]; }
  const std::vector<std::uint8_t>& pixels() const { return pixels_; }
  std::vector<std::uint8_t>& pixels() { return pixels_; }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// 0 -> 0, 1 -> 255.
GrayImage to_gray(const BinaryImage& img);

// Output pixel is black iff the input intensity is below `threshold`.
BinaryImage binarize(const GrayImage& img, int threshold = 128);

std::size_t hamming_distance(const BinaryImage& a, const BinaryImage& b);

}  // namespace coremark
