#include "coremark/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "coremark/error.hpp"

namespace coremark {

namespace {

bool starts_with(const std::vector<std::uint8_t>& bytes, const char* magic,
                 std::size_t n) {
  return bytes.size() >= n && std::memcmp(bytes.data(), magic, n) == 0;
}

// Netpbm header parsing: whitespace-separated tokens with '#' comments.
class HeaderReader {
 public:
  explicit HeaderReader(const std::vector<std::uint8_t>& bytes)
      : bytes_(bytes) {}

  int read_uint() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
      throw Error(ErrorCode::CorruptFile, "malformed PBM header");
    }
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (1L << 24)) {
        throw Error(ErrorCode::CorruptFile, "PBM dimension too large");
      }
      ++pos_;
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      throw Error(ErrorCode::CorruptFile, "missing raster separator");
    }
    return pos_ + 1;
  }

  void skip(std::size_t n) { pos_ += n; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path,
                const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorCode::IoError, "short write to " + path.string());
  }
}

std::vector<std::uint8_t> encode_pbm(const BinaryImage& img) {
  const std::string header = "P4\n" + std::to_string(img.width()) + " " +
                             std::to_string(img.height()) + "\n";
  const std::size_t stride = (static_cast<std::size_t>(img.width()) + 7) / 8;
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(out.size() + stride * img.height());
  for (int y = 0; y < img.height(); ++y) {
    auto row = img.row(y);
    for (std::size_t b = 0; b < stride; ++b) {
      std::uint8_t byte = 0;
      for (int bit = 0; bit < 8; ++bit) {
        const std::size_t x = b * 8 + bit;
        if (x < row.size() && row[x] == kBlack) byte |= 0x80 >> bit;
      }
      out.push_back(byte);
    }
  }
  return out;
}

BinaryImage decode_pbm(const std::vector<std::uint8_t>& bytes) {
  if (!starts_with(bytes, "P4", 2)) {
    throw Error(ErrorCode::UnsupportedFormat, "not a P4 PBM");
  }
  HeaderReader reader(bytes);
  reader.skip(2);
  const int width = reader.read_uint();
  const int height = reader.read_uint();
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::CorruptFile, "PBM has zero dimension");
  }
  const std::size_t offset = reader.raster_offset();
  const std::size_t stride = (static_cast<std::size_t>(width) + 7) / 8;
  if (bytes.size() < offset + stride * height) {
    throw Error(ErrorCode::CorruptFile, "PBM raster truncated");
  }
  std::vector<Pixel> px(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    const std::uint8_t* row = bytes.data() + offset + stride * y;
    for (int x = 0; x < width; ++x) {
      const bool ink = row[x / 8] & (0x80 >> (x % 8));
      px[static_cast<std::size_t>(y) * width + x] = ink ? kBlack : kWhite;
    }
  }
  return BinaryImage(width, height, std::move(px));
}

GrayImage decode_png(const std::vector<std::uint8_t>& bytes) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::CorruptFile,
                std::string("PNG header: ") + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> px(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, px.data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error(ErrorCode::CorruptFile,
                std::string("PNG data: ") + image.message);
  }
  return GrayImage(static_cast<int>(image.width),
                   static_cast<int>(image.height), std::move(px));
}

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0,
                                 img.pixels().data(), 0, nullptr)) {
    throw Error(ErrorCode::IoError, std::string("PNG encode: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0,
                                 img.pixels().data(), 0, nullptr)) {
    throw Error(ErrorCode::IoError, std::string("PNG encode: ") + image.message);
  }
  out.resize(size);
  return out;
}

BinaryImage load_image(const std::filesystem::path& path, int png_threshold) {
  const auto bytes = read_file(path);
  if (starts_with(bytes, "P4", 2)) return decode_pbm(bytes);
  if (starts_with(bytes, "\x89PNG", 4)) {
    return binarize(decode_png(bytes), png_threshold);
  }
  throw Error(ErrorCode::UnsupportedFormat,
              path.string() + " is neither P4 PBM nor PNG");
}

void save_image(const BinaryImage& img, const std::filesystem::path& path) {
  write_file(path, encode_pbm(img));
}

}  // namespace coremark
