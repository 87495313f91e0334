#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "coremark/image.hpp"

namespace coremark {

// Reads a 1-bit PBM (P4) or a PNG. PNGs are reduced to 8-bit gray and
// binarized at `png_threshold`.
BinaryImage load_image(const std::filesystem::path& path,
                       int png_threshold = 128);

// Always writes P4.
void save_image(const BinaryImage& img, const std::filesystem::path& path);

// P4 codec on memory buffers. PBM bit 1 is black, i.e. our pixel 0.
std::vector<std::uint8_t> encode_pbm(const BinaryImage& img);
BinaryImage decode_pbm(const std::vector<std::uint8_t>& bytes);

GrayImage decode_png(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_png(const GrayImage& img);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path,
                const std::vector<std::uint8_t>& bytes);

}  // namespace coremark
