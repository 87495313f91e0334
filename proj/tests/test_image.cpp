#include <filesystem>
#include <random>

#include "coremark/image_io.hpp"
#include "test_util.hpp"

using namespace coremark;

TEST(Pbm, DecodesTwoPixels) {
  const std::string file = "P4\n2 1\n\x80";
  const BinaryImage img = decode_pbm({file.begin(), file.end()});
  ASSERT_EQ(img.width(), 2);
  EXPECT_EQ(img.pixels(), (std::vector<Pixel>{kBlack, kWhite}));
}

TEST(Pbm, EncodesSingleBlackPixel) {
  const auto bytes = encode_pbm(BinaryImage(1, 1, kBlack));
  const std::string header = "P4\n1 1\n";
  ASSERT_EQ(bytes.size(), header.size() + 1);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + header.size()), header);
  EXPECT_EQ(bytes.back(), 0x80);
}

TEST(Pbm, WhiteRowsArePaddedZeroBits) {
  const auto bytes = encode_pbm(BinaryImage(3, 3));
  ASSERT_EQ(bytes.size(), std::string("P4\n3 3\n").size() + 3);
  for (std::size_t i = bytes.size() - 3; i < bytes.size(); ++i) EXPECT_EQ(bytes[i], 0);
}

TEST(Pbm, RoundTripsRandomImages) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const int w = 1 + static_cast<int>(rng() % 64);
    const int h = 1 + static_cast<int>(rng() % 64);
    BinaryImage img(w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) img.at(x, y) = static_cast<Pixel>(rng() & 1);
    EXPECT_EQ(decode_pbm(encode_pbm(img)), img) << "seed " << seed;
  }
}

TEST(Pbm, ToleratesCommentsInHeader) {
  const std::string file = "P4\n# made by hand\n2 1\n\x40";
  const BinaryImage img = decode_pbm({file.begin(), file.end()});
  EXPECT_EQ(img.pixels(), (std::vector<Pixel>{kWhite, kBlack}));
}

TEST(Pbm, RejectsTruncatedAndForeignData) {
  const std::string truncated = "P4\n16 2\n\xff";
  EXPECT_CODE(decode_pbm({truncated.begin(), truncated.end()}), ErrorCode::CorruptFile);
  const std::string ascii = "P1\n1 1\n1";
  EXPECT_CODE(decode_pbm({ascii.begin(), ascii.end()}), ErrorCode::UnsupportedFormat);
}

TEST(Png, WhitePngLoadsAllWhite) {
  const auto path = std::filesystem::temp_directory_path() / "coremark_white.png";
  write_file(path, encode_png(GrayImage(8, 8, 255)));
  const BinaryImage img = load_image(path);
  EXPECT_EQ(img, BinaryImage(8, 8, kWhite));
  std::filesystem::remove(path);
}

TEST(Png, GrayRoundTrip) {
  GrayImage g(5, 3);
  for (int i = 0; i < 15; ++i) g.pixels()[i] = static_cast<std::uint8_t>(i * 17);
  const GrayImage back = decode_png(encode_png(g));
  EXPECT_EQ(back.pixels(), g.pixels());
}

TEST(Io, MissingFileIsIoError) {
  EXPECT_CODE(load_image("/nonexistent/page.pbm"), ErrorCode::IoError);
}

TEST(Binarize, ThresholdDefinition) {
  GrayImage g(2, 1);
  g.at(0, 0) = 0;
  g.at(1, 0) = 200;
  EXPECT_EQ(binarize(g, 128).pixels(), (std::vector<Pixel>{kBlack, kWhite}));
}

TEST(Binarize, FixedPointOfGrayExpansion) {
  std::mt19937_64 rng(3);
  std::vector<Pixel> px(17 * 9);
  for (auto& p : px) p = rng() & 1;
  const BinaryImage b(17, 9, px);
  for (int t = 1; t < 256; t += 7) EXPECT_EQ(binarize(to_gray(b), t), b) << t;
}

TEST(Image, TransposeCropPaste) {
  const BinaryImage a = testutil::art({"#..", "##."});
  const BinaryImage t = a.transposed();
  EXPECT_EQ(t, testutil::art({"##", ".#", ".."}));
  EXPECT_EQ(t.transposed(), a);
  EXPECT_EQ(a.crop({1, 0, 2, 2}), testutil::art({"..", "#."}));
  BinaryImage c(4, 3);
  c.paste(a, 1, 1);
  EXPECT_EQ(c.crop({1, 1, 3, 2}), a);
  EXPECT_EQ(a.count_black(), 3u);
  EXPECT_EQ(hamming_distance(a, BinaryImage(3, 2)), 3u);
}
