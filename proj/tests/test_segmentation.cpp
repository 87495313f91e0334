#include <random>

#include "coremark/corpus.hpp"
#include "coremark/segmentation.hpp"
#include "test_util.hpp"

using namespace coremark;
using testutil::fill;

TEST(Lines, TwoBands) {
  BinaryImage page(20, 12);
  fill(page, 2, 1, 10, 3);
  fill(page, 4, 6, 5, 4);
  const auto lines = segment_lines(page);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].rect, (Rect{2, 1, 10, 3}));
  EXPECT_EQ(lines[1].rect, (Rect{4, 6, 5, 4}));
}

TEST(Lines, BlankPage) {
  EXPECT_CODE(segment_lines(BinaryImage(8, 8)), ErrorCode::NoTextFound);
}

TEST(Lines, SingleGlyphIsItsBoundingBox) {
  BinaryImage page(30, 30);
  page.paste(builtin_glyphs().render('A', 1), 7, 9);
  const auto lines = segment_lines(page);
  ASSERT_EQ(lines.size(), 1u);
  const BinaryImage a = builtin_glyphs().render('A', 1);
  EXPECT_EQ(lines[0].rect, (Rect{7, 9, a.width(), a.height()}));
}

TEST(Chars, TwoSquares) {
  BinaryImage page(16, 8);
  fill(page, 2, 2, 4, 4);
  fill(page, 9, 2, 4, 4);
  const auto lines = segment_lines(page);
  ASSERT_EQ(lines.size(), 1u);
  const auto chars = segment_chars(page, lines[0]);
  ASSERT_EQ(chars.size(), 2u);
  EXPECT_EQ(chars[0].rect, (Rect{2, 2, 4, 4}));
  EXPECT_EQ(chars[1].rect, (Rect{9, 2, 4, 4}));
  EXPECT_EQ(chars[1].char_index, 1);
}

TEST(Chars, BoxesAreTightenedVertically) {
  BinaryImage page(16, 10);
  fill(page, 1, 1, 3, 8);
  fill(page, 6, 5, 3, 4);
  const auto lines = segment_lines(page);
  const auto chars = segment_chars(page, lines[0]);
  ASSERT_EQ(chars.size(), 2u);
  EXPECT_EQ(chars[1].rect, (Rect{6, 5, 3, 4}));
}

TEST(Chars, ConnectedGlyphIsOneBox) {
  BinaryImage page(20, 20);
  page.paste(builtin_glyphs().render('W', 1), 3, 3);
  EXPECT_EQ(segment_chars(page, segment_lines(page)[0]).size(), 1u);
}

TEST(Despeckle, RemovesSmallBlackAndFillsPinholes) {
  BinaryImage page(30, 30);
  fill(page, 5, 5, 12, 12);
  page.at(10, 10) = kWhite;  // pinhole inside the block
  page.at(25, 25) = kBlack;  // isolated speck
  const BinaryImage clean = despeckle(page, 8);
  EXPECT_EQ(clean.at(10, 10), kBlack);
  EXPECT_EQ(clean.at(25, 25), kWhite);
  EXPECT_EQ(clean.count_black(), 144u);
  EXPECT_EQ(despeckle(page, 0), page);
}

TEST(Despeckle, KeepsGlyphCounters) {
  for (char c : std::string("ABDOPQR048")) {
    BinaryImage page(40, 40);
    page.paste(builtin_glyphs().render(c, 1), 10, 10);
    EXPECT_EQ(despeckle(page, 8), page) << c;
  }
}

TEST(Despeckle, WhiteTouchingBorderStays) {
  BinaryImage page(6, 6, kBlack);
  page.at(0, 3) = kWhite;
  EXPECT_EQ(despeckle(page, 8).at(0, 3), kWhite);
}

TEST(SubLines, NineEqualSpans) {
  LineBox line{0, {0, 0, 90, 10}, {}};
  const auto subs = split_sublines(line, 9);
  ASSERT_EQ(subs.size(), 9u);
  for (int i = 0; i < 9; ++i) {
    EXPECT_EQ(subs[i].x_begin, 10 * i);
    EXPECT_EQ(subs[i].x_end, 10 * i + 10);
  }
}

TEST(SubLines, StraddlingCharIsIncompleteEverywhere) {
  LineBox line{0, {0, 0, 90, 10}, {}};
  line.chars.push_back({0, 0, {2, 0, 6, 10}});
  line.chars.push_back({0, 1, {8, 0, 5, 10}});  // crosses x = 10
  const auto subs = split_sublines(line, 9);
  EXPECT_EQ(subs[0].complete_chars.size(), 1u);
  for (const auto& s : subs) {
    for (const auto& c : s.complete_chars) EXPECT_NE(c.char_index, 1);
  }
}

TEST(SubLines, SingleSpanHoldsEverything) {
  LineBox line{0, {0, 0, 50, 10}, {}};
  for (int i = 0; i < 5; ++i) line.chars.push_back({0, i, {i * 10, 0, 8, 10}});
  EXPECT_EQ(split_sublines(line, 1)[0].complete_chars.size(), 5u);
}

TEST(SubLines, Errors) {
  LineBox line{0, {0, 0, 5, 10}, {}};
  EXPECT_CODE(split_sublines(line, 9), ErrorCode::LineTooNarrow);
  EXPECT_CODE(split_sublines(line, 0), ErrorCode::InvalidArgument);
}

TEST(Segment, CorpusPagesMatchGroundTruth) {
  for (int scale : {1, 2, 3}) {
    CorpusSpec spec;
    spec.n_pages = 3;
    spec.scale = scale;
    for (const RenderedPage& p : generate_corpus(spec)) {
      const SegmentedPage s = segment_page(p.image);
      EXPECT_EQ(s.lines, p.lines) << "scale " << scale;
    }
  }
}

TEST(Segment, AlphabetLine) {
  const RenderedPage p =
      render_page("ABCDEFGHIJKLMNOPQRSTUVWXYZ", builtin_glyphs(), 1);
  const SegmentedPage s = segment_page(p.image);
  ASSERT_EQ(s.lines.size(), 1u);
  EXPECT_EQ(s.lines[0].chars.size(), 26u);
  EXPECT_EQ(s.lines, p.lines);
}

namespace {

// Pixel flood fill, the straightforward definition of the cleaning step.
BinaryImage despeckle_oracle(const BinaryImage& page, int min_blob) {
  const int w = page.width(), h = page.height();
  auto pass = [&](const BinaryImage& src, Pixel value, bool eight, bool keep_border) {
    BinaryImage out = src;
    std::vector<char> seen(src.pixels().size(), 0);
    for (int sy = 0; sy < h; ++sy) {
      for (int sx = 0; sx < w; ++sx) {
        if (seen[sy * w + sx] || src.at(sx, sy) != value) continue;
        std::vector<std::pair<int, int>> comp{{sx, sy}}, stack{{sx, sy}};
        seen[sy * w + sx] = 1;
        bool border = false;
        while (!stack.empty()) {
          auto [x, y] = stack.back();
          stack.pop_back();
          border = border || x == 0 || y == 0 || x == w - 1 || y == h - 1;
          for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
              if (!eight && dx && dy) continue;
              const int nx = x + dx, ny = y + dy;
              if (!src.in_bounds(nx, ny) || seen[ny * w + nx] || src.at(nx, ny) != value) continue;
              seen[ny * w + nx] = 1;
              stack.push_back({nx, ny});
              comp.push_back({nx, ny});
            }
        }
        if (static_cast<int>(comp.size()) < min_blob && !(keep_border && border))
          for (auto [x, y] : comp) out.at(x, y) = value ^ 1;
      }
    }
    return out;
  };
  return pass(pass(page, kBlack, true, false), kWhite, false, true);
}

}  // namespace

TEST(Despeckle, MatchesFloodFillOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int w = 5 + static_cast<int>(rng() % 40);
    const int h = 5 + static_cast<int>(rng() % 40);
    const int density = 2 + static_cast<int>(rng() % 5);
    std::vector<Pixel> px(static_cast<std::size_t>(w) * h);
    for (auto& p : px) p = rng() % density == 0 ? kBlack : kWhite;
    const BinaryImage page(w, h, px);
    const int min_blob = static_cast<int>(rng() % 12);
    EXPECT_EQ(despeckle(page, min_blob), despeckle_oracle(page, min_blob))
        << "trial " << trial;
  }
}
