#include "coremark/segmentation.hpp"

#include "json.hpp"

#include <algorithm>

#include "coremark/error.hpp"

namespace coremark {

namespace {

// Maximal runs of true values, as half-open [begin, end) pairs.
std::vector<std::pair<int, int>> runs_of(const std::vector<bool>& occupied) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(occupied.size());
  int i = 0;
  while (i < n) {
    if (!occupied[i]) {
      ++i;
      continue;
    }
    int j = i;
    while (j < n && occupied[j]) ++j;
    out.emplace_back(i, j);
    i = j;
  }
  return out;
}

}  // namespace

namespace {

struct Span {
  int y = 0;
  int x0 = 0;  // half-open [x0, x1)
  int x1 = 0;
};

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

// Repaints every `value` component smaller than `min_size`. Black uses
// 8-connectivity and white its dual, 4-connectivity. Components touching the
// image border are kept when `keep_border` is set. Components are labelled
// over horizontal runs, which text pages have few of.
void repaint_small(const BinaryImage& src, BinaryImage& out, Pixel value,
                   int min_size, bool keep_border) {
  const int w = src.width();
  const int h = src.height();
  const int reach = value == kBlack ? 1 : 0;
  std::vector<Span> spans;
  std::vector<std::size_t> row_begin(h + 1, 0);
  for (int y = 0; y < h; ++y) {
    row_begin[y] = spans.size();
    const auto r = src.row(y);
    int x = 0;
    while (x < w) {
      if (r[x] != value) {
        ++x;
        continue;
      }
      const int x0 = x;
      while (x < w && r[x] == value) ++x;
      spans.push_back({y, x0, x});
    }
  }
  row_begin[h] = spans.size();

  std::vector<int> parent(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) parent[i] = static_cast<int>(i);
  for (int y = 1; y < h; ++y) {
    std::size_t j = row_begin[y - 1];
    for (std::size_t i = row_begin[y]; i < row_begin[y + 1]; ++i) {
      const Span& s = spans[i];
      while (j < row_begin[y] && spans[j].x1 + reach <= s.x0) ++j;
      for (std::size_t k = j; k < row_begin[y] && spans[k].x0 < s.x1 + reach; ++k) {
        const int a = find_root(parent, static_cast<int>(i));
        const int b = find_root(parent, static_cast<int>(k));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  std::vector<long> size(spans.size(), 0);
  std::vector<char> border(spans.size(), 0);
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const Span& s = spans[i];
    const int r = find_root(parent, static_cast<int>(i));
    size[r] += s.x1 - s.x0;
    if (s.y == 0 || s.y == h - 1 || s.x0 == 0 || s.x1 == w) border[r] = 1;
  }
  const Pixel fill = value == kBlack ? kWhite : kBlack;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const int r = find_root(parent, static_cast<int>(i));
    if (size[r] >= min_size || (keep_border && border[r])) continue;
    const Span& s = spans[i];
    auto row = out.row(s.y);
    std::fill(row.begin() + s.x0, row.begin() + s.x1, fill);
  }
}

}  // namespace

BinaryImage despeckle(const BinaryImage& page, int min_blob) {
  BinaryImage out = page;
  if (min_blob <= 1) return out;
  repaint_small(page, out, kBlack, min_blob, false);
  const BinaryImage specks_removed = out;
  repaint_small(specks_removed, out, kWhite, min_blob, true);
  return out;
}

std::vector<LineBox> segment_lines(const BinaryImage& page) {
  std::vector<bool> row_ink(page.height(), false);
  for (int y = 0; y < page.height(); ++y) {
    auto r = page.row(y);
    row_ink[y] = std::find(r.begin(), r.end(), kBlack) != r.end();
  }
  std::vector<LineBox> lines;
  for (auto [y0, y1] : runs_of(row_ink)) {
    int x_min = page.width();
    int x_max = -1;
    for (int y = y0; y < y1; ++y) {
      auto r = page.row(y);
      for (int x = 0; x < page.width(); ++x) {
        if (r[x] == kBlack) {
          x_min = std::min(x_min, x);
          x_max = std::max(x_max, x);
        }
      }
    }
    LineBox line;
    line.line_index = static_cast<int>(lines.size());
    line.rect = {x_min, y0, x_max - x_min + 1, y1 - y0};
    lines.push_back(std::move(line));
  }
  if (lines.empty()) {
    throw Error(ErrorCode::NoTextFound, "page holds no black pixels");
  }
  return lines;
}

std::vector<CharBox> segment_chars(const BinaryImage& page,
                                   const LineBox& line) {
  const Rect& band = line.rect;
  std::vector<bool> col_ink(band.width, false);
  for (int y = band.y; y < band.bottom(); ++y) {
    auto r = page.row(y);
    for (int x = 0; x < band.width; ++x) {
      if (r[band.x + x] == kBlack) col_ink[x] = true;
    }
  }
  std::vector<CharBox> chars;
  for (auto [c0, c1] : runs_of(col_ink)) {
    int y_min = band.bottom();
    int y_max = band.y - 1;
    for (int y = band.y; y < band.bottom(); ++y) {
      auto r = page.row(y);
      for (int x = band.x + c0; x < band.x + c1; ++x) {
        if (r[x] == kBlack) {
          y_min = std::min(y_min, y);
          y_max = std::max(y_max, y);
          break;
        }
      }
    }
    CharBox box;
    box.line_index = line.line_index;
    box.char_index = static_cast<int>(chars.size());
    box.rect = {band.x + c0, y_min, c1 - c0, y_max - y_min + 1};
    chars.push_back(box);
  }
  return chars;
}

SegmentedPage segment_page(const BinaryImage& page,
                           const SegmentOptions& opts) {
  SegmentedPage out{despeckle(page, opts.min_blob), {}};
  out.lines = segment_lines(out.clean);
  for (auto& line : out.lines) line.chars = segment_chars(out.clean, line);
  return out;
}

std::vector<SubLine> split_sublines(const LineBox& line, int n_s) {
  if (n_s < 1) {
    throw Error(ErrorCode::InvalidArgument, "n_s must be >= 1");
  }
  if (line.rect.width < n_s) {
    throw Error(ErrorCode::LineTooNarrow,
                "line " + std::to_string(line.line_index) + " is " +
                    std::to_string(line.rect.width) + " px wide, n_s=" +
                    std::to_string(n_s));
  }
  const int span = line.rect.width / n_s;
  std::vector<SubLine> subs(n_s);
  for (int i = 0; i < n_s; ++i) {
    SubLine& s = subs[i];
    s.line_index = line.line_index;
    s.sub_index = i;
    s.x_begin = line.rect.x + i * span;
    // The last span absorbs the remainder.
    s.x_end = i + 1 == n_s ? line.rect.right() : s.x_begin + span;
    for (const CharBox& c : line.chars) {
      if (c.rect.x >= s.x_begin && c.rect.right() <= s.x_end) {
        s.complete_chars.push_back(c);
      }
    }
  }
  return subs;
}

std::string boxes_to_json(const std::vector<LineBox>& lines) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& line : lines) {
    for (const auto& c : line.chars) {
      arr.push_back({{"line", c.line_index},
                     {"char", c.char_index},
                     {"x0", c.rect.x},
                     {"y0", c.rect.y},
                     {"w", c.rect.width},
                     {"h", c.rect.height}});
    }
  }
  return arr.dump();
}

}  // namespace coremark
