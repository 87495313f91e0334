#pragma once

#include <string>
#include <vector>

#include "coremark/image.hpp"

namespace coremark {

struct CharBox {
  int line_index = 0;
  int char_index = 0;
  Rect rect;
  friend bool operator==(const CharBox&, const CharBox&) = default;
};

struct LineBox {
  int line_index = 0;
  Rect rect;
  std::vector<CharBox> chars;
  friend bool operator==(const LineBox&, const LineBox&) = default;
};

// One of the N_s equal-width slices of a text line. `x_begin`/`x_end` are
// page columns, half-open.
struct SubLine {
  int line_index = 0;
  int sub_index = 0;
  int x_begin = 0;
  int x_end = 0;
  std::vector<CharBox> complete_chars;
};

struct SegmentOptions {
  // Black specks and white pinholes smaller than this are treated as noise
  // and removed. 0 keeps everything.
  int min_blob = 8;
};

struct SegmentedPage {
  // The page with speckle and pinholes removed; cores are measured on it.
  BinaryImage clean;
  std::vector<LineBox> lines;
};

// Removes 8-connected black components with fewer than `min_blob` pixels,
// then fills enclosed 4-connected white pinholes of the same size.
BinaryImage despeckle(const BinaryImage& page, int min_blob);

// Horizontal projection: a line is a maximal band of rows holding ink. The
// rect is tightened horizontally to the band's ink. `chars` is left empty.
std::vector<LineBox> segment_lines(const BinaryImage& page);

// Vertical projection inside the line band; each box is tightened
// vertically to its own ink.
std::vector<CharBox> segment_chars(const BinaryImage& page,
                                   const LineBox& line);

// despeckle -> segment_lines -> segment_chars for every line.
SegmentedPage segment_page(const BinaryImage& page,
                           const SegmentOptions& opts = {});

std::vector<SubLine> split_sublines(const LineBox& line, int n_s);

// Debug dump: [{line, char, x0, y0, w, h}, ...].
std::string boxes_to_json(const std::vector<LineBox>& lines);

}  // namespace coremark
