#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "coremark/image.hpp"
#include "coremark/segmentation.hpp"

namespace coremark {

// A glyph on the font grid: rows of '0'/'1', '1' = ink.
struct Glyph {
  std::vector<std::string> rows;
  int width() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()); }
  int height() const { return static_cast<int>(rows.size()); }
};

// Built-in 5x7-grid bitmap face. Each font-grid cell renders as
// `block * scale` square pixels, so strokes are `block * scale` thick.
struct GlyphSet {
  std::map<char, Glyph> glyphs;
  int cell_rows = 7;   // font-grid rows per glyph cell
  int block = 2;       // px per font-grid cell at scale 1
  int gap = 2;         // px between neighbouring glyphs at scale 1
  int word_space = 6;  // extra px for ' ' at scale 1
  int line_gap = 12;   // white rows between lines at scale 1

  bool contains(char c) const { return glyphs.count(c) != 0; }
  const Glyph& at(char c) const;
  // Glyph rendered at `scale`.
  BinaryImage render(char c, int scale) const;
};

const GlyphSet& builtin_glyphs();

// Canvas geometry at scale 1; every value is multiplied by the scale.
// Defaults are A4 at 100 dpi.
struct PageLayout {
  int page_width = 827;
  int page_height = 1169;
  int margin_left = 100;
  int margin_top = 100;
};

struct RenderedPage {
  std::string text;
  BinaryImage image;
  std::vector<LineBox> lines;  // ground-truth boxes, segmentation-exact
};

// Lines are separated by '\n'. The canvas grows if the text does not fit.
RenderedPage render_page(std::string_view text, const GlyphSet& glyphs,
                         int scale, const PageLayout& layout = {});

// Deterministic pseudo-English text: `lines` lines of roughly
// `chars_per_line` characters using only glyphs from the built-in set.
std::string generate_text(std::uint64_t seed, int lines, int chars_per_line);

struct CorpusSpec {
  int n_pages = 10;
  int lines_per_page = 6;
  int chars_per_line = 40;
  std::uint64_t seed = 7;
  int scale = 2;
};

std::vector<RenderedPage> generate_corpus(const CorpusSpec& spec);

// Writes NNN.pbm + NNN.json per page and corpus.json (the spec echo).
void make_corpus(const CorpusSpec& spec, const std::filesystem::path& dir);

struct CorpusPage {
  std::string name;
  BinaryImage image;
};

// Reads every NNN.pbm in `dir`, sorted by name.
std::vector<CorpusPage> load_corpus(const std::filesystem::path& dir);

}  // namespace coremark
