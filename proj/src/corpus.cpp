#include "coremark/corpus.hpp"

#include <algorithm>
#include <random>

#include "coremark/error.hpp"
#include "coremark/image_io.hpp"
#include "json.hpp"

namespace coremark {

namespace {

GlyphSet make_builtin() {
  GlyphSet gs;
  auto add = [&gs](char c, std::vector<std::string> rows) {
    gs.glyphs[c] = Glyph{std::move(rows)};
  };
  add('A', {"01110", "10001", "10001", "11111", "10001", "10001", "10001"});
  add('B', {"11110", "10001", "10001", "11110", "10001", "10001", "11110"});
  add('C', {"01110", "10001", "10000", "10000", "10000", "10001", "01110"});
  add('D', {"11110", "10001", "10001", "10001", "10001", "10001", "11110"});
  add('E', {"11111", "10000", "10000", "11110", "10000", "10000", "11111"});
  add('F', {"11111", "10000", "10000", "11110", "10000", "10000", "10000"});
  add('G', {"01110", "10001", "10000", "10111", "10001", "10001", "01111"});
  add('H', {"10001", "10001", "10001", "11111", "10001", "10001", "10001"});
  add('I', {"111", "010", "010", "010", "010", "010", "111"});
  add('J', {"00111", "00010", "00010", "00010", "00010", "10010", "01100"});
  add('K', {"10001", "10010", "10100", "11000", "10100", "10010", "10001"});
  add('L', {"10000", "10000", "10000", "10000", "10000", "10000", "11111"});
  add('M', {"10001", "11011", "10101", "10101", "10001", "10001", "10001"});
  add('N', {"10001", "10001", "11001", "10101", "10011", "10001", "10001"});
  add('O', {"01110", "10001", "10001", "10001", "10001", "10001", "01110"});
  add('P', {"11110", "10001", "10001", "11110", "10000", "10000", "10000"});
  add('Q', {"01110", "10001", "10001", "10001", "10101", "10010", "01101"});
  add('R', {"11110", "10001", "10001", "11110", "10100", "10010", "10001"});
  add('S', {"01111", "10000", "10000", "01110", "00001", "00001", "11110"});
  add('T', {"11111", "00100", "00100", "00100", "00100", "00100", "00100"});
  add('U', {"10001", "10001", "10001", "10001", "10001", "10001", "01110"});
  add('V', {"10001", "10001", "10001", "10001", "10001", "01010", "00100"});
  add('W', {"10001", "10001", "10001", "10101", "10101", "10101", "01010"});
  add('X', {"10001", "10001", "01010", "00100", "01010", "10001", "10001"});
  add('Y', {"10001", "10001", "01010", "00100", "00100", "00100", "00100"});
  add('Z', {"11111", "00001", "00010", "00100", "01000", "10000", "11111"});
  add('0', {"01110", "10001", "10011", "10101", "11001", "10001", "01110"});
  add('1', {"010", "110", "010", "010", "010", "010", "111"});
  add('2', {"01110", "10001", "00001", "00010", "00100", "01000", "11111"});
  add('3', {"11111", "00010", "00100", "00010", "00001", "10001", "01110"});
  add('4', {"00010", "00110", "01010", "10010", "11111", "00010", "00010"});
  add('5', {"11111", "10000", "11110", "00001", "00001", "10001", "01110"});
  add('6', {"00110", "01000", "10000", "11110", "10001", "10001", "01110"});
  add('7', {"11111", "00001", "00010", "00100", "01000", "01000", "01000"});
  add('8', {"01110", "10001", "10001", "01110", "10001", "10001", "01110"});
  add('9', {"01110", "10001", "10001", "01111", "00001", "00010", "01100"});
  add('.', {"00", "00", "00", "00", "00", "11", "11"});
  add(',', {"00", "00", "00", "00", "11", "01", "10"});
  add('-', {"000", "000", "000", "111", "000", "000", "000"});
  add(':', {"00", "11", "11", "00", "11", "11", "00"});
  add(';', {"00", "11", "11", "00", "11", "01", "10"});
  return gs;
}

constexpr std::string_view kWords[] = {
    "THE",     "OF",      "AND",     "TO",      "IN",      "IS",
    "THAT",    "FOR",     "IT",      "AS",      "WAS",     "WITH",
    "BE",      "BY",      "ON",      "NOT",     "HE",      "THIS",
    "ARE",     "OR",      "HIS",     "FROM",    "AT",      "WHICH",
    "BUT",     "HAVE",    "AN",      "HAD",     "THEY",    "YOU",
    "WERE",    "THEIR",   "ONE",     "ALL",     "WE",      "CAN",
    "HER",     "HAS",     "THERE",   "BEEN",    "IF",      "MORE",
    "WHEN",    "WILL",    "WOULD",   "WHO",     "SO",      "NO",
    "RECORD",  "FILE",    "MEDICAL", "REPORT",  "LEDGER",  "ACCOUNT",
    "BALANCE", "PATIENT", "DOCTOR",  "CLINIC",  "BANK",    "PAYMENT",
    "INVOICE", "SIGNED",  "COPY",    "PAGE",    "SECTION", "TOTAL",
    "AMOUNT",  "DATE",    "NAME",    "OFFICE",  "STAFF",   "MEMBER",
    "ANNUAL",  "BUDGET",  "REVIEW",  "NOTICE",  "PUBLIC",  "PRIVATE",
    "SECRET",  "DRAFT",   "FINAL",   "VERSION", "HISTORY", "SUMMARY",
    "MARKET",  "PRICE",   "VALUE",   "NUMBER",  "ORDER",   "STATE",
    "COURT",   "CASE",    "EVIDENCE", "WITNESS", "CONTRACT", "PARTY",
    "TERMS",   "LEGAL",   "CLAUSE",  "HOLDER",  "CLAIM",   "POLICY",
    "PERIOD",  "QUARTER", "INCOME",  "TAXES",   "EXPENSE", "CREDIT",
    "JOURNAL", "ENTRY",   "WEEKLY",  "MONTHLY", "OXYGEN",  "ZONE",
};

// Portable draw in [0, n); std distributions are not reproducible across
// standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

const Glyph& GlyphSet::at(char c) const {
  auto it = glyphs.find(c);
  if (it == glyphs.end()) {
    throw Error(ErrorCode::UnknownGlyph,
                std::string("no glyph for character '") + c + "'");
  }
  return it->second;
}

BinaryImage GlyphSet::render(char c, int scale) const {
  const Glyph& g = at(c);
  const int cell = block * scale;
  BinaryImage img(g.width() * cell, g.height() * cell);
  for (int gy = 0; gy < g.height(); ++gy) {
    for (int gx = 0; gx < g.width(); ++gx) {
      if (g.rows[gy][gx] != '1') continue;
      for (int y = 0; y < cell; ++y) {
        for (int x = 0; x < cell; ++x) img.at(gx * cell + x, gy * cell + y) = kBlack;
      }
    }
  }
  return img;
}

const GlyphSet& builtin_glyphs() {
  static const GlyphSet gs = make_builtin();
  return gs;
}

RenderedPage render_page(std::string_view text, const GlyphSet& glyphs,
                         int scale, const PageLayout& layout) {
  if (scale < 1) {
    throw Error(ErrorCode::InvalidArgument, "scale must be >= 1");
  }
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        if (c != ' ') glyphs.at(c);  // reject unknown glyphs up front
        cur.push_back(c);
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }

  const int cell = glyphs.block * scale;
  const int gap = glyphs.gap * scale;
  const int space = glyphs.word_space * scale;
  const int line_height = glyphs.cell_rows * cell;
  const int pitch = line_height + glyphs.line_gap * scale;
  const int left = layout.margin_left * scale;
  const int top = layout.margin_top * scale;

  // First pass: place glyphs to size the canvas.
  struct Placed {
    char c;
    int x;
    int y;
    int line;
  };
  std::vector<Placed> placed;
  int max_right = 0;
  int line_no = 0;
  for (const std::string& line : lines) {
    int x = left;
    bool first = true;
    bool any = false;
    for (char c : line) {
      if (c == ' ') {
        x += space;
        continue;
      }
      if (!first) x += gap;
      placed.push_back({c, x, top + line_no * pitch, line_no});
      x += glyphs.at(c).width() * cell;
      max_right = std::max(max_right, x);
      first = false;
      any = true;
    }
    if (any) ++line_no;
  }
  const int width = std::max(layout.page_width * scale, max_right + left);
  const int height =
      std::max(layout.page_height * scale, top + line_no * pitch + top);

  RenderedPage page;
  page.text = std::string(text);
  page.image = BinaryImage(width, height);
  page.lines.resize(line_no);
  for (int i = 0; i < line_no; ++i) page.lines[i].line_index = i;
  for (const Placed& p : placed) {
    page.image.paste(glyphs.render(p.c, scale), p.x, p.y);
    // Tight box of the glyph's ink on the font grid.
    const Glyph& g = glyphs.at(p.c);
    int r0 = g.height();
    int r1 = -1;
    for (int gy = 0; gy < g.height(); ++gy) {
      if (g.rows[gy].find('1') != std::string::npos) {
        r0 = std::min(r0, gy);
        r1 = std::max(r1, gy);
      }
    }
    LineBox& lb = page.lines[p.line];
    CharBox box;
    box.line_index = p.line;
    box.char_index = static_cast<int>(lb.chars.size());
    box.rect = {p.x, p.y + r0 * cell, g.width() * cell, (r1 - r0 + 1) * cell};
    lb.chars.push_back(box);
  }
  for (LineBox& lb : page.lines) {
    int x0 = lb.chars.front().rect.x;
    int x1 = lb.chars.back().rect.right();
    int y0 = lb.chars.front().rect.y;
    int y1 = lb.chars.front().rect.bottom();
    for (const CharBox& c : lb.chars) {
      y0 = std::min(y0, c.rect.y);
      y1 = std::max(y1, c.rect.bottom());
    }
    lb.rect = {x0, y0, x1 - x0, y1 - y0};
  }
  return page;
}

std::string generate_text(std::uint64_t seed, int lines, int chars_per_line) {
  std::mt19937_64 rng(seed);
  auto word = [&rng]() -> std::string {
    const auto roll = draw(rng, 100);
    if (roll < 6) {
      std::string num;
      const auto digits = 1 + draw(rng, 4);
      for (std::uint64_t i = 0; i < digits; ++i) {
        num.push_back(static_cast<char>('0' + draw(rng, 10)));
      }
      return num;
    }
    std::string w(kWords[draw(rng, std::size(kWords))]);
    if (roll < 10) {
      w += "-";
      w += kWords[draw(rng, std::size(kWords))];
    }
    return w;
  };

  std::string out;
  for (int l = 0; l < lines; ++l) {
    std::string line;
    while (static_cast<int>(line.size()) < chars_per_line - 4) {
      std::string w = word();
      const auto punct = draw(rng, 100);
      if (punct < 8) {
        w += ",";
      } else if (punct < 14) {
        w += ".";
      } else if (punct < 16) {
        w += ":";
      } else if (punct < 17) {
        w += ";";
      }
      const int extra = line.empty() ? 0 : 1;
      if (static_cast<int>(line.size() + w.size()) + extra > chars_per_line + 2) {
        if (line.size() >= static_cast<std::size_t>(chars_per_line) * 3 / 4) break;
        continue;
      }
      if (extra) line += ' ';
      line += w;
    }
    out += line;
    if (l + 1 < lines) out += '\n';
  }
  return out;
}

std::vector<RenderedPage> generate_corpus(const CorpusSpec& spec) {
  if (spec.n_pages < 1 || spec.lines_per_page < 2 || spec.chars_per_line < 8 ||
      spec.scale < 1) {
    throw Error(ErrorCode::InvalidArgument, "invalid corpus spec");
  }
  std::vector<RenderedPage> pages;
  std::mt19937_64 seeder(spec.seed);
  for (int i = 0; i < spec.n_pages; ++i) {
    const std::string text =
        generate_text(seeder(), spec.lines_per_page, spec.chars_per_line);
    pages.push_back(render_page(text, builtin_glyphs(), spec.scale));
  }
  return pages;
}

void make_corpus(const CorpusSpec& spec, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::IoError, "cannot create " + dir.string());
  }
  const auto pages = generate_corpus(spec);
  for (std::size_t i = 0; i < pages.size(); ++i) {
    char stem[16];
    std::snprintf(stem, sizeof stem, "%03zu", i);
    save_image(pages[i].image, dir / (std::string(stem) + ".pbm"));
    nlohmann::json meta = {{"text", pages[i].text},
                           {"width", pages[i].image.width()},
                           {"height", pages[i].image.height()},
                           {"boxes", nlohmann::json::parse(
                                         boxes_to_json(pages[i].lines))}};
    const std::string s = meta.dump(2) + "\n";
    write_file(dir / (std::string(stem) + ".json"),
               std::vector<std::uint8_t>(s.begin(), s.end()));
  }
  nlohmann::json echo = {{"schema", 1},
                         {"n_pages", spec.n_pages},
                         {"lines_per_page", spec.lines_per_page},
                         {"chars_per_line", spec.chars_per_line},
                         {"seed", spec.seed},
                         {"scale", spec.scale}};
  const std::string s = echo.dump(2) + "\n";
  write_file(dir / "corpus.json", std::vector<std::uint8_t>(s.begin(), s.end()));
}

std::vector<CorpusPage> load_corpus(const std::filesystem::path& dir) {
  std::vector<CorpusPage> pages;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".pbm") {
      pages.push_back({entry.path().stem().string(), load_image(entry.path())});
    }
  }
  if (ec) {
    throw Error(ErrorCode::IoError, "cannot read corpus " + dir.string());
  }
  std::sort(pages.begin(), pages.end(),
            [](const CorpusPage& a, const CorpusPage& b) { return a.name < b.name; });
  return pages;
}

}  // namespace coremark
