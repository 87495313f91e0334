#include "coremark/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "coremark/error.hpp"
#include "coremark/metrics.hpp"
#include "json.hpp"

namespace coremark {

std::optional<int> target_thickness(int n_core, std::uint8_t bit, int t_delta,
                                     int beta, bool strict_paper_mode) {
  if (t_delta - beta < 1) {
    throw Error(ErrorCode::InfeasibleTarget,
                "T_delta - beta = " + std::to_string(t_delta - beta) +
                    " leaves no room for a 1 bit");
  }
  int target = n_core;
  if (strict_paper_mode) {
    if (bit == 1 && t_delta - n_core <= beta) target = t_delta - beta;
    if (bit == 0 && t_delta - n_core >= beta) target = t_delta + beta + 1;
  } else {
    // Every carrier ends at least beta away from the decision boundary.
    if (bit == 1 && n_core > t_delta - beta) target = t_delta - beta;
    if (bit == 0 && n_core < t_delta + beta + 1) target = t_delta + beta + 1;
  }
  if (target == n_core) return std::nullopt;
  return target;
}

namespace {

Rect ink_bounds(const BinaryImage& img) {
  int x0 = img.width(), y0 = img.height(), x1 = -1, y1 = -1;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (img.at(x, y) != kBlack) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) return {};
  return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

Rect transpose(const Rect& r) { return {r.y, r.x, r.height, r.width}; }

// The core modifications below work on rows. Vertical cores are handled by
// transposing the canvas, so "low"/"high" are left/right for them.
struct Work {
  BinaryImage img;
  Rect glyph;
  bool vertical = false;
  bool lock_low = false;
  bool lock_high = false;

  Work(const GlyphView& v, Direction d)
      : vertical(d == Direction::Vertical) {
    img = vertical ? v.canvas.transposed() : v.canvas;
    glyph = vertical ? transpose(v.glyph) : v.glyph;
    if (vertical) {
      lock_low = v.lock_left;
      lock_high = v.lock_right;
    }
  }

  BinaryImage canvas() const { return vertical ? img.transposed() : img; }

  bool row_has_ink(int y) const {
    for (Pixel p : img.row(y)) {
      if (p == kBlack) return true;
    }
    return false;
  }
  // True if clearing row y could move the ink extent on a locked side.
  bool row_is_outermost_low(int y) const {
    for (int r = 0; r < y; ++r) {
      if (row_has_ink(r)) return false;
    }
    return true;
  }
  bool row_is_outermost_high(int y) const {
    for (int r = y + 1; r < img.height(); ++r) {
      if (row_has_ink(r)) return false;
    }
    return true;
  }
};

}  // namespace

namespace {

// Thickness of whatever the modification is aimed at, read off the canvas.
using Measure = std::function<int(const BinaryImage&)>;

void reduce_impl(GlyphView& view, const CoreDescriptor& core, int target,
                 const Measure& measure) {
  const int n = core.thickness();
  if (target < 1 || target >= n) {
    throw Error(ErrorCode::CannotReduce, "target " + std::to_string(target) +
                                             " is not below thickness " +
                                             std::to_string(n));
  }
  Work w(view, core.direction);
  const int ox = w.glyph.x;
  const int oy = w.glyph.y;
  int k_lo = 0;
  int k_hi = n - 1;
  const int max_steps = (n - target) + 2;
  for (int step = 0; step < max_steps && k_lo <= k_hi; ++step) {
    const bool lo_ok =
        !(w.lock_low && w.row_is_outermost_low(oy + core.indices[k_lo]));
    const bool hi_ok =
        !(w.lock_high && w.row_is_outermost_high(oy + core.indices[k_hi]));
    if (!lo_ok && !hi_ok) break;
    bool low = core.lengths[k_lo] <= core.lengths[k_hi];
    if (low && !lo_ok) low = false;
    if (!low && !hi_ok) low = true;

    const int k = low ? k_lo++ : k_hi--;
    const int y = oy + core.indices[k];
    const int ref = low ? y - 1 : y + 1;
    for (int x = ox + core.starts[k]; x < ox + core.starts[k] + core.lengths[k];
         ++x) {
      if (w.img.at(x, y) == kBlack && w.img.get_or_white(x - 1, ref) == kWhite &&
          w.img.get_or_white(x, ref) == kWhite &&
          w.img.get_or_white(x + 1, ref) == kWhite) {
        w.img.at(x, y) = kWhite;
      }
    }
    const int now = measure(w.canvas());
    if (now == target) {
      view.canvas = w.canvas();
      return;
    }
    if (now < target) break;
  }
  throw Error(ErrorCode::CannotReduce,
              "could not reach thickness " + std::to_string(target));
}

void expand_impl(GlyphView& view, const CoreDescriptor& core, int target,
                 const Measure& measure) {
  const int n = core.thickness();
  const int add = target - n;
  if (add <= 0) {
    throw Error(ErrorCode::CannotExpand, "target " + std::to_string(target) +
                                             " is not above thickness " +
                                             std::to_string(n));
  }
  const Work base(view, core.direction);
  const bool prefer_low = core.lengths.front() > core.lengths.back();
  bool any_room = false;
  for (bool low : {prefer_low, !prefer_low}) {
    const int edge = low ? 0 : n - 1;
    const int y_edge = base.glyph.y + core.indices[edge];
    const int y_first = low ? y_edge - add : y_edge + 1;
    if (y_first < 0 || y_first + add > base.img.height()) continue;
    any_room = true;
    Work w = base;
    const int x0 = base.glyph.x + core.starts[edge];
    for (int y = y_first; y < y_first + add; ++y) {
      for (int x = x0; x < x0 + core.lengths[edge]; ++x) w.img.at(x, y) = kBlack;
    }
    if (measure(w.canvas()) == target) {
      view.canvas = w.canvas();
      return;
    }
  }
  if (!any_room) {
    throw Error(ErrorCode::OutOfBounds,
                "no room to add " + std::to_string(add) + " scanlines");
  }
  throw Error(ErrorCode::CannotExpand,
              "could not reach thickness " + std::to_string(target));
}

Measure core_thickness(int t_c) {
  return [t_c](const BinaryImage& canvas) {
    const Rect r = ink_bounds(canvas);
    return r.empty() ? 0 : extract_core(canvas.crop(r), t_c).thickness();
  };
}

struct Clusters {
  Rect ink;  // canvas box the candidates are relative to
  std::vector<CandidateVector> cands;
  std::vector<ClusterStats> list;
};

Clusters clusters_of(const BinaryImage& canvas, Direction d, int t_c) {
  Clusters c;
  c.ink = ink_bounds(canvas);
  if (c.ink.empty()) return c;
  const BinaryImage crop = canvas.crop(c.ink);
  c.cands = candidate_vectors(crop, d);
  c.list = cluster_runs(c.cands, t_c);
  return c;
}

// Size of the cluster holding canvas scanline `anchor`, 0 if none does.
Measure cluster_thickness(Direction d, int anchor, int t_c) {
  return [=](const BinaryImage& canvas) {
    const Clusters c = clusters_of(canvas, d, t_c);
    const int local = anchor - (d == Direction::Vertical ? c.ink.x : c.ink.y);
    for (const ClusterStats& s : c.list) {
      for (std::size_t i = s.begin; i < s.begin + s.count; ++i) {
        if (c.cands[i].scanline == local) return static_cast<int>(s.count);
      }
    }
    return 0;
  };
}

// A cluster whose mean length is this close to the core's can take over the
// core after a single noise pixel.
constexpr double kTwinRatio = 0.75;

// Gives every near-tied rival cluster the core's new thickness, so either
// pick decodes alike. Returns false (view untouched) if a rival resists.
bool harmonize(GlyphView& view, Direction d, int target, int t_c) {
  GlyphView work = view;
  // Each pass fixes one rival; glyphs have only a handful.
  for (int pass = 0; pass < 8; ++pass) {
    const Clusters c = clusters_of(work.canvas, d, t_c);
    if (c.list.empty()) return false;
    double best = 0.0;
    for (const ClusterStats& s : c.list) best = std::max(best, s.mean_length());
    const ClusterStats* rival = nullptr;
    for (const ClusterStats& s : c.list) {
      if (static_cast<int>(s.count) != target &&
          s.mean_length() >= kTwinRatio * best) {
        rival = &s;
        break;
      }
    }
    if (rival == nullptr) {
      view = std::move(work);
      return true;
    }
    CoreDescriptor desc;
    desc.direction = d;
    for (std::size_t i = rival->begin; i < rival->begin + rival->count; ++i) {
      desc.indices.push_back(c.cands[i].scanline);
      desc.starts.push_back(c.cands[i].start);
      desc.lengths.push_back(c.cands[i].length);
    }
    desc.mean_length = rival->mean_length();
    const int middle = desc.indices[desc.indices.size() / 2];
    const int anchor = middle + (d == Direction::Vertical ? c.ink.x : c.ink.y);
    work.glyph = c.ink;
    try {
      const Measure m = cluster_thickness(d, anchor, t_c);
      if (desc.thickness() > target) {
        reduce_impl(work, desc, target, m);
      } else {
        expand_impl(work, desc, target, m);
      }
    } catch (const Error&) {
      return false;
    }
  }
  return false;
}

}  // namespace

void reduce_core(GlyphView& view, const CoreDescriptor& core, int target,
                 int t_c) {
  reduce_impl(view, core, target, core_thickness(t_c));
}

void expand_core(GlyphView& view, const CoreDescriptor& core, int target,
                 int t_c) {
  expand_impl(view, core, target, core_thickness(t_c));
}

namespace {

void check_config(const EmbedConfig& cfg) {
  if (cfg.beta < 1) throw Error(ErrorCode::InvalidParams, "beta must be >= 1");
  if (!(cfg.lambda > 0.0 && cfg.lambda <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, "lambda must lie in (0, 1]");
  }
  if (cfg.t_c < 0) throw Error(ErrorCode::InvalidParams, "t_c must be >= 0");
  if (cfg.n_s < 1) throw Error(ErrorCode::InvalidParams, "n_s must be >= 1");
  if (cfg.min_blob < 0) {
    throw Error(ErrorCode::InvalidParams, "min_blob must be >= 0");
  }
  if (!(cfg.selection_margin >= 0.0)) {
    throw Error(ErrorCode::InvalidParams, "selection margin must be >= 0");
  }
}

// Exactly one run of ink columns: the character cannot fall apart under
// vertical projection.
bool single_column_run(const BinaryImage& c) {
  int runs = 0;
  bool prev = false;
  for (int x = 0; x < c.width(); ++x) {
    bool ink = false;
    for (int y = 0; y < c.height() && !ink; ++y) ink = c.at(x, y) == kBlack;
    if (ink && !prev) ++runs;
    prev = ink;
  }
  return runs == 1;
}

struct Assignment {
  CharRef ref;
  int sub_index = -1;
  std::uint8_t bit = 0;
};

// Modifies one character in `clean` and `out`, or leaves both untouched and
// says why not.
void embed_char(const PageAnalysis& a, const EmbedConfig& cfg,
                BinaryImage& clean, BinaryImage& out, CharDecision& d) {
  const CoreDescriptor& core = a.core(d.ref);
  d.n_before = core.thickness();
  d.n_after = d.n_before;
  d.target =
      target_thickness(d.n_before, d.bit, a.t_delta, cfg.beta,
                       cfg.strict_paper_mode);
  if (!d.target) {
    d.action = "unchanged";
    return;
  }
  const LineBox& line = a.seg.lines[d.ref.line];
  const Rect box = a.box(d.ref).rect;
  const Rect area{box.x, line.rect.y, box.width, line.rect.height};
  GlyphView view;
  view.canvas = clean.crop(area);
  view.glyph = {0, box.y - line.rect.y, box.width, box.height};
  view.lock_left = d.ref.index == 0;
  view.lock_right = d.ref.index + 1 == static_cast<int>(line.chars.size());
  const BinaryImage before = view.canvas;

  try {
    if (*d.target < d.n_before) {
      reduce_core(view, core, *d.target, cfg.t_c);
      d.action = "reduced";
    } else {
      expand_core(view, core, *d.target, cfg.t_c);
      d.action = "expanded";
    }
  } catch (const Error& e) {
    d.action = "skipped";
    d.reason = std::string(to_string(e.code()));
    return;
  }
  if (cfg.harmonize) harmonize(view, core.direction, *d.target, cfg.t_c);

  const Rect ink = ink_bounds(view.canvas);
  const CoreDescriptor after = extract_core(view.canvas.crop(ink), cfg.t_c);
  std::string why;
  if (!single_column_run(view.canvas)) {
    why = "character would split";
  } else if (despeckle(view.canvas, cfg.min_blob) != view.canvas) {
    why = "modification leaves speckle";
  } else if (!a.selectable(after.mean_length)) {
    why = "core would drop below T_lambda";
  } else if (decode_bit(a.t_delta, after.thickness()) != d.bit) {
    why = "thickness does not carry the bit";
  }
  if (!why.empty()) {
    d.action = "skipped";
    d.reason = why;
    return;
  }
  d.n_after = after.thickness();
  for (int y = 0; y < area.height; ++y) {
    for (int x = 0; x < area.width; ++x) {
      const Pixel p = view.canvas.at(x, y);
      if (p == before.at(x, y)) continue;
      clean.at(area.x + x, area.y + y) = p;
      out.at(area.x + x, area.y + y) = p;
    }
  }
}

}  // namespace

EmbedResult embed_page(const BinaryImage& page, const Bits& payload,
                       const EmbedConfig& cfg) {
  check_config(cfg);
  if (payload.empty()) {
    throw Error(ErrorCode::InvalidParams, "payload is empty");
  }
  for (std::uint8_t b : payload) {
    if (b > 1) throw Error(ErrorCode::InvalidParams, "payload bits must be 0/1");
  }
  const PageAnalysis a = analyze_page(page, cfg.analysis());
  if (a.t_delta - cfg.beta < 1) {
    throw Error(ErrorCode::InfeasibleTarget,
                "T_delta = " + std::to_string(a.t_delta) +
                    " is too thin for beta = " + std::to_string(cfg.beta));
  }

  EmbedResult res;
  res.plan.t_lambda = a.t_lambda;
  res.plan.t_delta = a.t_delta;
  std::vector<Assignment> work;
  if (!cfg.es_enabled) {
    const std::vector<CharRef> carriers = eligible_chars(a);
    if (carriers.size() < payload.size()) {
      throw Error(ErrorCode::InsufficientCapacity,
                  std::to_string(payload.size()) + " bits requested, page holds " +
                      std::to_string(carriers.size()));
    }
    for (std::size_t i = 0; i < payload.size(); ++i) {
      work.push_back({carriers[i], -1, payload[i]});
    }
  } else {
    const std::vector<SubLineSlot> slots = usable_sublines(a, cfg.n_s);
    if (slots.size() < payload.size()) {
      throw Error(ErrorCode::InsufficientCapacity,
                  std::to_string(payload.size()) + " bits requested, page has " +
                      std::to_string(slots.size()) + " sub-lines");
    }
    // Spare sub-lines repeat the payload cyclically.
    for (std::size_t u = 0; u < slots.size(); ++u) {
      const std::size_t p = u % payload.size();
      const SubLineSlot& s = slots[u];
      res.plan.sublines.push_back({s.line, s.sub_index, p, payload[p],
                                   static_cast<int>(s.carriers.size())});
      for (const CharRef& c : s.carriers) work.push_back({c, s.sub_index, payload[p]});
    }
    std::vector<int> support(payload.size(), 0);
    for (const SubLineAssignment& s : res.plan.sublines) support[s.payload_index] += s.carriers;
    res.report.bits_without_carrier = static_cast<int>(
        std::count(support.begin(), support.end(), 0));
  }

  BinaryImage clean = a.seg.clean;
  BinaryImage out = page;
  for (const Assignment& w : work) {
    CharDecision d;
    d.ref = w.ref;
    d.sub_index = w.sub_index;
    d.bit = w.bit;
    embed_char(a, cfg, clean, out, d);
    if (d.action == "unchanged") ++res.report.chars_unchanged;
    else if (d.action == "skipped") ++res.report.chars_skipped;
    else ++res.report.chars_modified;
    res.plan.decisions.push_back(std::move(d));
  }

  res.report.flipped_pixels = hamming_distance(page, out);
  const QualityMetrics q = quality(page, out);
  res.report.psnr = q.psnr;
  res.report.ssim = q.ssim;

  const PageAnalysis b = analyze_page(out, cfg.analysis());
  bool same = b.t_delta == a.t_delta && b.t_lambda == a.t_lambda;
  if (same && !cfg.es_enabled) {
    same = eligible_chars(b) == eligible_chars(a);
  } else if (same) {
    const auto sa = usable_sublines(a, cfg.n_s);
    const auto sb = usable_sublines(b, cfg.n_s);
    same = sa.size() == sb.size();
    for (std::size_t i = 0; same && i < sa.size(); ++i) {
      same = sa[i].line == sb[i].line && sa[i].sub_index == sb[i].sub_index &&
             sa[i].carriers == sb[i].carriers;
    }
  }
  res.report.selection_consistent = same;
  res.image = std::move(out);
  return res;
}

namespace {

nlohmann::json psnr_json(double v) {
  if (std::isinf(v)) return "INFINITE";
  return v;
}

}  // namespace

std::string to_json(const EmbedConfig& cfg) {
  nlohmann::json j{{"beta", cfg.beta},
                   {"lambda", cfg.lambda},
                   {"t_c", cfg.t_c},
                   {"n_s", cfg.n_s},
                   {"es_enabled", cfg.es_enabled},
                   {"strict_paper_mode", cfg.strict_paper_mode},
                   {"min_blob", cfg.min_blob},
                   {"selection_margin", cfg.selection_margin},
                   {"harmonize", cfg.harmonize}};
  return j.dump(2);
}

std::string to_json(const EmbedPlan& plan) {
  nlohmann::json j;
  j["schema"] = 1;
  j["t_lambda"] = plan.t_lambda;
  j["t_delta"] = plan.t_delta;
  j["baseline_line"] = plan.baseline_line;
  j["decisions"] = nlohmann::json::array();
  for (const CharDecision& d : plan.decisions) {
    nlohmann::json e{{"line", d.ref.line},
                     {"char", d.ref.index},
                     {"bit", d.bit},
                     {"n_before", d.n_before},
                     {"n_after", d.n_after},
                     {"action", d.action}};
    if (d.sub_index >= 0) e["sub_line"] = d.sub_index;
    e["target"] = d.target ? nlohmann::json(*d.target) : nlohmann::json(nullptr);
    if (!d.reason.empty()) e["reason"] = d.reason;
    j["decisions"].push_back(std::move(e));
  }
  if (!plan.sublines.empty()) {
    j["sub_lines"] = nlohmann::json::array();
    for (const SubLineAssignment& s : plan.sublines) {
      j["sub_lines"].push_back({{"line", s.line},
                                {"sub_line", s.sub_index},
                                {"payload_index", s.payload_index},
                                {"bit", s.bit},
                                {"carriers", s.carriers}});
    }
  }
  return j.dump(2);
}

std::string to_json(const EmbedReport& r) {
  nlohmann::json j{{"schema", 1},
                   {"flipped_pixels", r.flipped_pixels},
                   {"chars_modified", r.chars_modified},
                   {"chars_unchanged", r.chars_unchanged},
                   {"chars_skipped", r.chars_skipped},
                   {"bits_without_carrier", r.bits_without_carrier},
                   {"psnr", psnr_json(r.psnr)},
                   {"ssim", r.ssim},
                   {"selection_consistent", r.selection_consistent}};
  return j.dump(2);
}

}  // namespace coremark
