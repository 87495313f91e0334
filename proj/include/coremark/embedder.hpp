#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coremark/analysis.hpp"
#include "coremark/core.hpp"
#include "coremark/image.hpp"

namespace coremark {

struct EmbedConfig {
  int beta = 1;         // thickness margin around T_delta
  double lambda = 0.2;  // selection percentile
  int t_c = 10;         // cluster tolerance, px
  int n_s = 9;          // sub-lines per line for the ES modulator
  bool es_enabled = false;
  // Literal four-case thickness table; leaves n_core == T_delta unchanged
  // for a 0 bit, which then decodes as 1.
  bool strict_paper_mode = false;
  int min_blob = 8;
  double selection_margin = 1.0;  // px above T_lambda
  // Also retarget rival clusters whose mean length nearly ties the core's
  // (twin stems as in H, N, U), so a noise pixel that swaps the winner
  // does not swap the bit.
  bool harmonize = true;

  AnalysisParams analysis() const { return {t_c, lambda, min_blob, selection_margin}; }
};

// Target thickness for one character, or nullopt when the current
// thickness already carries `bit`. Throws InfeasibleTarget if
// T_delta - beta < 1.
std::optional<int> target_thickness(int n_core, std::uint8_t bit, int t_delta,
                                     int beta, bool strict_paper_mode = false);

// Work area for one character: its own columns across the whole line band,
// so it holds no ink from any other character. `glyph` is the tight ink box
// inside `canvas` that the core descriptor refers to.
struct GlyphView {
  BinaryImage canvas;
  Rect glyph;
  // Forbid reductions that would clear the outermost ink column on that side
  // (used at line ends so the line's horizontal extent never moves).
  bool lock_left = false;
  bool lock_right = false;
};

// Peels edge scanlines off the core, shorter side first, until a fresh
// core extraction reports `target`. A black pixel is cleared only when its
// three neighbours in the outward scanline are white, so crossing strokes
// and diagonal joints survive.
// Throws CannotReduce (view restored) if the target cannot be hit within
// two extra scanlines.
void reduce_core(GlyphView& view, const CoreDescriptor& core, int target,
                 int t_c);

// Adds full scanlines beyond the longer edge (bottom/right on ties), each
// spanning that edge scanline's extent. Falls back to the other edge when
// the preferred one has no room in the canvas. Throws OutOfBounds if neither
// edge fits and CannotExpand if the thickness misses the target.
void expand_core(GlyphView& view, const CoreDescriptor& core, int target,
                 int t_c);

struct CharDecision {
  CharRef ref;
  int sub_index = -1;  // ES sub-line, -1 in plain mode
  std::uint8_t bit = 0;
  int n_before = 0;
  std::optional<int> target;
  int n_after = 0;
  std::string action;  // unchanged | reduced | expanded | skipped
  std::string reason;
};

struct SubLineAssignment {
  int line = 0;
  int sub_index = 0;
  std::size_t payload_index = 0;
  std::uint8_t bit = 0;
  int carriers = 0;
};

struct EmbedPlan {
  double t_lambda = 0.0;
  int t_delta = 0;
  int baseline_line = kBaselineLine;
  std::vector<CharDecision> decisions;
  std::vector<SubLineAssignment> sublines;  // ES mode only
};

struct EmbedReport {
  std::size_t flipped_pixels = 0;
  int chars_modified = 0;
  int chars_unchanged = 0;
  int chars_skipped = 0;
  // ES mode: payload positions whose every sub-line copy lacks a carrier.
  // The extractor reads those as 1.
  int bits_without_carrier = 0;
  double psnr = 0.0;
  double ssim = 1.0;
  // Re-analysis of the output reproduces T_delta, T_lambda and the carrier
  // sequence.
  bool selection_consistent = true;
};

struct EmbedResult {
  BinaryImage image;
  EmbedPlan plan;
  EmbedReport report;
};

EmbedResult embed_page(const BinaryImage& page, const Bits& payload,
                       const EmbedConfig& cfg);

std::string to_json(const EmbedConfig& cfg);
std::string to_json(const EmbedPlan& plan);
std::string to_json(const EmbedReport& report);

}  // namespace coremark
