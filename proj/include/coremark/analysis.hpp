#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coremark/core.hpp"
#include "coremark/segmentation.hpp"

// Page-level state shared by the embedder and the blind extractor. Both
// sides must derive it identically from the page they hold.
namespace coremark {

// Index of the line whose cores define T_delta. It never carries bits.
inline constexpr int kBaselineLine = 0;

struct CharRef {
  int line = 0;
  int index = 0;
  friend bool operator==(const CharRef&, const CharRef&) = default;
};

struct PageAnalysis {
  SegmentedPage seg;
  std::vector<std::vector<CoreDescriptor>> cores;  // [line][char]
  double t_lambda = 0.0;
  double margin = 0.0;  // selection margin, see AnalysisParams
  int t_delta = 0;

  const CharBox& box(CharRef c) const { return seg.lines[c.line].chars[c.index]; }
  const CoreDescriptor& core(CharRef c) const { return cores[c.line][c.index]; }
  // Mean core length strictly above T_lambda + margin; the baseline line is
  // never eligible.
  bool eligible(CharRef c) const;
  bool selectable(double mean_length) const { return mean_length > t_lambda + margin; }
};

struct AnalysisParams {
  int t_c = 10;
  double lambda = 0.2;
  int min_blob = 8;
  // T_lambda is always some character's own length, so that character sits
  // exactly on the boundary and a single noise pixel can flip its
  // eligibility. Selecting above T_lambda + margin keeps the boundary off
  // the observed lengths.
  double margin = 1.0;
};

// Sorts ascending and returns the ceil(n * lambda)-th smallest (1-based).
double selection_threshold(std::span<const double> core_lengths, double lambda);

// Mean thickness of the baseline cores, rounded half up.
int embedding_threshold(std::span<const int> baseline_thicknesses);
int embedding_threshold(const SegmentedPage& page, int baseline_line, int t_c);

// Segments the page, extracts every core, and computes T_lambda over the
// non-baseline characters and T_delta over the baseline line.
PageAnalysis analyze_page(const BinaryImage& page, const AnalysisParams& params);

// Bit carried by a core of thickness n: 1 iff T_delta - n >= 0.
inline std::uint8_t decode_bit(int t_delta, int n_core) {
  return t_delta - n_core >= 0 ? 1 : 0;
}

// Eligible characters in reading order (plain mode carriers).
std::vector<CharRef> eligible_chars(const PageAnalysis& a);

struct SubLineSlot {
  int line = 0;
  int sub_index = 0;
  std::vector<CharRef> carriers;  // eligible complete characters
};

// Every sub-line of every non-baseline line, in reading order (ES mode bit
// positions). Slots fixed by geometry alone keep embedder and extractor in
// step even when noise moves a character across T_lambda; a slot without
// carriers simply holds no vote.
std::vector<SubLineSlot> usable_sublines(const PageAnalysis& a, int n_s);

}  // namespace coremark
