#include "coremark/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "coremark/error.hpp"

namespace coremark {

bool PageAnalysis::eligible(CharRef c) const {
  return c.line != kBaselineLine && selectable(core(c).mean_length);
}

double selection_threshold(std::span<const double> core_lengths,
                           double lambda) {
  if (core_lengths.empty()) {
    throw Error(ErrorCode::EmptyDocument, "no characters to select from");
  }
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, "lambda must lie in (0, 1]");
  }
  std::vector<double> sorted(core_lengths.begin(), core_lengths.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  // The epsilon keeps products such as 15 * 0.2 from rounding up a rank.
  auto k = static_cast<std::size_t>(std::ceil(n * lambda - 1e-9));
  k = std::clamp<std::size_t>(k, 1, sorted.size());
  return sorted[k - 1];
}

int embedding_threshold(std::span<const int> baseline_thicknesses) {
  if (baseline_thicknesses.empty()) {
    throw Error(ErrorCode::EmptyBaseline, "baseline line has no characters");
  }
  long sum = 0;
  for (int t : baseline_thicknesses) sum += t;
  const long n = static_cast<long>(baseline_thicknesses.size());
  // floor(sum / n + 1/2) in integers.
  return static_cast<int>((2 * sum + n) / (2 * n));
}

int embedding_threshold(const SegmentedPage& page, int baseline_line,
                        int t_c) {
  if (page.lines.size() < 2) {
    throw Error(ErrorCode::TooFewLines, "page has fewer than two lines");
  }
  if (baseline_line < 0 || baseline_line >= static_cast<int>(page.lines.size())) {
    throw Error(ErrorCode::InvalidArgument, "baseline line out of range");
  }
  std::vector<int> thicknesses;
  for (const CharBox& c : page.lines[baseline_line].chars) {
    thicknesses.push_back(extract_core(page.clean.crop(c.rect), t_c).thickness());
  }
  return embedding_threshold(thicknesses);
}

PageAnalysis analyze_page(const BinaryImage& page,
                          const AnalysisParams& params) {
  PageAnalysis a;
  a.seg = segment_page(page, {params.min_blob});
  if (a.seg.lines.size() < 2) {
    throw Error(ErrorCode::TooFewLines,
                "need a baseline line plus at least one carrier line, found " +
                    std::to_string(a.seg.lines.size()));
  }
  a.cores.resize(a.seg.lines.size());
  std::vector<double> lengths;
  std::vector<int> baseline;
  for (std::size_t l = 0; l < a.seg.lines.size(); ++l) {
    for (const CharBox& c : a.seg.lines[l].chars) {
      a.cores[l].push_back(extract_core(a.seg.clean.crop(c.rect), params.t_c));
      if (static_cast<int>(l) == kBaselineLine) {
        baseline.push_back(a.cores[l].back().thickness());
      } else {
        lengths.push_back(a.cores[l].back().mean_length);
      }
    }
  }
  a.t_delta = embedding_threshold(baseline);
  a.t_lambda = selection_threshold(lengths, params.lambda);
  a.margin = params.margin;
  return a;
}

std::vector<CharRef> eligible_chars(const PageAnalysis& a) {
  std::vector<CharRef> out;
  for (int l = 0; l < static_cast<int>(a.seg.lines.size()); ++l) {
    for (int i = 0; i < static_cast<int>(a.seg.lines[l].chars.size()); ++i) {
      if (a.eligible({l, i})) out.push_back({l, i});
    }
  }
  return out;
}

std::vector<SubLineSlot> usable_sublines(const PageAnalysis& a, int n_s) {
  std::vector<SubLineSlot> out;
  for (int l = 0; l < static_cast<int>(a.seg.lines.size()); ++l) {
    if (l == kBaselineLine) continue;
    for (const SubLine& sub : split_sublines(a.seg.lines[l], n_s)) {
      SubLineSlot slot{l, sub.sub_index, {}};
      for (const CharBox& c : sub.complete_chars) {
        if (a.eligible({l, c.char_index})) slot.carriers.push_back({l, c.char_index});
      }
      out.push_back(std::move(slot));
    }
  }
  return out;
}

}  // namespace coremark
