#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coremark/analysis.hpp"
#include "coremark/embedder.hpp"
#include "coremark/image.hpp"

namespace coremark {

struct ExtractConfig {
  // Bits to read in raw mode. Ignored when `framed` is set: the 16-bit
  // length prefix is read off the page instead.
  std::size_t length = 0;
  bool framed = false;
  bool es_enabled = false;
  int n_s = 9;
  double lambda = 0.2;
  int t_c = 10;
  int min_blob = 8;
  double selection_margin = 1.0;  // px above T_lambda

  AnalysisParams analysis() const { return {t_c, lambda, min_blob, selection_margin}; }
};

// Mirrors the embedding parameters that the extractor must share.
ExtractConfig mirror(const EmbedConfig& cfg, std::size_t length);

// Majority vote with ties going to 1.
std::uint8_t majority(const std::vector<std::uint8_t>& votes);

// Every bit position the page offers, in embedding order: one per eligible
// character in plain mode, one per usable sub-line in ES mode.
Bits read_stream(const PageAnalysis& a, const ExtractConfig& cfg);

// Raw-mode stream of exactly cfg.length bits. In ES mode spare sub-lines
// hold cyclic repeats of the payload and are folded in by majority.
// Throws InsufficientBits if the page offers fewer than cfg.length slots.
Bits extract_page(const BinaryImage& page, const ExtractConfig& cfg);

// Framed mode: reads the prefix, then prefix + body + check bits, and
// returns the whole frame (still scrambled if a key was used). Throws
// InsufficientBits.
Bits extract_frame(const BinaryImage& page, const ExtractConfig& cfg);

struct ExtractReport {
  Bits bits;
  double acc = 0.0;
};

// Raw extraction of truth.size() bits scored against `truth`. Throws
// LengthMismatch if cfg.length is set and differs from the truth length.
ExtractReport extract_with_report(const BinaryImage& page,
                                  const ExtractConfig& cfg, const Bits& truth);

// Per-character debug trace: line, char, n_core, l_core, T_delta, bit.
std::string trace_json(const BinaryImage& page, const ExtractConfig& cfg);

}  // namespace coremark
