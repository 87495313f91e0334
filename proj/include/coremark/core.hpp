#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coremark/image.hpp"

// Core model: the dominant cluster of aligned, consecutive black runs in a
// character image. All indices here are 0-based; scanlines are rows for a
// horizontal core and columns for a vertical one.
namespace coremark {

enum class Direction { Horizontal, Vertical };

std::string_view to_string(Direction d);

struct Run {
  int length = 0;
  Pixel value = kWhite;
  friend bool operator==(const Run&, const Run&) = default;
};

// Run-length code of one scanline. Adjacent runs always alternate in value.
std::vector<Run> rlc(std::span<const Pixel> scanline);
std::vector<Pixel> decode_runs(std::span<const Run> runs);

struct LongestRun {
  std::size_t index = 0;  // j_max, 0-based
  Run run;
  int start = 0;  // offset of the run's first pixel in the scanline
};

// Longest run of either colour; the first one wins ties.
LongestRun longest_run(std::span<const Run> runs);

struct DirectionStats {
  long u_h = 0;  // summed lengths of rows whose longest run is black
  long k_h = 0;  // number of such rows
  long u_v = 0;
  long k_v = 0;
};

DirectionStats direction_stats(const BinaryImage& glyph);

// Horizontal iff U_h/K_h > U_v/K_v. An empty side (K == 0) never wins, and
// ties go to vertical.
Direction determine_direction(const BinaryImage& glyph);

struct CandidateVector {
  int scanline = 0;
  int start = 0;
  int length = 0;
  friend bool operator==(const CandidateVector&, const CandidateVector&) =
      default;
};

// One candidate per scanline whose longest run is black.
std::vector<CandidateVector> candidate_vectors(const BinaryImage& glyph,
                                               Direction d);

struct ClusterStats {
  std::size_t begin = 0;  // first candidate (index into the candidate list)
  std::size_t count = 0;
  long length_sum = 0;
  double mean_length() const {
    return static_cast<double>(length_sum) / static_cast<double>(count);
  }
};

// Splits the ordered candidate list into clusters in a single pass: a
// candidate joins the running cluster iff it sits on the next scanline and
// both its start and its end are within `t_c` of the previous candidate's.
std::vector<ClusterStats> cluster_runs(std::span<const CandidateVector> cands,
                                       int t_c);

struct CoreDescriptor {
  Direction direction = Direction::Horizontal;
  std::vector<int> indices;  // consecutive scanline indices
  std::vector<int> starts;
  std::vector<int> lengths;
  double mean_length = 0.0;

  int thickness() const { return static_cast<int>(indices.size()); }
  friend bool operator==(const CoreDescriptor&, const CoreDescriptor&) =
      default;
};

// Picks the cluster with the largest mean length (first on ties).
CoreDescriptor cluster_candidates(std::span<const CandidateVector> cands,
                                  int t_c,
                                  Direction d = Direction::Horizontal);

// determine_direction -> candidate_vectors -> cluster_candidates. Vertical
// cores are computed on the transposed glyph. If no scanline in the chosen
// direction has a black longest run, the single longest black run becomes a
// one-scanline core.
CoreDescriptor extract_core(const BinaryImage& glyph, int t_c);

std::string core_to_json(const CoreDescriptor& core);

}  // namespace coremark
