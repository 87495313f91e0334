#include "coremark/core.hpp"

#include <cstdlib>

#include "coremark/error.hpp"
#include "json.hpp"

namespace coremark {

std::string_view to_string(Direction d) {
  return d == Direction::Horizontal ? "horizontal" : "vertical";
}

std::vector<Run> rlc(std::span<const Pixel> scanline) {
  std::vector<Run> runs;
  for (Pixel p : scanline) {
    if (!runs.empty() && runs.back().value == p) {
      ++runs.back().length;
    } else {
      runs.push_back({1, p});
    }
  }
  return runs;
}

std::vector<Pixel> decode_runs(std::span<const Run> runs) {
  std::vector<Pixel> out;
  for (const Run& r : runs) out.insert(out.end(), r.length, r.value);
  return out;
}

LongestRun longest_run(std::span<const Run> runs) {
  if (runs.empty()) {
    throw Error(ErrorCode::InvalidArgument, "longest_run of empty scanline");
  }
  LongestRun best{0, runs[0], 0};
  int offset = 0;
  for (std::size_t j = 0; j < runs.size(); ++j) {
    if (runs[j].length > best.run.length) best = {j, runs[j], offset};
    offset += runs[j].length;
  }
  return best;
}

namespace {

// Horizontal pass of the direction statistics and candidates on `img` rows.
void scan_rows(const BinaryImage& img, long& u, long& k,
               std::vector<CandidateVector>* cands) {
  for (int y = 0; y < img.height(); ++y) {
    const auto runs = rlc(img.row(y));
    const LongestRun lr = longest_run(runs);
    if (lr.run.value != kBlack) continue;
    u += lr.run.length;
    ++k;
    if (cands) cands->push_back({y, lr.start, lr.run.length});
  }
}

void require_ink(const BinaryImage& glyph) {
  if (glyph.empty() || !glyph.has_black()) {
    throw Error(ErrorCode::NoBlackPixels, "glyph holds no black pixels");
  }
}

}  // namespace

DirectionStats direction_stats(const BinaryImage& glyph) {
  DirectionStats s;
  scan_rows(glyph, s.u_h, s.k_h, nullptr);
  scan_rows(glyph.transposed(), s.u_v, s.k_v, nullptr);
  return s;
}

Direction determine_direction(const BinaryImage& glyph) {
  require_ink(glyph);
  const DirectionStats s = direction_stats(glyph);
  if (s.k_h == 0) return Direction::Vertical;
  if (s.k_v == 0) return Direction::Horizontal;
  // U_h/K_h > U_v/K_v without division.
  return s.u_h * s.k_v > s.u_v * s.k_h ? Direction::Horizontal
                                       : Direction::Vertical;
}

std::vector<CandidateVector> candidate_vectors(const BinaryImage& glyph,
                                               Direction d) {
  std::vector<CandidateVector> cands;
  long u = 0;
  long k = 0;
  scan_rows(d == Direction::Horizontal ? glyph : glyph.transposed(), u, k,
            &cands);
  return cands;
}

std::vector<ClusterStats> cluster_runs(std::span<const CandidateVector> cands,
                                       int t_c) {
  std::vector<ClusterStats> clusters;
  if (cands.empty()) return clusters;
  ClusterStats cur{0, 1, cands[0].length};
  for (std::size_t i = 1; i < cands.size(); ++i) {
    const CandidateVector& prev = cands[i - 1];
    const CandidateVector& c = cands[i];
    const bool adjacent = c.scanline - prev.scanline == 1;
    const bool starts_close = std::abs(c.start - prev.start) <= t_c;
    const bool ends_close =
        std::abs((c.start + c.length) - (prev.start + prev.length)) <= t_c;
    if (adjacent && starts_close && ends_close) {
      ++cur.count;
      cur.length_sum += c.length;
    } else {
      clusters.push_back(cur);
      cur = {i, 1, c.length};
    }
  }
  clusters.push_back(cur);
  return clusters;
}

CoreDescriptor cluster_candidates(std::span<const CandidateVector> cands,
                                  int t_c, Direction d) {
  if (cands.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no candidate vectors");
  }
  const auto clusters = cluster_runs(cands, t_c);
  const ClusterStats* best = &clusters.front();
  for (const ClusterStats& c : clusters) {
    // Strictly larger mean, compared exactly in integers.
    if (c.length_sum * static_cast<long>(best->count) >
        best->length_sum * static_cast<long>(c.count)) {
      best = &c;
    }
  }
  CoreDescriptor core;
  core.direction = d;
  for (std::size_t i = best->begin; i < best->begin + best->count; ++i) {
    core.indices.push_back(cands[i].scanline);
    core.starts.push_back(cands[i].start);
    core.lengths.push_back(cands[i].length);
  }
  core.mean_length = best->mean_length();
  return core;
}

CoreDescriptor extract_core(const BinaryImage& glyph, int t_c) {
  require_ink(glyph);
  const Direction d = determine_direction(glyph);
  const BinaryImage scan = d == Direction::Horizontal ? glyph
                                                      : glyph.transposed();
  auto cands = candidate_vectors(scan, Direction::Horizontal);
  if (cands.empty()) {
    // No scanline is dominated by ink: fall back to the longest black run.
    CandidateVector best{0, 0, 0};
    for (int y = 0; y < scan.height(); ++y) {
      const auto runs = rlc(scan.row(y));
      int offset = 0;
      for (const Run& r : runs) {
        if (r.value == kBlack && r.length > best.length) best = {y, offset, r.length};
        offset += r.length;
      }
    }
    cands.push_back(best);
  }
  return cluster_candidates(cands, t_c, d);
}

std::string core_to_json(const CoreDescriptor& core) {
  nlohmann::json j = {{"direction", to_string(core.direction)},
                      {"rows", core.indices},
                      {"starts", core.starts},
                      {"lens", core.lengths}};
  return j.dump();
}

}  // namespace coremark
