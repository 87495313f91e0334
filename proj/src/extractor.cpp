#include "coremark/extractor.hpp"

#include "coremark/error.hpp"
#include "coremark/metrics.hpp"
#include "json.hpp"

namespace coremark {

ExtractConfig mirror(const EmbedConfig& cfg, std::size_t length) {
  ExtractConfig e;
  e.length = length;
  e.es_enabled = cfg.es_enabled;
  e.n_s = cfg.n_s;
  e.lambda = cfg.lambda;
  e.t_c = cfg.t_c;
  e.min_blob = cfg.min_blob;
  e.selection_margin = cfg.selection_margin;
  return e;
}

std::uint8_t majority(const std::vector<std::uint8_t>& votes) {
  std::size_t ones = 0;
  for (std::uint8_t v : votes) ones += v;
  return 2 * ones >= votes.size() ? 1 : 0;
}

namespace {

// One vote vector per bit slot: a single vote per eligible character in
// plain mode, every complete carrier's vote for an ES sub-line.
std::vector<std::vector<std::uint8_t>> slot_votes(const PageAnalysis& a,
                                                  const ExtractConfig& cfg) {
  std::vector<std::vector<std::uint8_t>> out;
  if (!cfg.es_enabled) {
    for (const CharRef& c : eligible_chars(a)) {
      out.push_back({decode_bit(a.t_delta, a.core(c).thickness())});
    }
    return out;
  }
  for (const SubLineSlot& s : usable_sublines(a, cfg.n_s)) {
    std::vector<std::uint8_t> v;
    for (const CharRef& c : s.carriers) {
      v.push_back(decode_bit(a.t_delta, a.core(c).thickness()));
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Folds cyclic repeats of a `period`-bit payload: majority over the copies'
// sub-line bits, then over all pooled character votes, then 1. Sub-lines
// without carriers do not vote.
Bits fold(const std::vector<std::vector<std::uint8_t>>& votes,
          std::size_t period) {
  Bits out(period);
  for (std::size_t p = 0; p < period; ++p) {
    std::size_t ones = 0, copies = 0, pooled_ones = 0, pooled = 0;
    for (std::size_t u = p; u < votes.size(); u += period) {
      if (votes[u].empty()) continue;
      ones += majority(votes[u]);
      ++copies;
      for (std::uint8_t v : votes[u]) pooled_ones += v;
      pooled += votes[u].size();
    }
    if (2 * ones != copies) {
      out[p] = 2 * ones > copies ? 1 : 0;
    } else {
      out[p] = 2 * pooled_ones >= pooled ? 1 : 0;
    }
  }
  return out;
}

Bits take(const std::vector<std::vector<std::uint8_t>>& votes,
          std::size_t length, bool es) {
  if (votes.size() < length) {
    throw Error(ErrorCode::InsufficientBits,
                "page offers " + std::to_string(votes.size()) + " slots, " +
                    std::to_string(length) + " requested");
  }
  if (es) return fold(votes, length);
  Bits out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(votes[i][0]);
  return out;
}

}  // namespace

Bits read_stream(const PageAnalysis& a, const ExtractConfig& cfg) {
  Bits out;
  for (const auto& v : slot_votes(a, cfg)) out.push_back(majority(v));
  return out;
}

Bits extract_page(const BinaryImage& page, const ExtractConfig& cfg) {
  if (cfg.framed) return extract_frame(page, cfg);
  if (cfg.length == 0) {
    throw Error(ErrorCode::InvalidParams, "raw extraction needs a length");
  }
  const PageAnalysis a = analyze_page(page, cfg.analysis());
  return take(slot_votes(a, cfg), cfg.length, cfg.es_enabled);
}

Bits extract_frame(const BinaryImage& page, const ExtractConfig& cfg) {
  const PageAnalysis a = analyze_page(page, cfg.analysis());
  const auto votes = slot_votes(a, cfg);
  if (votes.size() < 16) {
    throw Error(ErrorCode::InsufficientBits,
                "page offers fewer than 16 slots for the length prefix");
  }
  std::size_t len = 0;
  for (std::size_t i = 0; i < 16; ++i) len = (len << 1) | majority(votes[i]);
  return take(votes, 16 + len + 8, cfg.es_enabled);
}

ExtractReport extract_with_report(const BinaryImage& page,
                                  const ExtractConfig& cfg,
                                  const Bits& truth) {
  if (cfg.length != 0 && cfg.length != truth.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "configured length differs from the truth length");
  }
  ExtractConfig c = cfg;
  c.framed = false;
  c.length = truth.size();
  ExtractReport r;
  r.bits = extract_page(page, c);
  r.acc = accuracy(r.bits, truth);
  return r;
}

std::string trace_json(const BinaryImage& page, const ExtractConfig& cfg) {
  const PageAnalysis a = analyze_page(page, cfg.analysis());
  nlohmann::json j;
  j["schema"] = 1;
  j["t_delta"] = a.t_delta;
  j["t_lambda"] = a.t_lambda;
  j["chars"] = nlohmann::json::array();
  for (int l = 0; l < static_cast<int>(a.seg.lines.size()); ++l) {
    for (int i = 0; i < static_cast<int>(a.seg.lines[l].chars.size()); ++i) {
      const CoreDescriptor& core = a.core({l, i});
      j["chars"].push_back({{"line", l},
                            {"char", i},
                            {"n_core", core.thickness()},
                            {"l_core", core.mean_length},
                            {"eligible", a.eligible({l, i})},
                            {"bit", decode_bit(a.t_delta, core.thickness())}});
    }
  }
  return j.dump(2);
}

}  // namespace coremark
