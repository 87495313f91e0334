#include <random>

#include "coremark/corpus.hpp"
#include "coremark/embedder.hpp"
#include "coremark/extractor.hpp"
#include "coremark/payload.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace coremark;

namespace {

Bits random_bits(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  Bits b(n);
  for (auto& v : b) v = rng() & 1;
  return b;
}

const BinaryImage& page(int i) {
  static const std::vector<RenderedPage> pages = generate_corpus({});
  return pages[i].image;
}

}  // namespace

TEST(Majority, TiesGoToOne) {
  EXPECT_EQ(majority({}), 1);
  EXPECT_EQ(majority({0, 1}), 1);
  EXPECT_EQ(majority({0, 0, 1}), 0);
  EXPECT_EQ(majority({1, 1, 1, 0, 0}), 1);
}

// Any floor((m - 1) / 2) flipped votes out of m leave the majority intact.
TEST(Majority, ToleratesMinorityFlipsExactly) {
  for (int m = 1; m <= 12; ++m) {
    const int tolerable = (m - 1) / 2;
    for (std::uint8_t bit : {0, 1}) {
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        const int flips = __builtin_popcount(mask);
        std::vector<std::uint8_t> votes(m, bit);
        for (int i = 0; i < m; ++i)
          if (mask >> i & 1) votes[i] ^= 1;
        if (flips <= tolerable) {
          EXPECT_EQ(majority(votes), bit) << "m " << m << " mask " << mask;
        }
      }
      // One more flip can break it when m is odd.
      if (m % 2 == 1) {
        std::vector<std::uint8_t> votes(m, bit);
        for (int i = 0; i <= tolerable; ++i) votes[i] ^= 1;
        EXPECT_NE(majority(votes), bit);
      }
    }
  }
}

TEST(Extract, UnattackedIsExact) {
  const Bits payload = random_bits(10, 32);
  const EmbedResult r = embed_page(page(1), payload, {});
  const ExtractReport rep = extract_with_report(r.image, mirror({}, 32), payload);
  EXPECT_DOUBLE_EQ(rep.acc, 100.0);
  EXPECT_EQ(extract_page(r.image, mirror({}, 32)), extract_page(r.image, mirror({}, 32)));
}

TEST(Extract, ComplementTruthScoresZero) {
  const Bits payload = random_bits(11, 32);
  const EmbedResult r = embed_page(page(1), payload, {});
  Bits inverse = payload;
  for (auto& b : inverse) b ^= 1;
  EXPECT_DOUBLE_EQ(extract_with_report(r.image, mirror({}, 0), inverse).acc, 0.0);
}

TEST(Extract, FramedRoundTrip) {
  const Bits body = random_bits(12, 20);
  const EmbedResult r = embed_page(page(2), frame(body), {});
  ExtractConfig ec = mirror({}, 0);
  ec.framed = true;
  EXPECT_EQ(unframe(extract_page(r.image, ec)), body);
}

TEST(Extract, EsRepeatsFold) {
  EmbedConfig cfg;
  cfg.es_enabled = true;
  const Bits payload = random_bits(13, 8);
  const EmbedResult r = embed_page(page(3), payload, cfg);
  const ExtractConfig ec = mirror(cfg, 8);
  EXPECT_EQ(extract_page(r.image, ec), payload);
  const PageAnalysis a = analyze_page(r.image, ec.analysis());
  const Bits stream = read_stream(a, ec);
  EXPECT_EQ(stream.size(), usable_sublines(a, 9).size());
}

TEST(Extract, Errors) {
  EXPECT_CODE(extract_page(page(0), mirror({}, 0)), ErrorCode::InvalidParams);
  EXPECT_CODE(extract_page(page(0), mirror({}, 5000)), ErrorCode::InsufficientBits);
  EXPECT_CODE(extract_with_report(page(0), mirror({}, 3), {1, 0}),
              ErrorCode::LengthMismatch);
}

TEST(Extract, TraceCoversEveryCharacter) {
  const auto j = nlohmann::json::parse(trace_json(page(0), mirror({}, 0)));
  const PageAnalysis a = analyze_page(page(0), {});
  std::size_t n = 0;
  for (const auto& l : a.seg.lines) n += l.chars.size();
  EXPECT_EQ(j["chars"].size(), n);
  EXPECT_EQ(j["t_delta"], a.t_delta);
}
