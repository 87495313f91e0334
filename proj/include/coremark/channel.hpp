#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "coremark/extractor.hpp"
#include "coremark/image.hpp"

namespace coremark {

enum class AttackKind {
  Jpeg,           // param: quality in [5, 95]
  Scale,          // param: factor in (0.2, 3]
  Screenshot,     // param: down factor in (0.3, 0.95]
  GaussianNoise,  // param: sigma in [0, 64]
  SaltPepper,     // param: density in [0, 0.05]
  Rebinarize,     // param: threshold in (0, 255)
};

std::string_view to_string(AttackKind k);
// Throws InvalidParams for an unknown name.
AttackKind attack_kind_from_string(std::string_view name);

struct AttackSpec {
  AttackKind kind = AttackKind::Rebinarize;
  double param = 128.0;
  std::uint64_t seed = 0;
};

// Throws InvalidParams if the parameter is outside its range.
void validate(const AttackSpec& spec);

// Bilinear resample of a gray image to `width` x `height`, sampling at pixel
// centres. Same size is the identity.
GrayImage resize_bilinear(const GrayImage& img, int width, int height);

// Every attack ends in a binary image; gray stages are re-binarized at 128
// except for Rebinarize, which uses its own threshold.
BinaryImage apply_attack(const BinaryImage& page, const AttackSpec& spec);

struct EvalRow {
  AttackSpec spec;
  double acc = 0.0;
  double psnr = 0.0;  // original vs watermarked
  double ssim = 1.0;
  double runtime_ms = 0.0;
  std::string error;  // extraction failure, recorded instead of an ACC
};

struct EvalReport {
  std::vector<EvalRow> rows;
};

// attack -> extract -> ACC for each spec. Extraction errors are recorded in
// the row with ACC 0.
EvalReport attack_suite(const BinaryImage& original,
                        const BinaryImage& watermarked, const Bits& payload,
                        const std::vector<AttackSpec>& specs,
                        const ExtractConfig& cfg);

std::string to_json(const EvalReport& report);
std::string to_csv(const EvalReport& report);

// Parses [{"kind": "jpeg", "param": 50, "seed": 0}, ...]. Throws
// InvalidParams on malformed input.
std::vector<AttackSpec> parse_attacks(std::string_view json_text);

}  // namespace coremark
