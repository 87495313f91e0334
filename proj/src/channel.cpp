#include "coremark/channel.hpp"

#include <jpeglib.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "coremark/error.hpp"
#include "coremark/metrics.hpp"
#include "json.hpp"

namespace coremark {

std::string_view to_string(AttackKind k) {
  switch (k) {
    case AttackKind::Jpeg: return "jpeg";
    case AttackKind::Scale: return "scale";
    case AttackKind::Screenshot: return "screenshot";
    case AttackKind::GaussianNoise: return "gaussian_noise";
    case AttackKind::SaltPepper: return "salt_pepper";
    case AttackKind::Rebinarize: return "rebinarize";
  }
  return "unknown";
}

AttackKind attack_kind_from_string(std::string_view name) {
  for (AttackKind k : {AttackKind::Jpeg, AttackKind::Scale,
                       AttackKind::Screenshot, AttackKind::GaussianNoise,
                       AttackKind::SaltPepper, AttackKind::Rebinarize}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::InvalidParams,
              "unknown attack '" + std::string(name) + "'");
}

void validate(const AttackSpec& s) {
  const double p = s.param;
  bool ok = std::isfinite(p);
  switch (s.kind) {
    case AttackKind::Jpeg: ok = ok && p >= 5 && p <= 95; break;
    case AttackKind::Scale: ok = ok && p > 0.2 && p <= 3.0; break;
    case AttackKind::Screenshot: ok = ok && p > 0.3 && p <= 0.95; break;
    case AttackKind::GaussianNoise: ok = ok && p >= 0 && p <= 64; break;
    case AttackKind::SaltPepper: ok = ok && p >= 0 && p <= 0.05; break;
    case AttackKind::Rebinarize: ok = ok && p > 0 && p < 255; break;
  }
  if (!ok) {
    throw Error(ErrorCode::InvalidParams,
                std::string(to_string(s.kind)) + " parameter " +
                    std::to_string(p) + " out of range");
  }
}

GrayImage resize_bilinear(const GrayImage& img, int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidParams, "resize target is empty");
  }
  GrayImage out(width, height);
  const double sx = static_cast<double>(img.width()) / width;
  const double sy = static_cast<double>(img.height()) / height;
  std::vector<int> x0(width), x1(width);
  std::vector<double> fx(width);
  for (int x = 0; x < width; ++x) {
    double s = (x + 0.5) * sx - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(img.width() - 1));
    x0[x] = static_cast<int>(s);
    x1[x] = std::min(x0[x] + 1, img.width() - 1);
    fx[x] = s - x0[x];
  }
  for (int y = 0; y < height; ++y) {
    double s = (y + 0.5) * sy - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(img.height() - 1));
    const int y0 = static_cast<int>(s);
    const int y1 = std::min(y0 + 1, img.height() - 1);
    const double fy = s - y0;
    for (int x = 0; x < width; ++x) {
      const double top = img.at(x0[x], y0) * (1 - fx[x]) + img.at(x1[x], y0) * fx[x];
      const double bot = img.at(x0[x], y1) * (1 - fx[x]) + img.at(x1[x], y1) * fx[x];
      const double v = top * (1 - fy) + bot * fy;
      out.at(x, y) = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
    }
  }
  return out;
}

namespace {

struct JpegErr {
  jpeg_error_mgr mgr;
  std::jmp_buf jump;
};

void jpeg_fail(j_common_ptr cinfo) {
  std::longjmp(reinterpret_cast<JpegErr*>(cinfo->err)->jump, 1);
}

GrayImage jpeg_roundtrip(const GrayImage& img, int quality) {
  unsigned char* buf = nullptr;
  unsigned long size = 0;
  {
    jpeg_compress_struct c{};
    JpegErr err{};
    c.err = jpeg_std_error(&err.mgr);
    err.mgr.error_exit = jpeg_fail;
    if (setjmp(err.jump)) {
      jpeg_destroy_compress(&c);
      std::free(buf);
      throw Error(ErrorCode::InvalidArgument, "JPEG encoding failed");
    }
    jpeg_create_compress(&c);
    jpeg_mem_dest(&c, &buf, &size);
    c.image_width = static_cast<JDIMENSION>(img.width());
    c.image_height = static_cast<JDIMENSION>(img.height());
    c.input_components = 1;
    c.in_color_space = JCS_GRAYSCALE;
    jpeg_set_defaults(&c);
    jpeg_set_quality(&c, quality, TRUE);
    jpeg_start_compress(&c, TRUE);
    while (c.next_scanline < c.image_height) {
      JSAMPROW row = const_cast<JSAMPROW>(img.pixels().data() +
                                          static_cast<std::size_t>(c.next_scanline) * img.width());
      jpeg_write_scanlines(&c, &row, 1);
    }
    jpeg_finish_compress(&c);
    jpeg_destroy_compress(&c);
  }
  GrayImage out(img.width(), img.height());
  jpeg_decompress_struct d{};
  JpegErr err{};
  d.err = jpeg_std_error(&err.mgr);
  err.mgr.error_exit = jpeg_fail;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&d);
    std::free(buf);
    throw Error(ErrorCode::CorruptFile, "JPEG decoding failed");
  }
  jpeg_create_decompress(&d);
  jpeg_mem_src(&d, buf, size);
  jpeg_read_header(&d, TRUE);
  d.out_color_space = JCS_GRAYSCALE;
  jpeg_start_decompress(&d);
  while (d.output_scanline < d.output_height) {
    JSAMPROW row = out.pixels().data() +
                   static_cast<std::size_t>(d.output_scanline) * out.width();
    jpeg_read_scanlines(&d, &row, 1);
  }
  jpeg_finish_decompress(&d);
  jpeg_destroy_decompress(&d);
  std::free(buf);
  return out;
}

// Uniform in (0, 1], from the top 53 bits.
double unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

BinaryImage apply_attack(const BinaryImage& page, const AttackSpec& spec) {
  validate(spec);
  switch (spec.kind) {
    case AttackKind::Jpeg:
      return binarize(jpeg_roundtrip(to_gray(page), static_cast<int>(std::lround(spec.param))));
    case AttackKind::Scale: {
      const int w = std::max(1, static_cast<int>(std::lround(page.width() * spec.param)));
      const int h = std::max(1, static_cast<int>(std::lround(page.height() * spec.param)));
      return binarize(resize_bilinear(to_gray(page), w, h));
    }
    case AttackKind::Screenshot: {
      const int w = std::max(1, static_cast<int>(std::lround(page.width() * spec.param)));
      const int h = std::max(1, static_cast<int>(std::lround(page.height() * spec.param)));
      const GrayImage down = resize_bilinear(to_gray(page), w, h);
      return binarize(resize_bilinear(down, page.width(), page.height()));
    }
    case AttackKind::GaussianNoise: {
      GrayImage g = to_gray(page);
      std::mt19937_64 rng(spec.seed);
      for (auto& v : g.pixels()) {
        // Box-Muller, one normal per pair of uniforms.
        const double z = std::sqrt(-2.0 * std::log(unit(rng))) *
                         std::cos(2.0 * std::numbers::pi * unit(rng));
        v = static_cast<std::uint8_t>(
            std::lround(std::clamp(v + spec.param * z, 0.0, 255.0)));
      }
      return binarize(g);
    }
    case AttackKind::SaltPepper: {
      BinaryImage out = page;
      std::mt19937_64 rng(spec.seed);
      for (int y = 0; y < out.height(); ++y) {
        for (int x = 0; x < out.width(); ++x) {
          if (unit(rng) <= spec.param) out.at(x, y) ^= 1;
        }
      }
      return out;
    }
    case AttackKind::Rebinarize:
      return binarize(to_gray(page), static_cast<int>(std::lround(spec.param)));
  }
  return page;
}

EvalReport attack_suite(const BinaryImage& original,
                        const BinaryImage& watermarked, const Bits& payload,
                        const std::vector<AttackSpec>& specs,
                        const ExtractConfig& cfg) {
  const QualityMetrics q = quality(original, watermarked);
  EvalReport report;
  for (const AttackSpec& spec : specs) {
    const auto t0 = std::chrono::steady_clock::now();
    EvalRow row;
    row.spec = spec;
    row.psnr = q.psnr;
    row.ssim = q.ssim;
    try {
      const BinaryImage attacked = apply_attack(watermarked, spec);
      row.acc = extract_with_report(attacked, cfg, payload).acc;
    } catch (const Error& e) {
      row.acc = 0.0;
      row.error = e.what();
    }
    row.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

nlohmann::json row_json(const EvalRow& r) {
  nlohmann::json j{{"attack", to_string(r.spec.kind)},
                   {"params", {{"value", r.spec.param}}},
                   {"seed", r.spec.seed},
                   {"acc", r.acc},
                   {"ssim", r.ssim},
                   {"runtime_ms", r.runtime_ms}};
  j["psnr"] = std::isinf(r.psnr) ? nlohmann::json("INFINITE") : nlohmann::json(r.psnr);
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

}  // namespace

std::string to_json(const EvalReport& report) {
  nlohmann::json j;
  j["schema"] = 1;
  j["rows"] = nlohmann::json::array();
  for (const EvalRow& r : report.rows) j["rows"].push_back(row_json(r));
  return j.dump(2);
}

std::string to_csv(const EvalReport& report) {
  std::ostringstream os;
  os << "attack,param,seed,acc,psnr,ssim,runtime_ms\n";
  for (const EvalRow& r : report.rows) {
    os << to_string(r.spec.kind) << ',' << r.spec.param << ',' << r.spec.seed
       << ',' << r.acc << ',';
    if (std::isinf(r.psnr)) os << "INFINITE";
    else os << r.psnr;
    os << ',' << r.ssim << ',' << r.runtime_ms << '\n';
  }
  return os.str();
}

std::vector<AttackSpec> parse_attacks(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidParams, std::string("attack file: ") + e.what());
  }
  if (!j.is_array()) {
    throw Error(ErrorCode::InvalidParams, "attack file must hold a JSON array");
  }
  std::vector<AttackSpec> out;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string() ||
        !e.contains("param") || !e["param"].is_number()) {
      throw Error(ErrorCode::InvalidParams,
                  "each attack needs a string 'kind' and a numeric 'param'");
    }
    AttackSpec s;
    s.kind = attack_kind_from_string(e["kind"].get<std::string>());
    s.param = e["param"].get<double>();
    if (e.contains("seed")) {
      if (!e["seed"].is_number_unsigned()) {
        throw Error(ErrorCode::InvalidParams, "'seed' must be a non-negative integer");
      }
      s.seed = e["seed"].get<std::uint64_t>();
    }
    validate(s);
    out.push_back(s);
  }
  return out;
}

}  // namespace coremark
