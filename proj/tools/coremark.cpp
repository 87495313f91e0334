// coremark: embed, extract, attack, eval and corpus subcommands.
//
// Exit codes: 0 ok, 1 other failure, 2 bad input, 3 capacity, 4 I/O,
// 5 insufficient bits or failed checksum, 6 malformed attack file.

#include <cstdlib>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "coremark/channel.hpp"
#include "coremark/corpus.hpp"
#include "coremark/embedder.hpp"
#include "coremark/error.hpp"
#include "coremark/extractor.hpp"
#include "coremark/image_io.hpp"
#include "coremark/metrics.hpp"
#include "coremark/payload.hpp"
#include "json.hpp"

using namespace coremark;
using nlohmann::json;

namespace {

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnsupportedFormat:
    case ErrorCode::CorruptFile:
    case ErrorCode::NoTextFound:
    case ErrorCode::TooFewLines:
    case ErrorCode::EmptyBaseline:
    case ErrorCode::EmptyDocument:
    case ErrorCode::LineTooNarrow:
    case ErrorCode::InvalidParams:
    case ErrorCode::InvalidArgument:
    case ErrorCode::KeyTooShort:
    case ErrorCode::PayloadTooLong:
    case ErrorCode::InfeasibleTarget:
    case ErrorCode::UnknownGlyph:
      return 2;
    case ErrorCode::InsufficientCapacity:
      return 3;
    case ErrorCode::IoError:
      return 4;
    case ErrorCode::InsufficientBits:
    case ErrorCode::ChecksumFailed:
      return 5;
    default:
      return 1;
  }
}

struct KeyOpts {
  std::string env;
  std::string file;
  std::uint64_t nonce = 0;

  std::optional<Key> load() const {
    if (!env.empty()) {
      const char* v = std::getenv(env.c_str());
      if (v == nullptr) {
        throw Error(ErrorCode::InvalidArgument,
                    "environment variable " + env + " is not set");
      }
      return Key::from_hex(v);
    }
    if (!file.empty()) {
      const auto bytes = read_file(file);
      return Key::from_hex(std::string(bytes.begin(), bytes.end()));
    }
    return std::nullopt;
  }
};

void add_embed_flags(CLI::App* app, EmbedConfig& cfg) {
  app->add_option("--beta", cfg.beta, "embedding strength")->capture_default_str();
  app->add_option("--lambda", cfg.lambda, "selection percentile")->capture_default_str();
  app->add_option("--tc", cfg.t_c, "cluster tolerance (px)")->capture_default_str();
  app->add_option("--ns", cfg.n_s, "sub-lines per line")->capture_default_str();
  app->add_flag("--es", cfg.es_enabled, "enable the ES modulator");
  app->add_option("--min-blob", cfg.min_blob, "speckle size filter")->capture_default_str();
  app->add_option("--margin", cfg.selection_margin, "selection margin above T_lambda (px)")
      ->capture_default_str();
}

void add_key_flags(CLI::App* app, KeyOpts& k) {
  auto* env = app->add_option("--key-env", k.env, "env var holding a hex key");
  app->add_option("--key-file", k.file, "file holding a hex key")->excludes(env);
  app->add_option("--nonce", k.nonce, "scramble nonce")->capture_default_str();
}

json config_json(const EmbedConfig& cfg) { return json::parse(to_json(cfg)); }

json key_echo(const std::optional<Key>& key, const KeyOpts& k) {
  if (!key) return nullptr;
  return {{"source", k.env.empty() ? "file" : "env"},
          {"bytes", key->bytes().size()},
          {"nonce", k.nonce}};
}

Bits random_bits(std::mt19937_64& rng, std::size_t n) {
  Bits b(n);
  for (auto& v : b) v = static_cast<std::uint8_t>(rng() & 1);
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Core-thickness watermarking for binary text images"};
  app.require_subcommand(1);

  EmbedConfig cfg;
  KeyOpts keyopts;

  // embed
  std::string in_path, out_path, message, plan_path;
  bool framed = false;
  auto* embed = app.add_subcommand("embed", "watermark a page");
  embed->add_option("--in", in_path, "input page (P4 or PNG)")->required();
  embed->add_option("--out", out_path, "output P4 page")->required();
  embed->add_option("--message", message, "0x-hex or 0/1 string")->required();
  embed->add_option("--plan", plan_path, "write the embed plan JSON here");
  embed->add_flag("--framed", framed, "add length prefix and CRC-8");
  embed->add_flag("--strict-paper-mode", cfg.strict_paper_mode,
                  "literal thickness table without margin");
  add_embed_flags(embed, cfg);
  add_key_flags(embed, keyopts);

  // extract
  std::size_t length = 0;
  std::string truth, trace_path;
  auto* extract = app.add_subcommand("extract", "read the watermark");
  extract->add_option("--in", in_path, "watermarked page")->required();
  auto* len_opt = extract->add_option("--length", length, "raw bit count");
  extract->add_flag("--framed", framed, "read a framed payload")->excludes(len_opt);
  extract->add_option("--truth", truth, "expected message; prints ACC");
  extract->add_option("--trace", trace_path, "write a per-character trace JSON");
  add_embed_flags(extract, cfg);
  add_key_flags(extract, keyopts);

  // attack
  std::string kind;
  double param = 0.0;
  std::uint64_t seed = 0;
  auto* attack = app.add_subcommand("attack", "apply one channel attack");
  attack->add_option("--in", in_path, "input page")->required();
  attack->add_option("--out", out_path, "output P4 page")->required();
  attack->add_option("--kind", kind,
                     "jpeg|scale|screenshot|gaussian_noise|salt_pepper|rebinarize")
      ->required();
  attack->add_option("--param", param, "attack parameter")->required();
  attack->add_option("--seed", seed, "RNG seed")->capture_default_str();

  // eval
  std::string corpus_dir, attacks_path, csv_path, json_path;
  int payload_bits = 32;
  int payloads = 1;
  auto* eval = app.add_subcommand("eval", "embed, attack and extract over a corpus");
  eval->add_option("--corpus", corpus_dir, "corpus directory")->required();
  eval->add_option("--attacks", attacks_path, "JSON attack list")->required();
  eval->add_option("--bits", payload_bits, "payload length")->capture_default_str();
  eval->add_option("--payloads", payloads, "random payloads per page")->capture_default_str();
  eval->add_option("--seed", seed, "payload RNG seed")->capture_default_str();
  eval->add_option("--csv", csv_path, "write per-row CSV here");
  eval->add_option("--json", json_path, "write the report here instead of stdout");
  add_embed_flags(eval, cfg);

  // corpus
  CorpusSpec spec;
  auto* corpus = app.add_subcommand("corpus", "generate a synthetic page corpus");
  corpus->add_option("--out", out_path, "output directory")->required();
  corpus->add_option("--pages", spec.n_pages)->capture_default_str();
  corpus->add_option("--lines", spec.lines_per_page)->capture_default_str();
  corpus->add_option("--chars", spec.chars_per_line)->capture_default_str();
  corpus->add_option("--seed", spec.seed)->capture_default_str();
  corpus->add_option("--scale", spec.scale)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (embed->parsed()) {
      const BinaryImage page = load_image(in_path);
      const std::optional<Key> key = keyopts.load();
      Bits bits = parse_message(message);
      if (key) bits = scramble(bits, *key, keyopts.nonce);
      if (framed) bits = frame(bits);
      const EmbedResult r = embed_page(page, bits, cfg);
      save_image(r.image, out_path);
      if (!plan_path.empty()) {
        const std::string plan = to_json(r.plan);
        write_file(plan_path, {plan.begin(), plan.end()});
      }
      json j = json::parse(to_json(r.report));
      j["config"] = config_json(cfg);
      j["config"]["framed"] = framed;
      j["config"]["key"] = key_echo(key, keyopts);
      j["embedded_bits"] = bits.size();
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (extract->parsed()) {
      const BinaryImage page = load_image(in_path);
      const std::optional<Key> key = keyopts.load();
      std::optional<Bits> expected;
      if (!truth.empty()) expected = parse_message(truth);
      ExtractConfig ec = mirror(cfg, length);
      ec.framed = framed;
      if (!framed && length == 0) {
        if (!expected) {
          throw Error(ErrorCode::InvalidArgument,
                      "extract needs --length, --framed or --truth");
        }
        ec.length = expected->size();
      }
      if (!trace_path.empty()) {
        const std::string t = trace_json(page, ec);
        write_file(trace_path, {t.begin(), t.end()});
      }
      Bits bits = extract_page(page, ec);
      if (framed) bits = unframe(bits);
      if (key && !bits.empty()) bits = scramble(bits, *key, keyopts.nonce);
      std::cout << to_bit_string(bits) << '\n';
      if (expected) {
        std::cout << "ACC " << accuracy(bits, *expected) << '\n';
      }
      return 0;
    }

    if (attack->parsed()) {
      const AttackSpec s{attack_kind_from_string(kind), param, seed};
      save_image(apply_attack(load_image(in_path), s), out_path);
      return 0;
    }

    if (eval->parsed()) {
      std::vector<AttackSpec> specs;
      {
        const auto bytes = read_file(attacks_path);
        try {
          specs = parse_attacks(std::string(bytes.begin(), bytes.end()));
        } catch (const Error& e) {
          std::cerr << json{{"error", std::string(to_string(e.code()))},
                            {"message", e.what()}}
                           .dump()
                    << '\n';
          return 6;
        }
      }
      const std::vector<CorpusPage> pages = load_corpus(corpus_dir);
      if (pages.empty()) {
        throw Error(ErrorCode::InvalidArgument, "no .pbm pages in " + corpus_dir);
      }
      // Payloads are drawn up front so the output does not depend on
      // scheduling.
      std::mt19937_64 rng(seed);
      std::vector<std::vector<Bits>> pays(pages.size());
      for (auto& p : pays) {
        for (int i = 0; i < payloads; ++i) {
          p.push_back(random_bits(rng, static_cast<std::size_t>(payload_bits)));
        }
      }
      std::vector<std::future<std::vector<EvalRow>>> jobs;
      for (std::size_t i = 0; i < pages.size(); ++i) {
        jobs.push_back(std::async(std::launch::async, [&, i] {
          std::vector<EvalRow> rows;
          for (const Bits& p : pays[i]) {
            const EmbedResult r = embed_page(pages[i].image, p, cfg);
            const EvalReport rep = attack_suite(pages[i].image, r.image, p,
                                                specs, mirror(cfg, p.size()));
            rows.insert(rows.end(), rep.rows.begin(), rep.rows.end());
          }
          return rows;
        }));
      }
      EvalReport all;
      for (auto& j : jobs) {
        const auto rows = j.get();
        all.rows.insert(all.rows.end(), rows.begin(), rows.end());
      }

      json out = json::parse(to_json(all));
      out["config"] = config_json(cfg);
      out["config"]["seed"] = seed;
      out["config"]["bits"] = payload_bits;
      out["config"]["payloads"] = payloads;
      out["pages"] = pages.size();
      json summary = json::array();
      for (std::size_t s = 0; s < specs.size(); ++s) {
        double acc = 0, psnr = 0, ssim = 0;
        std::size_t n = 0;
        for (std::size_t r = s; r < all.rows.size(); r += specs.size()) {
          acc += all.rows[r].acc;
          psnr += all.rows[r].psnr;
          ssim += all.rows[r].ssim;
          ++n;
        }
        summary.push_back({{"attack", to_string(specs[s].kind)},
                           {"param", specs[s].param},
                           {"seed", specs[s].seed},
                           {"mean_acc", acc / n},
                           {"mean_psnr", std::isinf(psnr) ? json("INFINITE") : json(psnr / n)},
                           {"mean_ssim", ssim / n}});
      }
      out["summary"] = summary;
      if (!csv_path.empty()) {
        const std::string csv = to_csv(all);
        write_file(csv_path, {csv.begin(), csv.end()});
      }
      if (!json_path.empty()) {
        const std::string s = out.dump(2);
        write_file(json_path, {s.begin(), s.end()});
      } else {
        std::cout << out.dump(2) << '\n';
      }
      return 0;
    }

    if (corpus->parsed()) {
      make_corpus(spec, out_path);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << json{{"error", std::string(to_string(e.code()))},
                      {"message", e.what()}}
                     .dump()
              << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 1;
}
