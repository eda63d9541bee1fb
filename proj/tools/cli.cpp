#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <vector>

#include "perseus/analysis.hpp"
#include "perseus/code.hpp"
#include "perseus/entropy.hpp"

namespace perseus::cli {
namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorKind::Io, "read failed: " + path);
  return data;
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot create " + path);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path);
}

std::unique_ptr<EntropySource> make_rng(const CliConfig& cfg) {
  if (cfg.seed) return std::make_unique<SeededEntropy>(*cfg.seed);
  return std::make_unique<SystemEntropy>();
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

void cmd_gen(const CliConfig& cfg, std::ostream& out) {
  auto rng = make_rng(cfg);
  SessionParams sp{generate_code(cfg.bounds, *rng), NoiseKey::generate(*rng),
                   gen_noise_config(*rng, cfg.proba_lo, cfg.proba_hi)};
  const auto blob = serialize_params(sp);
  write_file(cfg.out_path, blob);

  const auto& b = sp.code.base();
  out << "k=" << b.k() << "\n"
      << "n=" << b.n() << "\n"
      << "mem=" << b.mem() << "\n"
      << "width=" << sp.code.width() << "\n"
      << "weight=" << sp.code.weight() << "\n"
      << "base_rate=" << fmt(b.rate()) << "\n"
      << "punctured_rate=" << fmt(static_cast<double>(b.k() * sp.code.width()) / sp.code.weight()) << "\n"
      << "proba=" << sp.noise.proba << "\n"
      << "filter_weight=" << sp.noise.weight() << "\n"
      << "realized_noise=" << fmt(sp.noise.realized_probability()) << "\n"
      << "mode=" << (sp.noise.proba < kDefaultProbaLo ? "low-entropy" : "default") << "\n"
      << "blob_bytes=" << blob.size() << "\n";
}

void cmd_encode(const CliConfig& cfg, std::ostream& out) {
  const auto sp = deserialize_params(read_file(cfg.params_path));
  const auto data = read_file(cfg.in_path);
  const auto frames = protect(sp, data, cfg.chunk_bytes, cfg.payload_mode);
  const auto container = write_frames(frames);
  write_file(cfg.out_path, container);

  std::vector<std::uint8_t> packed;
  std::size_t coded_bits = 0;
  for (const auto& f : frames) {
    const auto bytes = f.payload_bits().to_bytes();
    packed.insert(packed.end(), bytes.begin(), bytes.end());
    coded_bits += f.coded_bit_len;
  }
  out << "frames=" << frames.size() << "\n"
      << "plain_bytes=" << data.size() << "\n"
      << "coded_bits=" << coded_bits << "\n"
      << "container_bytes=" << container.size() << "\n"
      << "expansion=" << (data.empty() ? "0" : fmt(static_cast<double>(coded_bits) / (8.0 * data.size()))) << "\n"
      << "payload_entropy=" << (packed.empty() ? "0" : fmt(byte_entropy(packed).byte_entropy)) << "\n";
}

void cmd_decode(const CliConfig& cfg, std::ostream& out) {
  const auto sp = deserialize_params(read_file(cfg.params_path));
  const auto frames = read_frames(read_file(cfg.in_path));
  const auto data = unprotect(sp, frames);
  write_file(cfg.out_path, data);
  out << "frames=" << frames.size() << "\n"
      << "plain_bytes=" << data.size() << "\n";
}

void cmd_entropy(const CliConfig& cfg, std::ostream& out) {
  const auto data = read_file(cfg.in_path);
  const auto report = byte_entropy(data);
  out << "sample_bytes=" << report.sample_bytes << "\n"
      << "byte_entropy=" << fmt(report.byte_entropy) << "\n";
}

void cmd_equiv(const CliConfig& cfg, std::ostream& out) {
  const auto sp = deserialize_params(read_file(cfg.params_path));
  const auto eq = equivalent_code(sp.code);
  out << "k=" << eq.k() << "\n"
      << "n=" << eq.n() << "\n"
      << "mem=" << eq.mem() << "\n";
  for (int i = 0; i < eq.k(); ++i) {
    for (int j = 0; j < eq.n(); ++j) {
      out << "f" << (i + 1) << "_" << (j + 1) << "=" << eq.poly(i, j).to_string() << "\n";
    }
  }
}

struct AttackOptions {
  std::size_t trials = 100;
  std::size_t intercept_bits = 10000;
  int max_mem = 6;
  double threshold = 0.10;
  std::vector<double> noise = {0.0, 0.01, 0.02, 0.05, 0.15, 0.25};
};

void cmd_attack_demo(const CliConfig& cfg, const AttackOptions& opt, std::ostream& out) {
  auto rng = make_rng(cfg);
  const auto truth = ConvCode::make(1, 2, 2, {Gf2Poly::from_exponents({0, 2}), Gf2Poly::from_exponents({0, 1, 2})});
  out << "true_code=" << truth.poly(0, 0).to_string() << "," << truth.poly(0, 1).to_string() << "\n";
  for (double p : opt.noise) {
    std::size_t successes = 0;
    std::size_t tested = 0;
    std::size_t candidates = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t t = 0; t < opt.trials; ++t) {
      const auto intercept = make_intercept(truth, opt.intercept_bits / 2, p, *rng);
      const auto r = reconstruct_bruteforce(intercept, opt.max_mem, p, opt.threshold, &truth);
      successes += r.success ? 1 : 0;
      tested = r.tested;
      candidates += r.candidates.size();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out << "p=" << fmt(p, 3) << " trials=" << opt.trials << " intercept_bits=" << opt.intercept_bits
        << " max_mem=" << opt.max_mem << " hypotheses=" << tested
        << " success_rate=" << fmt(static_cast<double>(successes) / static_cast<double>(opt.trials), 3)
        << " mean_candidates=" << fmt(static_cast<double>(candidates) / static_cast<double>(opt.trials), 2)
        << " seconds=" << fmt(secs, 2) << "\n";
  }
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Format: return kExitFormat;
    case ErrorKind::Corruption: return kExitCorruption;
    case ErrorKind::Integrity:
    case ErrorKind::AmbiguousDecode:
    case ErrorKind::LengthMismatch:
    case ErrorKind::MalformedPayload: return kExitIntegrity;
    case ErrorKind::Sequence: return kExitSequence;
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::InvalidParams:
    case ErrorKind::InvalidBounds:
    case ErrorKind::InvalidRange: return kExitInvalidParams;
    default: return kExitFailure;
  }
}

bool parse_proba_range(const std::string& text, int& lo, int& hi, std::string& why) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const auto a = text.substr(0, dots);
      const auto b = text.substr(dots + 2);
      lo = std::stoi(a, &used);
      if (used != a.size()) throw std::invalid_argument(a);
      hi = std::stoi(b, &used);
      if (used != b.size()) throw std::invalid_argument(b);
    }
  } catch (const std::exception&) {
    why = "expected LO..HI percentages, got '" + text + "'";
    return false;
  }
  if (lo < kLowEntropyProbaLo || hi > kDefaultProbaHi || lo > hi) {
    why = "noise probability range must lie within [" + std::to_string(kLowEntropyProbaLo) + "," +
          std::to_string(kDefaultProbaHi) + "] percent";
    return false;
  }
  return true;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Punctured convolutional coding with keyed deterministic noise", "perseus"};
  app.set_config("--config", "", "TOML/INI configuration file; command-line flags take precedence");
  app.require_subcommand(1);

  CliConfig cfg;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Deterministic test RNG seed (omit for OS entropy)");

  auto* gen = app.add_subcommand("gen", "Generate a random encoder, noise key and filter");
  gen->add_option("-o,--out", cfg.out_path, "Parameter blob to write")->required();
  gen->add_option("--k-min", cfg.bounds.k_min);
  gen->add_option("--k-span", cfg.bounds.k_span);
  gen->add_option("--n-min", cfg.bounds.n_min);
  gen->add_option("--n-span", cfg.bounds.n_span);
  gen->add_option("--mem-min", cfg.bounds.mem_min);
  gen->add_option("--mem-span", cfg.bounds.mem_span);
  gen->add_option("--width-min", cfg.bounds.mwidth_min);
  gen->add_option("--width-span", cfg.bounds.mwidth_span);
  gen->add_option("--puncture-divisor", cfg.bounds.puncture_divisor, "nbzero = n*M / divisor");
  std::string proba_text = std::to_string(kDefaultProbaLo) + ".." + std::to_string(kDefaultProbaHi);
  gen->add_option("--proba", proba_text, "Noise probability range LO..HI in percent (below 15 = low-entropy mode)");

  auto* enc = app.add_subcommand("encode", "Protect a file");
  enc->add_option("-p,--params", cfg.params_path)->required()->check(CLI::ExistingFile);
  enc->add_option("-i,--in", cfg.in_path)->required()->check(CLI::ExistingFile);
  enc->add_option("-o,--out", cfg.out_path)->required();
  enc->add_option("--chunk-bytes", cfg.chunk_bytes)->check(CLI::PositiveNumber);
  // The enum's underlying type is a byte, so the validator text is spelled out.
  enc->add_option("--payload-mode", cfg.payload_mode, "Transport encoding of each frame payload")
      ->transform(CLI::CheckedTransformer(std::map<std::string, PayloadMode>{{"hex", PayloadMode::Hex},
                                                                             {"binary", PayloadMode::Binary}})
                      .description("hex|binary"));

  auto* dec = app.add_subcommand("decode", "Recover a protected file");
  dec->add_option("-p,--params", cfg.params_path)->required()->check(CLI::ExistingFile);
  dec->add_option("-i,--in", cfg.in_path)->required()->check(CLI::ExistingFile);
  dec->add_option("-o,--out", cfg.out_path)->required();

  auto* ent = app.add_subcommand("entropy", "Byte entropy of a file");
  ent->add_option("-i,--in", cfg.in_path)->required()->check(CLI::ExistingFile);

  AttackOptions attack;
  auto* atk = app.add_subcommand("attack-demo", "Brute-force reconstruction sweep over noise levels");
  atk->add_option("--trials", attack.trials)->check(CLI::PositiveNumber);
  atk->add_option("--intercept-bits", attack.intercept_bits)->check(CLI::Range(std::size_t{64}, std::size_t{1} << 24));
  atk->add_option("--max-mem", attack.max_mem)->check(CLI::Range(2, kMaxReconstructionMem));
  atk->add_option("--threshold", attack.threshold)->check(CLI::Range(0.0, 0.5));
  atk->add_option("--noise", attack.noise, "Channel error rates to sweep");

  auto* eqv = app.add_subcommand("equiv", "Print the non-punctured equivalent of a parameter blob");
  eqv->add_option("-p,--params", cfg.params_path)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }
  if (seed_opt->count() > 0) cfg.seed = seed;

  try {
    if (gen->parsed()) {
      std::string why;
      if (!parse_proba_range(proba_text, cfg.proba_lo, cfg.proba_hi, why)) {
        err << "perseus: " << why << "\n";
        return kExitUsage;
      }
      cmd_gen(cfg, out);
    } else if (enc->parsed()) {
      cmd_encode(cfg, out);
    } else if (dec->parsed()) {
      cmd_decode(cfg, out);
    } else if (ent->parsed()) {
      cmd_entropy(cfg, out);
    } else if (atk->parsed()) {
      cmd_attack_demo(cfg, attack, out);
    } else if (eqv->parsed()) {
      cmd_equiv(cfg, out);
    }
  } catch (const Error& e) {
    err << "perseus: " << to_string(e.kind()) << " error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitOk;
}

}  // namespace perseus::cli
