/* Copyright 2026 The SFSPN Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// sfspn: command-line front end for the semifield S-box toolkit and cipher.

#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sfspn/chaos.hpp"
#include "sfspn/cipher.hpp"
#include "sfspn/diffusion.hpp"
#include "sfspn/error.hpp"
#include "sfspn/image.hpp"
#include "sfspn/metrics.hpp"
#include "sfspn/nist.hpp"
#include "sfspn/parallel.hpp"
#include "sfspn/sbox.hpp"
#include "sfspn/semifield.hpp"

namespace {

using nlohmann::json;
using namespace sfspn;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-run record written next to the primary output.
struct Manifest {
  std::string subcommand;
  json parameters = json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

Manifest g_manifest;

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MalformedFile, "cannot open " + path);
  g_manifest.inputs.push_back(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MalformedFile, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  g_manifest.outputs.push_back(path);
}

// Runs fn against the file at path, or stdout when path is empty.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::MalformedFile, "cannot write " + path);
  fn(out);
  g_manifest.outputs.push_back(path);
}

void emit_json(const std::string& path, const json& j) {
  with_output(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

void record_options(const CLI::App* app) {
  for (const CLI::App* group : app->get_subcommands([](const CLI::App* sub) {
         return dynamic_cast<const CLI::Option_group*>(sub) != nullptr;
       }))
    record_options(group);
  for (const CLI::Option* opt : app->get_options()) {
    const auto name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h") continue;
    std::string key = opt->get_single_name();
    if (opt->count() > 0) {
      const auto& results = opt->results();
      if (opt->get_type_size() == 0) g_manifest.parameters[key] = true;
      else if (results.size() == 1) g_manifest.parameters[key] = results.front();
      else g_manifest.parameters[key] = results;
    } else if (!opt->get_default_str().empty()) {
      g_manifest.parameters[key] = opt->get_default_str();
    }
  }
}

SemifieldElement nibble_element(int v) {
  if (v < 0 || v > 15) throw Usage("semifield coefficients are nibbles 0..15");
  return SemifieldElement::from_nibble(static_cast<std::uint8_t>(v));
}

SBox load_seed(const std::string& path) {
  if (path.empty()) return load_fixture_sbox();
  g_manifest.inputs.push_back(path);
  return read_sbox_file(path);
}

SBoxFamily cipher_family(const std::string& seed_path, std::uint32_t size) {
  return generate_family(load_seed(seed_path), size);
}

CipherKeyBundle load_keys(const std::string& path) {
  g_manifest.inputs.push_back(path);
  return read_key_file(path);
}

// ---------------------------------------------------------------- sbox

void add_sbox(CLI::App& app) {
  auto* sbox = app.add_subcommand("sbox", "S-box generation and analysis");
  sbox->require_subcommand(1);

  {
    auto* gen = sbox->add_subcommand("gen", "Build an S-box from the T map or load the reference box");
    struct Opts {
      bool fixture = false;
      int alpha = -1, beta = -1;
      std::string side = "right", order = "inverse-first", out;
    };
    auto o = std::make_shared<Opts>();
    gen->add_flag("--fixture", o->fixture, "Write the reference semifield S-box");
    gen->add_option("--alpha", o->alpha, "alpha coefficient as a nibble (u<<2|v)");
    gen->add_option("--beta", o->beta, "beta coefficient as a nibble (u<<2|v)");
    gen->add_option("--inverse-side", o->side, "Inverse used inside T")->check(CLI::IsMember({"left", "right"}));
    gen->add_option("--order", o->order, "Operand order of the T products")
        ->check(CLI::IsMember({"inverse-first", "inverse-last"}));
    gen->add_option("-o,--out", o->out, "S-box file")->required();
    gen->callback([o] {
      SBox box;
      if (o->fixture) {
        if (o->alpha >= 0 || o->beta >= 0) throw Usage("--fixture excludes --alpha/--beta");
        box = load_fixture_sbox();
      } else {
        if (o->alpha < 0 || o->beta < 0) throw Usage("give --fixture or both --alpha and --beta");
        TConvention conv;
        conv.inverse_side = o->side == "left" ? InverseSide::Left : InverseSide::Right;
        conv.order = o->order == "inverse-last" ? ProductOrder::InverseLast : ProductOrder::InverseFirst;
        box = build_sbox_via_T({nibble_element(o->alpha), nibble_element(o->beta)}, conv);
      }
      write_sbox_file(box, o->out);
      g_manifest.outputs.push_back(o->out);
    });
  }

  {
    auto* family = sbox->add_subcommand("family", "Apply the S8 output-bit action to a seed box");
    struct Opts {
      std::string seed, out;
      std::uint32_t count = kS8Order;
    };
    auto o = std::make_shared<Opts>();
    family->add_option("--seed", o->seed, "Seed S-box file (default: reference box)");
    family->add_option("--count", o->count, "Number of permutation ranks, from 0")
        ->check(CLI::Range(1u, kS8Order))
        ->capture_default_str();
    family->add_option("-o,--out", o->out, "Family file")->required();
    family->callback([o] {
      write_family_file(generate_family(load_seed(o->seed), o->count), o->out);
      g_manifest.outputs.push_back(o->out);
    });
  }

  {
    auto* analyze = sbox->add_subcommand("analyze", "Strength metrics of an S-box or family");
    struct Opts {
      bool fixture = false, aes = false;
      std::string sbox, family, format = "json", out;
    };
    auto o = std::make_shared<Opts>();
    auto* g = analyze->add_option_group("source")->require_option(1);
    g->add_flag("--fixture", o->fixture, "Reference semifield S-box");
    g->add_flag("--aes", o->aes, "AES S-box");
    g->add_option("--sbox", o->sbox, "S-box file");
    g->add_option("--family", o->family, "Family file");
    analyze->add_option("--format", o->format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    analyze->add_option("-o,--out", o->out, "Report file (default: stdout)");
    analyze->callback([o] {
      std::vector<RankedSBox> boxes;
      if (o->fixture) boxes.push_back({0, load_fixture_sbox()});
      else if (o->aes) boxes.push_back({0, aes_sbox()});
      else if (!o->sbox.empty()) {
        g_manifest.inputs.push_back(o->sbox);
        boxes.push_back({0, read_sbox_file(o->sbox)});
      } else {
        g_manifest.inputs.push_back(o->family);
        boxes = read_family_file(o->family);
      }
      const bool single = o->family.empty();
      auto result = batch_evaluate(boxes);
      if (single) result.reports.front().rank.reset();
      if (o->format == "csv") {
        with_output(o->out, [&](std::ostream& out) { write_metrics_csv(out, result.reports); });
      } else {
        emit_json(o->out, single ? json(result.reports.front()) : json(result));
      }
    });
  }
}

// ---------------------------------------------------------------- chaos

void add_chaos(CLI::App& app) {
  auto* chaos = app.add_subcommand("chaos", "Chaotic map analysis");
  chaos->require_subcommand(1);

  {
    auto* bif = chaos->add_subcommand("bifurcate", "Bifurcation scatter of the modified logistic map");
    struct Opts {
      BifurcationScan scan;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    bif->add_option("--b", o->scan.b, "Map exponent parameter")->capture_default_str();
    bif->add_option("--r-from", o->scan.r_from)->capture_default_str();
    bif->add_option("--r-to", o->scan.r_to)->capture_default_str();
    bif->add_option("--r-step", o->scan.r_step)->capture_default_str();
    bif->add_option("--x0", o->scan.x0)->capture_default_str();
    bif->add_option("--burn-in", o->scan.burn_in)->capture_default_str();
    bif->add_option("--keep", o->scan.keep, "Iterates kept per r")->capture_default_str();
    bif->add_option("-o,--out", o->out, "CSV file (default: stdout)");
    bif->callback([o] {
      const auto rows = bifurcation_scan(o->scan);
      with_output(o->out, [&](std::ostream& out) { write_bifurcation_csv(out, rows); });
    });
  }

  {
    auto* cls = chaos->add_subcommand("classify", "Fixed / periodic / aperiodic verdict for one r");
    struct Opts {
      LogisticParams p;
      std::size_t n = 1000;
      double tol = kDefaultOrbitTolerance;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    cls->add_option("--x0", o->p.x0)->capture_default_str();
    cls->add_option("--b", o->p.b)->capture_default_str();
    cls->add_option("--r", o->p.r)->capture_default_str();
    cls->add_option("--n", o->n, "Iterates after burn-in")->capture_default_str();
    cls->add_option("--tol", o->tol)->capture_default_str();
    cls->add_option("-o,--out", o->out, "JSON file (default: stdout)");
    cls->callback([o] {
      json j = classify_logistic(o->p, o->n, o->tol);
      j["params"] = o->p;
      emit_json(o->out, j);
    });
  }

  {
    auto* sens = chaos->add_subcommand("sensitivity", "Divergence of two orbits differing in one parameter");
    struct Opts {
      std::string map = "logistic", param = "x0", out, trace;
      double delta = 1e-10;
      std::size_t n = 200;
      LogisticParams logistic;
      TdErcsParams tdercs;
    };
    auto o = std::make_shared<Opts>();
    sens->add_option("--map", o->map)->check(CLI::IsMember({"logistic", "tdercs"}))->capture_default_str();
    sens->add_option("--param", o->param, "Perturbed parameter")
        ->check(CLI::IsMember({"x0", "b", "r", "tan_alpha", "mu"}))
        ->capture_default_str();
    sens->add_option("--delta", o->delta)->capture_default_str();
    sens->add_option("--n", o->n, "Iterates compared")->capture_default_str();
    sens->add_option("--x0", o->logistic.x0, "Logistic x0")->capture_default_str();
    sens->add_option("--b", o->logistic.b)->capture_default_str();
    sens->add_option("--r", o->logistic.r)->capture_default_str();
    sens->add_option("--td-x0", o->tdercs.x0)->capture_default_str();
    sens->add_option("--tan-alpha", o->tdercs.tan_alpha)->capture_default_str();
    sens->add_option("--mu", o->tdercs.mu)->capture_default_str();
    sens->add_option("--m", o->tdercs.m)->capture_default_str();
    sens->add_option("--trace", o->trace, "CSV of |x1_n - x2_n|");
    sens->add_option("-o,--out", o->out, "JSON summary (default: stdout)");
    sens->callback([o] {
      Divergence d;
      json j{{"map", o->map}, {"param", o->param}, {"delta", o->delta}};
      if (o->map == "logistic") {
        auto p2 = o->logistic;
        if (o->param == "x0") p2.x0 += o->delta;
        else if (o->param == "b") p2.b += o->delta;
        else if (o->param == "r") p2.r += o->delta;
        else throw Usage("logistic map parameters are x0, b and r");
        d = sensitivity_divergence(o->logistic, p2, o->n);
        j["base"] = o->logistic;
      } else {
        auto p2 = o->tdercs;
        if (o->param == "x0") p2.x0 += o->delta;
        else if (o->param == "tan_alpha") p2.tan_alpha += o->delta;
        else if (o->param == "mu") p2.mu += o->delta;
        else throw Usage("TD-ERCS parameters are x0, tan_alpha and mu");
        d = sensitivity_divergence(o->tdercs, p2, o->n);
        j["base"] = o->tdercs;
      }
      j["first_index"] = d.first_index ? json(*d.first_index) : json(nullptr);
      j["threshold"] = kDivergenceThreshold;
      if (!o->trace.empty()) with_output(o->trace, [&](std::ostream& out) { write_divergence_csv(out, d); });
      emit_json(o->out, j);
    });
  }
}

// ---------------------------------------------------------------- nist

void add_nist(CLI::App& app) {
  auto* nist = app.add_subcommand("nist", "NIST SP 800-22 subset");
  nist->require_subcommand(1);
  auto* run = nist->add_subcommand("run", "Run the test subset on a chaotic or file stream");
  struct Opts {
    std::string source = "logistic", rule = "digit-parity", input, out;
    int digits = kDefaultParityDigits;
    std::size_t bits = 100000;
    double alpha = kDefaultSignificance;
    LogisticParams logistic{0.5, 0.2, 4.3};
    TdErcsParams tdercs;
  };
  auto o = std::make_shared<Opts>();
  run->add_option("--source", o->source)->check(CLI::IsMember({"logistic", "tdercs", "file"}))->capture_default_str();
  run->add_option("--rule", o->rule, "Real-to-bit rule")
      ->check(CLI::IsMember({"threshold", "bit-expansion", "digit-parity"}))
      ->capture_default_str();
  run->add_option("--digits", o->digits, "Decimal digit used by digit-parity")->capture_default_str();
  run->add_option("--bits", o->bits, "Stream length in bits")->capture_default_str();
  run->add_option("--alpha", o->alpha, "Significance level")->capture_default_str();
  run->add_option("--x0", o->logistic.x0)->capture_default_str();
  run->add_option("--b", o->logistic.b)->capture_default_str();
  run->add_option("--r", o->logistic.r)->capture_default_str();
  run->add_option("--td-x0", o->tdercs.x0)->capture_default_str();
  run->add_option("--tan-alpha", o->tdercs.tan_alpha)->capture_default_str();
  run->add_option("--mu", o->tdercs.mu)->capture_default_str();
  run->add_option("--m", o->tdercs.m)->capture_default_str();
  run->add_option("--input", o->input, "Raw byte file for --source file");
  run->add_option("-o,--out", o->out, "JSON report (default: stdout)");
  run->callback([o] {
    BitStream stream;
    if (o->source == "file") {
      if (o->input.empty()) throw Usage("--source file needs --input");
      stream = bits_from_bytes(read_bytes(o->input), o->input);
    } else {
      const BitRule rule = o->rule == "threshold"       ? BitRule::Threshold
                           : o->rule == "bit-expansion" ? BitRule::BitExpansion
                                                        : BitRule::DigitParity;
      const std::size_t samples = rule == BitRule::BitExpansion ? (o->bits + 7) / 8 : o->bits;
      const auto xs = o->source == "logistic" ? logistic_sequence(o->logistic, samples)
                                              : tdercs_sequence(o->tdercs, samples).x;
      stream = bits_from_reals(xs, rule, o->digits);
      stream.bits.resize(std::min(stream.bits.size(), o->bits));
    }
    const auto reports = run_nist_subset(stream, o->alpha);
    emit_json(o->out, {{"origin", stream.origin},
                       {"bits", stream.size()},
                       {"alpha", o->alpha},
                       {"all_passed", all_executed_passed(reports)},
                       {"tests", reports}});
  });
}

// ---------------------------------------------------------------- cipher

struct CipherOpts {
  std::string in, out, keys, seed;
  std::uint32_t family_size = 256;
};

void add_cipher_common(CLI::App* cmd, CipherOpts& o) {
  cmd->add_option("-i,--in", o.in, "Input file")->required();
  cmd->add_option("-o,--out", o.out, "Output file")->required();
  cmd->add_option("-k,--keys", o.keys, "Key file")->required();
  cmd->add_option("--seed-sbox", o.seed, "Seed S-box file (default: reference box)");
  cmd->add_option("--family-size", o.family_size, "S-boxes taken from the S8 family, ranks 0..n-1")
      ->check(CLI::Range(1u, kS8Order))
      ->capture_default_str();
}

void add_cipher(CLI::App& app) {
  {
    auto* enc = app.add_subcommand("encrypt", "Encrypt a file into an SFSPNv1 container");
    struct Opts : CipherOpts {
      int rounds = kDefaultRounds;
      std::string image_out;
    };
    auto o = std::make_shared<Opts>();
    add_cipher_common(enc, *o);
    enc->add_option("--rounds", o->rounds)->check(CLI::Range(1, 255))->capture_default_str();
    enc->add_option("--image-out", o->image_out, "For PGM input: cipher image of the raster");
    enc->callback([o] {
      const auto keys = load_keys(o->keys);
      const auto family = cipher_family(o->seed, o->family_size);
      const auto bytes = read_bytes(o->in);
      write_bytes(o->out, encrypt(bytes, keys, family, o->rounds).serialize());
      if (!o->image_out.empty()) {
        std::istringstream in(std::string(bytes.begin(), bytes.end()));
        write_pgm_file(encrypt_image(read_pgm(in), keys, family, o->rounds), o->image_out);
        g_manifest.outputs.push_back(o->image_out);
      }
    });
  }
  {
    auto* dec = app.add_subcommand("decrypt", "Decrypt an SFSPNv1 container");
    auto o = std::make_shared<CipherOpts>();
    add_cipher_common(dec, *o);
    dec->callback([o] {
      const auto keys = load_keys(o->keys);
      const auto family = cipher_family(o->seed, o->family_size);
      const auto ct = CiphertextContainer::parse(read_bytes(o->in));
      write_bytes(o->out, decrypt(ct, keys, family));
    });
  }
  {
    auto* keygen = app.add_subcommand("keygen", "Write a random valid key file");
    struct Opts {
      std::uint64_t seed = 0;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    keygen->add_option("--seed", o->seed, "RNG seed")->capture_default_str();
    keygen->add_option("-o,--out", o->out, "Key file")->required();
    keygen->callback([o] {
      std::mt19937_64 rng(o->seed);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      CipherKeyBundle keys;
      // r draws that land in a periodic window are redrawn.
      for (int attempt = 0;; ++attempt) {
        for (auto& b : keys.k1.bytes) b = static_cast<std::uint8_t>(rng());
        keys.k2 = {0.1 + 0.8 * unit(rng), 0.2, 4.5 + 0.05 * unit(rng)};
        keys.k3 = {-0.9 + 1.8 * unit(rng), 0.5 + 2.0 * unit(rng), 0.3 + 0.6 * unit(rng),
                   3 + static_cast<int>(rng() % 5)};
        try {
          keys.validate();
          break;
        } catch (const Error&) {
          if (attempt == 99) throw;
        }
      }
      with_output(o->out, [&](std::ostream& out) { write_key_file(out, keys); });
    });
  }
}

// ---------------------------------------------------------------- image

void add_image(CLI::App& app) {
  auto* image = app.add_subcommand("image", "Image statistics");
  image->require_subcommand(1);

  {
    auto* metrics = image->add_subcommand("metrics", "Entropy, histogram uniformity and GLCM features");
    struct Opts {
      std::string in, out, histogram_csv;
      GlcmConfig glcm;
      bool asymmetric = false, graycomatrix = false;
    };
    auto o = std::make_shared<Opts>();
    metrics->add_option("-i,--in", o->in, "PGM image")->required();
    metrics->add_option("--levels", o->glcm.levels, "GLCM gray levels")->capture_default_str();
    metrics->add_option("--gray-low", o->glcm.gray_low)->capture_default_str();
    metrics->add_option("--gray-high", o->glcm.gray_high)->capture_default_str();
    metrics->add_flag("--asymmetric", o->asymmetric, "Count each pair once");
    metrics->add_option("--row-offset", o->glcm.row_offset)->capture_default_str();
    metrics->add_option("--col-offset", o->glcm.col_offset)->capture_default_str();
    metrics->add_flag("--graycomatrix-defaults", o->graycomatrix, "8 levels, limits [0,1], one-sided");
    metrics->add_option("--histogram", o->histogram_csv, "Histogram CSV file");
    metrics->add_option("-o,--out", o->out, "JSON report (default: stdout)");
    metrics->callback([o] {
      g_manifest.inputs.push_back(o->in);
      const auto img = read_pgm_file(o->in);
      auto config = o->glcm;
      if (o->graycomatrix) config = GlcmConfig::graycomatrix_defaults();
      if (o->asymmetric) config.symmetric = false;
      const auto hist = histogram(img);
      if (!o->histogram_csv.empty())
        with_output(o->histogram_csv, [&](std::ostream& out) { write_histogram_csv(out, hist); });
      emit_json(o->out, {{"width", img.width},
                         {"height", img.height},
                         {"entropy", shannon_entropy(img)},
                         {"chi_square", hist.chi_square},
                         {"uniformity_p", hist.p_value},
                         {"glcm_config", config},
                         {"glcm", glcm_features(img, config)}});
    });
  }

  {
    auto* npcr = image->add_subcommand("npcr-uaci", "NPCR and UACI between two images");
    struct Opts {
      std::string a, b, out;
    };
    auto o = std::make_shared<Opts>();
    npcr->add_option("a", o->a, "First PGM")->required();
    npcr->add_option("b", o->b, "Second PGM")->required();
    npcr->add_option("-o,--out", o->out, "JSON report (default: stdout)");
    npcr->callback([o] {
      g_manifest.inputs = {o->a, o->b};
      emit_json(o->out, npcr_uaci(read_pgm_file(o->a), read_pgm_file(o->b)));
    });
  }

  {
    auto* synth = image->add_subcommand("synth", "Write a synthetic natural-like test image");
    struct Opts {
      std::size_t width = 256, height = 256;
      std::uint64_t seed = 0;
      std::string out;
    };
    auto o = std::make_shared<Opts>();
    synth->add_option("--width", o->width)->capture_default_str();
    synth->add_option("--height", o->height)->capture_default_str();
    synth->add_option("--seed", o->seed)->capture_default_str();
    synth->add_option("-o,--out", o->out, "PGM file")->required();
    synth->callback([o] {
      write_pgm_file(make_test_image(o->width, o->height, o->seed), o->out);
      g_manifest.outputs.push_back(o->out);
    });
  }
}

// ---------------------------------------------------------------- avalanche

void add_avalanche(CLI::App& app) {
  auto* av = app.add_subcommand("avalanche", "Pixel-change, key-sensitivity and bit-flip diffusion protocol");
  struct Opts : CipherOpts {
    int rounds = kDefaultRounds;
    std::size_t trials = 100, message_bytes = 64;
    std::uint64_t rng_seed = 0;
  };
  auto o = std::make_shared<Opts>();
  av->add_option("-i,--in", o->in, "PGM image (default: synthetic test image)");
  av->add_option("-k,--keys", o->keys, "Key file")->required();
  av->add_option("-o,--out", o->out, "JSON report (default: stdout)");
  av->add_option("--seed-sbox", o->seed, "Seed S-box file (default: reference box)");
  av->add_option("--family-size", o->family_size)->check(CLI::Range(1u, kS8Order))->capture_default_str();
  av->add_option("--rounds", o->rounds)->check(CLI::Range(1, 255))->capture_default_str();
  av->add_option("--trials", o->trials, "Bit-flip trials")->capture_default_str();
  av->add_option("--message-bytes", o->message_bytes)->capture_default_str();
  av->add_option("--seed", o->rng_seed, "RNG seed for test image and bit flips")->capture_default_str();
  av->callback([o] {
    const auto keys = load_keys(o->keys);
    const auto family = cipher_family(o->seed, o->family_size);
    GrayImage img;
    if (o->in.empty()) {
      img = make_test_image(256, 256, o->rng_seed);
    } else {
      g_manifest.inputs.push_back(o->in);
      img = read_pgm_file(o->in);
    }
    emit_json(o->out, {{"pixel_change", pixel_change_protocol(img, keys, family, o->rounds)},
                       {"key_sensitivity", key_sensitivity(img, keys, family, o->rounds)},
                       {"bit_flip", bit_avalanche(keys, family, o->rounds, o->trials, o->message_bytes, o->rng_seed)}});
  });
}

std::string iso_time(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(double seconds, std::chrono::system_clock::time_point started) {
  json m{{"subcommand", g_manifest.subcommand},
         {"parameters", g_manifest.parameters},
         {"inputs", g_manifest.inputs},
         {"outputs", g_manifest.outputs},
         {"tool_version", SFSPN_VERSION},
         {"threads", thread_count()},
         {"started_at", iso_time(started)},
         {"wall_seconds", seconds}};
  if (g_manifest.outputs.empty()) {
    std::cerr << m.dump() << '\n';
    return;
  }
  std::ofstream out(g_manifest.outputs.front() + ".manifest.json");
  out << m.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semifield S-box toolkit and chaotic SPN cipher (research reproduction)", "sfspn"};
  app.set_version_flag("--version", std::string(SFSPN_VERSION));
  app.require_subcommand(1);
  app.fallthrough(false);
  add_sbox(app);
  add_chaos(app);
  add_nist(app);
  add_cipher(app);
  add_image(app);
  add_avalanche(app);

  const auto started = std::chrono::system_clock::now();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  // Subcommand path and options of the leaf that ran.
  const CLI::App* leaf = &app;
  std::string path;
  for (;;) {
    const auto subs = leaf->get_subcommands(
        [](const CLI::App* sub) { return sub->parsed() && dynamic_cast<const CLI::Option_group*>(sub) == nullptr; });
    if (subs.empty()) break;
    leaf = subs.front();
    path += (path.empty() ? "" : " ") + leaf->get_name();
  }
  g_manifest.subcommand = path;
  record_options(leaf);
  write_manifest(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), started);
  return kExitOk;
}
