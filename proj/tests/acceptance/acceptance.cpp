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

// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance --only N   run criterion N (exit 1 if it fails)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sfspn/chaos.hpp"
#include "sfspn/cipher.hpp"
#include "sfspn/diffusion.hpp"
#include "sfspn/image.hpp"
#include "sfspn/metrics.hpp"
#include "sfspn/nist.hpp"
#include "sfspn/sbox.hpp"
#include "sfspn/semifield.hpp"

using namespace sfspn;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds, 0 for none
  std::function<void(Outcome&)> body;
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

void metrics_line(Outcome& o, const MetricsReport& r) {
  o.detail << "NL=" << r.nonlinearity << " SAC=" << r.sac_average << " BIC-NL=" << r.bic_nonlinearity
           << " BIC-SAC=" << r.bic_sac << " DP=" << r.dp << " LP=" << r.lp;
}

CipherKeyBundle fixed_keys() {
  CipherKeyBundle k;
  k.k1 = Key128::from_hex("2b7e151628aed2a6abf7158809cf4f3c");
  k.k2 = {0.5, 0.2, 4.5};
  k.k3 = {0.5, 1.0, 0.5, 3};
  return k;
}

void c1(Outcome& o) {
  const auto r = evaluate(aes_sbox());
  metrics_line(o, r);
  o.check(r.nonlinearity == 112, "NL");
  o.check(near(r.sac_average, 0.504, 0.001), "SAC");
  o.check(r.bic_nonlinearity == 112, "BIC-NL");
  o.check(r.dp == 0.015625, "DP");
  o.check(r.lp == 0.0625, "LP");
}

void c2(Outcome& o) {
  const auto box = load_fixture_sbox();
  const bool bijective = is_bijective(box);
  o.detail << "bijective=" << (bijective ? "yes " : "no ");
  o.check(bijective, "bijectivity");
  if (!bijective) return;
  const auto r = evaluate(box);
  metrics_line(o, r);
  o.check(r.nonlinearity == 112, "NL");
  o.check(near(r.sac_average, 0.503, 0.002), "SAC");
  o.check(r.bic_nonlinearity == 112, "BIC-NL");
  o.check(near(r.bic_sac, 0.501, 0.002), "BIC-SAC");
  o.check(r.dp == 0.015625, "DP");
  o.check(r.lp == 0.0625, "LP");
}

void c3(Outcome& o) {
  const auto seed = load_fixture_sbox();
  const auto base = evaluate(seed);
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::uint32_t> rank(0, kS8Order - 1);
  int equal = 0;
  for (int i = 0; i < 50; ++i) {
    const auto r = evaluate(apply_bit_permutation(seed, unrank_permutation(rank(rng))));
    equal += r.same_metrics(base);
  }
  o.detail << equal << "/50 permuted boxes match the seed";
  o.check(equal == 50, "metric mismatch");
}

void c4(Outcome& o) {
  auto el = [](int n) { return SemifieldElement::from_nibble(static_cast<std::uint8_t>(n)); };
  const auto zero = SemifieldElement::zero();
  const auto one = SemifieldElement::one();
  bool group = true, distributive = true, no_zero_div = true, identity = true, quasigroup = true;
  int nonassoc = 0;
  for (int a = 0; a < 16; ++a) {
    group &= sf_add(zero, el(a)) == el(a) && sf_add(el(a), el(a)) == zero;
    identity &= sf_mul(one, el(a)) == el(a) && sf_mul(el(a), one) == el(a);
    std::vector<bool> left(16), right(16);
    for (int b = 0; b < 16; ++b) {
      group &= sf_add(el(a), el(b)) == sf_add(el(b), el(a));
      if (a && b) no_zero_div &= sf_mul(el(a), el(b)) != zero;
      left[sf_mul(el(a), el(b)).nibble()] = true;
      right[sf_mul(el(b), el(a)).nibble()] = true;
      for (int c = 0; c < 16; ++c) {
        group &= sf_add(sf_add(el(a), el(b)), el(c)) == sf_add(el(a), sf_add(el(b), el(c)));
        distributive &= sf_mul(el(a), sf_add(el(b), el(c))) == sf_add(sf_mul(el(a), el(b)), sf_mul(el(a), el(c)));
        distributive &= sf_mul(sf_add(el(a), el(b)), el(c)) == sf_add(sf_mul(el(a), el(c)), sf_mul(el(b), el(c)));
        nonassoc += sf_mul(sf_mul(el(a), el(b)), el(c)) != sf_mul(el(a), sf_mul(el(b), el(c)));
      }
    }
    if (a) {
      for (int v = 0; v < 16; ++v) quasigroup &= left[static_cast<std::size_t>(v)] && right[static_cast<std::size_t>(v)];
    }
  }
  o.detail << "non-associative triples=" << nonassoc;
  o.check(group, "additive group");
  o.check(distributive, "distributivity");
  o.check(no_zero_div, "zero divisors");
  o.check(identity, "identity");
  o.check(quasigroup, "quasigroup");
  o.check(nonassoc > 0, "no non-associativity witness");
}

void c5(Outcome& o) {
  const auto seed = load_fixture_sbox();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> length(1, 4096);
  const std::uint32_t sizes[] = {1, 8, 256};
  const int rounds[] = {1, 6};
  int ok = 0;
  for (int i = 0; i < 200; ++i) {
    const auto family = generate_family(seed, sizes[i % 3]);
    const int r = rounds[(i / 3) % 2];
    const auto keys = oracle::random_keys(rng);
    std::vector<std::uint8_t> pt(length(rng));
    for (auto& b : pt) b = static_cast<std::uint8_t>(rng());
    const auto ct = CiphertextContainer::parse(encrypt(pt, keys, family, r).serialize());
    ok += decrypt(ct, keys, family) == pt;
  }
  o.detail << ok << "/200 roundtrips";
  o.check(ok == 200, "roundtrip");
}

const SBoxFamily& cipher_family() {
  static const auto family = generate_family(load_fixture_sbox(), 256);
  return family;
}

const GrayImage& test_image() {
  static const auto img = make_test_image(256, 256, 0);
  return img;
}

void band(Outcome& o, const NpcrUaci& m, const std::string& label) {
  o.detail << label << " NPCR=" << m.npcr << " UACI=" << m.uaci << "; ";
  o.check(m.npcr > 99.0, label + " NPCR");
  o.check(m.uaci >= 32.3 && m.uaci <= 34.3, label + " UACI");
}

void c6(Outcome& o) {
  for (const auto& r : pixel_change_protocol(test_image(), fixed_keys(), cipher_family()))
    band(o, r.metrics, "(" + std::to_string(r.row) + "," + std::to_string(r.col) + ")");
}

void c7(Outcome& o) {
  const auto s = key_sensitivity(test_image(), fixed_keys(), cipher_family());
  band(o, s.encryption, "encryption");
  band(o, s.decryption, "decryption");
}

void c8(Outcome& o) {
  const auto& plain = test_image();
  const auto cipher = encrypt_image(plain, fixed_keys(), cipher_family());
  const double h = shannon_entropy(cipher);
  const auto hist = histogram(cipher);
  const auto gc = GlcmConfig::graycomatrix_defaults();
  const auto fc = glcm_features(cipher, gc);
  const auto fp = glcm_features(plain, gc);
  const auto fc256 = glcm_features(cipher);
  const auto fp256 = glcm_features(plain);
  o.detail << "entropy=" << h << " chi2 p=" << hist.p_value << " homogeneity=" << fc.homogeneity
           << " energy=" << fc.energy << " contrast cipher/plain: 8-level " << fc.contrast << "/" << fp.contrast
           << ", 256-level " << fc256.contrast << "/" << fp256.contrast;
  o.check(h >= 7.99, "entropy");
  o.check(hist.p_value >= 0.01, "histogram uniformity");
  o.check(fc.homogeneity >= 0.99, "homogeneity");
  o.check(fc.energy >= 0.98, "energy");
  // Much smaller: at most a tenth of the plaintext contrast.
  o.check(fc.contrast <= 0.1 * fp.contrast, "8-level contrast not << plaintext");
  o.check(fc256.contrast <= 0.1 * fp256.contrast, "256-level contrast not << plaintext");
}

void c9(Outcome& o) {
  auto at = [](double r) { return classify_logistic({0.5, 0.2, r}); };
  auto name = [](const OrbitClass& c) {
    switch (c.kind) {
      case OrbitKind::Fixed: return std::string("fixed");
      case OrbitKind::Periodic: return "periodic(" + std::to_string(c.period) + ")";
      default: return std::string("aperiodic");
    }
  };
  const std::pair<double, std::function<bool(const OrbitClass&)>> expected[] = {
      {2.5, [](const OrbitClass& c) { return c.kind == OrbitKind::Fixed; }},
      {3.7, [](const OrbitClass& c) { return c.kind == OrbitKind::Periodic && c.period == 2; }},
      {4.41, [](const OrbitClass& c) { return c.kind == OrbitKind::Periodic; }},
      {4.52, [](const OrbitClass& c) { return c.kind == OrbitKind::Periodic; }},
      {4.3, [](const OrbitClass& c) { return c.kind == OrbitKind::Aperiodic; }},
      {4.5, [](const OrbitClass& c) { return c.kind == OrbitKind::Aperiodic; }},
      {4.56, [](const OrbitClass& c) { return c.kind == OrbitKind::Aperiodic; }},
  };
  for (const auto& [r, ok] : expected) {
    const auto c = at(r);
    o.detail << "r=" << r << ":" << name(c) << " ";
    o.check(ok(c), "r=" + std::to_string(r));
  }
  const LogisticParams base{0.5, 0.2, 4.5};
  for (int f = 0; f < 3; ++f) {
    auto other = base;
    (f == 0 ? other.x0 : f == 1 ? other.r : other.b) += 1e-10;
    const auto d = sensitivity_divergence(base, other, 200);
    const char* field = f == 0 ? "x0" : f == 1 ? "r" : "b";
    o.detail << field << " diverges at " << (d.first_index ? std::to_string(*d.first_index) : "never") << " ";
    o.check(d.first_index && *d.first_index <= 200, std::string("divergence in ") + field);
  }
}

void c10(Outcome& o) {
  const auto xs = logistic_sequence({0.5, 0.2, 4.3}, 100000);
  const auto reports = run_nist_subset(bits_from_reals(xs, BitRule::DigitParity));
  double min_p = 1.0;
  int executed = 0;
  for (const auto& r : reports) {
    if (r.outcome == TestOutcome::Skipped) continue;
    ++executed;
    min_p = std::min(min_p, r.p_value);
    o.check(r.passed(), r.test_name);
  }
  o.detail << executed << " reports, min p=" << min_p;
  o.check(executed == static_cast<int>(reports.size()), "skipped tests");
}

void c11(Outcome& o) {
  std::mt19937_64 rng(11);
  int nl_ok = 0;
  for (int i = 0; i < 3; ++i) {
    const auto s = oracle::random_bijection(rng);
    nl_ok += nonlinearity(s) == oracle::brute_force_nonlinearity(s);
  }
  int glcm_ok = 0;
  for (std::uint64_t i = 0; i < 5; ++i) {
    GrayImage img(6 + i, 5 + i);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng());
    const auto got = glcm_features(img);
    const auto want = oracle::glcm_direct(img, 0, 1, true);
    glcm_ok += near(got.contrast, want.contrast, 1e-9) && near(got.homogeneity, want.homogeneity, 1e-9) &&
               near(got.energy, want.energy, 1e-9) && got.correlation.has_value() == want.correlation.has_value() &&
               (!want.correlation || near(*got.correlation, *want.correlation, 1e-9));
  }
  int mono_ok = 0;
  for (int i = 0; i < 20; ++i) {
    BitStream s;
    const std::size_t n = 500 + 50 * static_cast<std::size_t>(i);
    for (std::size_t k = 0; k < n; ++k) s.bits.push_back(static_cast<std::uint8_t>(rng() % (i % 4 == 0 ? 3 : 2) != 0));
    mono_ok += near(frequency_monobit(s).p_value, oracle::monobit_p(s.bits), 1e-9);
  }
  o.detail << "NL " << nl_ok << "/3, GLCM " << glcm_ok << "/5, monobit " << mono_ok << "/20";
  o.check(nl_ok == 3 && glcm_ok == 5 && mono_ok == 20, "oracle mismatch");
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "AES analyzer validation", 5, c1},
      {2, "fixture S-box metrics", 0, c2},
      {3, "S8 invariance", 30, c3},
      {4, "semifield axioms", 1, c4},
      {5, "cipher roundtrip", 60, c5},
      {6, "NPCR/UACI pixel change", 120, c6},
      {7, "key sensitivity", 0, c7},
      {8, "ciphertext statistics", 0, c8},
      {9, "chaotic regimes and sensitivity", 30, c9},
      {10, "NIST subset on logistic stream", 0, c10},
      {11, "oracle equivalences", 0, c11},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  bool all_pass = true;
  bool ran = false;
  for (const auto& c : criteria()) {
    if (only && c.id != only) continue;
    ran = true;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs > c.time_limit) o.check(false, "runtime over " + std::to_string(c.time_limit) + " s");
    std::printf("criterion %2d %s  %s (%.2f s): %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, secs,
                o.detail.str().c_str());
    all_pass &= o.pass;
  }
  if (!ran) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all_pass ? 0 : 1;
}
