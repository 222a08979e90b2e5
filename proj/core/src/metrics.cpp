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

#include "sfspn/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <ostream>

#include <nlohmann/json.hpp>

#include "sfspn/error.hpp"
#include "sfspn/parallel.hpp"

namespace sfspn {
namespace {

int parity(unsigned v) { return std::popcount(v) & 1; }

void fwht(std::array<int, 256>& a) {
  for (int h = 1; h < 256; h <<= 1)
    for (int i = 0; i < 256; i += h << 1)
      for (int j = i; j < i + h; ++j) {
        const int x = a[j];
        const int y = a[j + h];
        a[j] = x + y;
        a[j + h] = x - y;
      }
}

int max_abs_walsh(const ComponentFunction& f) {
  const auto w = walsh_spectrum(f);
  int m = 0;
  for (int v : w) m = std::max(m, std::abs(v));
  return m;
}

// Bit index b counts from the MSB.
constexpr std::uint8_t bit_mask(int b) { return static_cast<std::uint8_t>(0x80u >> b); }

}  // namespace

ComponentFunction component_combination(const SBox& s, std::uint8_t output_mask) {
  ComponentFunction f;
  for (int x = 0; x < 256; ++x) f.truth_table[x] = parity(s[static_cast<std::uint8_t>(x)] & output_mask);
  return f;
}

ComponentFunction output_bit(const SBox& s, int j) { return component_combination(s, bit_mask(j)); }

std::array<int, 256> walsh_spectrum(const ComponentFunction& f) {
  std::array<int, 256> a{};
  for (int x = 0; x < 256; ++x) a[x] = f.truth_table[x] ? -1 : 1;
  fwht(a);
  return a;
}

int nonlinearity(const ComponentFunction& f) { return 128 - max_abs_walsh(f) / 2; }

int nonlinearity(const SBox& s) {
  int nl = 128;
  for (int mask = 1; mask < 256; ++mask)
    nl = std::min(nl, nonlinearity(component_combination(s, static_cast<std::uint8_t>(mask))));
  return nl;
}

bool is_bijective(const SBox& s) {
  const bool distinct = s.is_permutation();
  bool balanced = true;
  for (int mask = 1; mask < 256 && balanced; ++mask)
    balanced = component_combination(s, static_cast<std::uint8_t>(mask)).weight() == 128;
  if (distinct != balanced)
    throw Error(Errc::InvalidArgument, "distinct-value and balancedness checks disagree");
  return distinct;
}

double sac_of_function(const ComponentFunction& f, int input_bit) {
  const std::uint8_t flip = bit_mask(input_bit);
  int changed = 0;
  for (int x = 0; x < 256; ++x) changed += f.truth_table[x] != f.truth_table[x ^ flip];
  return changed / 256.0;
}

SacResult sac(const SBox& s) {
  SacResult r;
  double sum = 0.0;
  for (int i = 0; i < 8; ++i) {
    const std::uint8_t flip = bit_mask(i);
    std::array<int, 8> counts{};
    for (int x = 0; x < 256; ++x) {
      const std::uint8_t diff = s[static_cast<std::uint8_t>(x)] ^ s[static_cast<std::uint8_t>(x ^ flip)];
      for (int j = 0; j < 8; ++j) counts[j] += (diff & bit_mask(j)) != 0;
    }
    for (int j = 0; j < 8; ++j) {
      r.matrix[i][j] = counts[j] / 256.0;
      sum += r.matrix[i][j];
      r.max_offset = std::max(r.max_offset, std::abs(r.matrix[i][j] - 0.5));
    }
  }
  r.average = sum / 64.0;
  return r;
}

BicResult bic(const SBox& s) {
  BicResult r;
  r.nonlinearity = 128;
  double sac_sum = 0.0;
  int terms = 0;
  for (int j = 0; j < 8; ++j)
    for (int k = j + 1; k < 8; ++k) {
      const auto f = component_combination(s, static_cast<std::uint8_t>(bit_mask(j) | bit_mask(k)));
      r.nonlinearity = std::min(r.nonlinearity, nonlinearity(f));
      for (int i = 0; i < 8; ++i, ++terms) sac_sum += sac_of_function(f, i);
    }
  r.sac = sac_sum / terms;
  return r;
}

DdtResult ddt_and_dp(const SBox& s) {
  DdtResult r;
  r.table.counts.assign(256, {});
  int best = 0;
  for (int dx = 0; dx < 256; ++dx) {
    auto& row = r.table.counts[dx];
    for (int x = 0; x < 256; ++x)
      ++row[s[static_cast<std::uint8_t>(x)] ^ s[static_cast<std::uint8_t>(x ^ dx)]];
    if (dx != 0)
      for (auto c : row) best = std::max(best, static_cast<int>(c));
  }
  r.dp = best / 256.0;
  return r;
}

LatResult lat_and_lp(const SBox& s) {
  LatResult r;
  r.table.biases.assign(256, {});
  int best = 0;
  for (int out = 0; out < 256; ++out) {
    // W(in) = 2 * (#agree - 128)
    const auto w = walsh_spectrum(component_combination(s, static_cast<std::uint8_t>(out)));
    for (int in = 0; in < 256; ++in) {
      const int bias = w[in] / 2;
      r.table.biases[in][out] = static_cast<std::int16_t>(bias);
      if (out != 0) best = std::max(best, std::abs(bias));
    }
  }
  r.lp = best / 256.0;
  return r;
}

bool MetricsReport::same_metrics(const MetricsReport& o) const {
  return nonlinearity == o.nonlinearity && sac_average == o.sac_average &&
         sac_max_offset == o.sac_max_offset && bic_nonlinearity == o.bic_nonlinearity &&
         bic_sac == o.bic_sac && dp == o.dp && lp == o.lp && bijective == o.bijective;
}

MetricsReport evaluate(const SBox& s) {
  MetricsReport r;
  r.bijective = is_bijective(s);
  r.nonlinearity = nonlinearity(s);
  const auto sac_result = sac(s);
  r.sac_average = sac_result.average;
  r.sac_max_offset = sac_result.max_offset;
  const auto bic_result = bic(s);
  r.bic_nonlinearity = bic_result.nonlinearity;
  r.bic_sac = bic_result.sac;
  r.dp = ddt_and_dp(s).dp;
  r.lp = lat_and_lp(s).lp;
  return r;
}

namespace {

BatchSummary summarize(const std::vector<MetricsReport>& reports) {
  BatchSummary s;
  s.count = reports.size();
  // Sequential reduction keeps the sums independent of the worker count.
  for (const auto& r : reports) {
    s.max_lp_avg += r.lp;
    s.max_dp_avg += r.dp;
  }
  s.max_lp_avg /= static_cast<double>(s.count);
  s.max_dp_avg /= static_cast<double>(s.count);
  s.log2_max_lp_avg = std::log2(s.max_lp_avg);
  s.log2_max_dp_avg = std::log2(s.max_dp_avg);
  return s;
}

}  // namespace

BatchResult batch_evaluate(const SBoxFamily& family) {
  BatchResult out;
  out.reports.resize(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    out.reports[i] = evaluate(family.box(i));
    out.reports[i].rank = family.indices()[i];
  });
  out.summary = summarize(out.reports);
  return out;
}

BatchResult batch_evaluate(const std::vector<RankedSBox>& boxes) {
  if (boxes.empty()) throw Error(Errc::EmptyInput, "no S-boxes to evaluate");
  BatchResult out;
  out.reports.resize(boxes.size());
  parallel_for(boxes.size(), [&](std::size_t i) {
    out.reports[i] = evaluate(boxes[i].box);
    out.reports[i].rank = boxes[i].rank;
  });
  out.summary = summarize(out.reports);
  return out;
}

void to_json(nlohmann::json& j, const MetricsReport& r) {
  j = nlohmann::json{{"nonlinearity", r.nonlinearity}, {"sac_average", r.sac_average},
                     {"sac_max_offset", r.sac_max_offset}, {"bic_nonlinearity", r.bic_nonlinearity},
                     {"bic_sac", r.bic_sac},           {"dp", r.dp},
                     {"lp", r.lp},                     {"bijective", r.bijective}};
  if (r.rank) j["rank"] = *r.rank;
}

void to_json(nlohmann::json& j, const BatchSummary& s) {
  j = nlohmann::json{{"count", s.count},
                     {"max_lp_avg", s.max_lp_avg},
                     {"max_dp_avg", s.max_dp_avg},
                     {"log2_max_lp_avg", s.log2_max_lp_avg},
                     {"log2_max_dp_avg", s.log2_max_dp_avg}};
}

void to_json(nlohmann::json& j, const BatchResult& b) {
  j = nlohmann::json{{"boxes", b.reports}, {"summary", b.summary}};
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsReport>& reports) {
  out << "rank,nonlinearity,sac_average,sac_max_offset,bic_nonlinearity,bic_sac,dp,lp,bijective\n";
  const auto precision = out.precision(10);
  for (const auto& r : reports) {
    if (r.rank) out << *r.rank;
    out << ',' << r.nonlinearity << ',' << r.sac_average << ',' << r.sac_max_offset << ','
        << r.bic_nonlinearity << ',' << r.bic_sac << ',' << r.dp << ',' << r.lp << ','
        << (r.bijective ? "true" : "false") << '\n';
  }
  out.precision(precision);
}

}  // namespace sfspn
