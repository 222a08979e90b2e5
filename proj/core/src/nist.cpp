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

#include "sfspn/nist.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>
#include <fftw3.h>
#include <nlohmann/json.hpp>

#include "sfspn/error.hpp"

namespace sfspn {
namespace {

double igamc(double a, double x) {
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(a, x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

TestReport make_report(std::string name, std::map<std::string, double> params, double p, double alpha) {
  TestReport r;
  r.test_name = std::move(name);
  r.parameters = std::move(params);
  r.p_value = std::clamp(p, 0.0, 1.0);
  r.outcome = r.p_value >= alpha ? TestOutcome::Passed : TestOutcome::Failed;
  return r;
}

TestReport skipped(std::string name, std::map<std::string, double> params, std::string why) {
  TestReport r;
  r.test_name = std::move(name);
  r.parameters = std::move(params);
  r.outcome = TestOutcome::Skipped;
  r.note = std::move(why);
  return r;
}

// Probability that a uniformly random m x q GF(2) matrix has rank r.
double rank_probability(int r, int m, int q) {
  double product = 1.0;
  for (int i = 0; i < r; ++i)
    product *= (1.0 - std::ldexp(1.0, i - q)) * (1.0 - std::ldexp(1.0, i - m)) / (1.0 - std::ldexp(1.0, i - r));
  return std::ldexp(product, r * (q + m - r) - m * q);
}

// Exact category probabilities for the longest run of ones in 8-bit blocks:
// <=1, 2, 3, >=4.
std::array<double, 4> longest_run_probabilities() {
  std::array<double, 4> p{};
  for (unsigned block = 0; block < 256; ++block) {
    int best = 0, run = 0;
    for (int b = 7; b >= 0; --b) {
      run = (block >> b) & 1u ? run + 1 : 0;
      best = std::max(best, run);
    }
    ++p[static_cast<std::size_t>(std::clamp(best, 1, 4) - 1)];
  }
  for (auto& v : p) v /= 256.0;
  return p;
}

struct FftwPlanDeleter {
  void operator()(fftw_plan_s* plan) const { fftw_destroy_plan(plan); }
};

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

BitStream bits_from_reals(std::span<const double> xs, BitRule rule, int digits) {
  if (xs.empty()) throw Error(Errc::EmptyInput, "no samples to convert");
  BitStream s;
  switch (rule) {
    case BitRule::Threshold: {
      std::vector<double> sorted(xs.begin(), xs.end());
      const auto mid = sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2);
      std::nth_element(sorted.begin(), mid, sorted.end());
      double median = *mid;
      if (sorted.size() % 2 == 0) median = 0.5 * (median + *std::max_element(sorted.begin(), mid));
      s.bits.reserve(xs.size());
      for (double x : xs) s.bits.push_back(x >= median ? 1 : 0);
      s.origin = "threshold";
      break;
    }
    case BitRule::BitExpansion: {
      s.bits.reserve(xs.size() * 8);
      for (double x : xs) {
        const auto byte = static_cast<unsigned>(std::clamp(std::floor(x * 256.0), 0.0, 255.0));
        for (int b = 7; b >= 0; --b) s.bits.push_back(static_cast<std::uint8_t>((byte >> b) & 1u));
      }
      s.origin = "bit_expansion";
      break;
    }
    case BitRule::DigitParity: {
      if (digits < 0 || digits > 15) throw Error(Errc::InvalidArgument, "digit count must be in 0..15");
      const double scale = std::pow(10.0, digits);
      s.bits.reserve(xs.size());
      for (double x : xs) {
        const double scaled = std::floor(std::abs(x) * scale);
        s.bits.push_back(static_cast<std::uint8_t>(std::fmod(scaled, 2.0) != 0.0));
      }
      s.origin = "digit_parity(" + std::to_string(digits) + ")";
      break;
    }
  }
  return s;
}

BitStream bits_from_bytes(std::span<const std::uint8_t> bytes, std::string origin) {
  BitStream s;
  s.origin = std::move(origin);
  s.bits.reserve(bytes.size() * 8);
  for (std::uint8_t byte : bytes)
    for (int b = 7; b >= 0; --b) s.bits.push_back(static_cast<std::uint8_t>((byte >> b) & 1u));
  return s;
}

TestReport frequency_monobit(const BitStream& s, double alpha) {
  const auto n = static_cast<double>(s.size());
  if (s.size() < 100) return skipped("frequency_monobit", {}, "needs at least 100 bits");
  long long sum = 0;
  for (auto b : s.bits) sum += b ? 1 : -1;
  const double s_obs = std::abs(static_cast<double>(sum)) / std::sqrt(n);
  return make_report("frequency_monobit", {}, std::erfc(s_obs / std::numbers::sqrt2), alpha);
}

TestReport block_frequency(const BitStream& s, int block_size, double alpha) {
  const std::map<std::string, double> params{{"block_size", block_size}};
  if (block_size < 1) throw Error(Errc::InvalidArgument, "block size must be positive");
  const std::size_t blocks = s.size() / static_cast<std::size_t>(block_size);
  if (s.size() < 100 || blocks < 1) return skipped("block_frequency", params, "needs at least 100 bits");
  double chi2 = 0.0;
  for (std::size_t i = 0; i < blocks; ++i) {
    int ones = 0;
    for (int j = 0; j < block_size; ++j) ones += s.bits[i * static_cast<std::size_t>(block_size) + static_cast<std::size_t>(j)];
    const double pi = static_cast<double>(ones) / block_size - 0.5;
    chi2 += pi * pi;
  }
  chi2 *= 4.0 * block_size;
  return make_report("block_frequency", params, igamc(static_cast<double>(blocks) / 2.0, chi2 / 2.0), alpha);
}

TestReport runs(const BitStream& s, double alpha) {
  if (s.size() < 100) return skipped("runs", {}, "needs at least 100 bits");
  const auto n = static_cast<double>(s.size());
  double ones = 0;
  for (auto b : s.bits) ones += b;
  const double pi = ones / n;
  // Frequency prerequisite: the runs statistic is meaningless for a biased stream.
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(n)) return make_report("runs", {}, 0.0, alpha);
  double v_obs = 1;
  for (std::size_t k = 1; k < s.size(); ++k) v_obs += s.bits[k] != s.bits[k - 1];
  const double num = std::abs(v_obs - 2.0 * n * pi * (1.0 - pi));
  const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
  return make_report("runs", {}, std::erfc(num / den), alpha);
}

TestReport longest_run_of_ones(const BitStream& s, double alpha) {
  const std::map<std::string, double> params{{"block_size", 8}};
  if (s.size() < 128) return skipped("longest_run_of_ones", params, "needs at least 128 bits");
  static const auto probs = longest_run_probabilities();
  const std::size_t blocks = s.size() / 8;
  std::array<double, 4> counts{};
  for (std::size_t i = 0; i < blocks; ++i) {
    int best = 0, run = 0;
    for (std::size_t j = 0; j < 8; ++j) {
      run = s.bits[i * 8 + j] ? run + 1 : 0;
      best = std::max(best, run);
    }
    ++counts[static_cast<std::size_t>(std::clamp(best, 1, 4) - 1)];
  }
  double chi2 = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    const double expected = static_cast<double>(blocks) * probs[c];
    chi2 += (counts[c] - expected) * (counts[c] - expected) / expected;
  }
  return make_report("longest_run_of_ones", params, igamc(1.5, chi2 / 2.0), alpha);
}

int gf2_rank(std::vector<std::uint64_t> rows, int cols) {
  int rank = 0;
  for (int col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    const std::uint64_t bit = std::uint64_t{1} << (cols - 1 - col);
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](std::uint64_t r) { return (r & bit) != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (static_cast<int>(i) != rank && (rows[i] & bit)) rows[i] ^= rows[static_cast<std::size_t>(rank)];
    ++rank;
  }
  return rank;
}

TestReport binary_matrix_rank(const BitStream& s, int rows, int cols, double alpha) {
  const std::map<std::string, double> params{{"rows", rows}, {"cols", cols}};
  if (rows < 2 || cols < 2 || cols > 64) throw Error(Errc::InvalidArgument, "matrix shape out of range");
  const std::size_t cell = static_cast<std::size_t>(rows * cols);
  const std::size_t matrices = s.size() / cell;
  if (matrices < 38) return skipped("binary_matrix_rank", params, "needs at least 38 matrices");
  const int full = std::min(rows, cols);
  const double p_full = rank_probability(full, rows, cols);
  const double p_minus1 = rank_probability(full - 1, rows, cols);
  const double p_rest = 1.0 - p_full - p_minus1;
  double f_full = 0, f_minus1 = 0;
  for (std::size_t k = 0; k < matrices; ++k) {
    std::vector<std::uint64_t> m(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        m[static_cast<std::size_t>(r)] = (m[static_cast<std::size_t>(r)] << 1) |
                                         s.bits[k * cell + static_cast<std::size_t>(r * cols + c)];
    const int rank = gf2_rank(std::move(m), cols);
    if (rank == full) ++f_full;
    else if (rank == full - 1) ++f_minus1;
  }
  const double n = static_cast<double>(matrices);
  const double f_rest = n - f_full - f_minus1;
  const double chi2 = (f_full - p_full * n) * (f_full - p_full * n) / (p_full * n) +
                      (f_minus1 - p_minus1 * n) * (f_minus1 - p_minus1 * n) / (p_minus1 * n) +
                      (f_rest - p_rest * n) * (f_rest - p_rest * n) / (p_rest * n);
  return make_report("binary_matrix_rank", params, std::exp(-chi2 / 2.0), alpha);
}

TestReport dft_spectral(const BitStream& s, double alpha) {
  if (s.size() < 100) return skipped("dft_spectral", {}, "needs at least 100 bits");
  const int n = static_cast<int>(s.size());
  std::unique_ptr<double, FftwDeleter> in(fftw_alloc_real(static_cast<std::size_t>(n)));
  std::unique_ptr<fftw_complex, FftwDeleter> out(fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1)));
  std::unique_ptr<fftw_plan_s, FftwPlanDeleter> plan(
      fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE));
  for (int i = 0; i < n; ++i) in.get()[i] = s.bits[static_cast<std::size_t>(i)] ? 1.0 : -1.0;
  fftw_execute(plan.get());
  const double threshold = std::sqrt(std::log(1.0 / 0.05) * n);
  double below = 0;
  for (int j = 0; j < n / 2; ++j) {
    const double modulus = std::hypot(out.get()[j][0], out.get()[j][1]);
    if (modulus < threshold) ++below;
  }
  const double expected = 0.95 * n / 2.0;
  const double d = (below - expected) / std::sqrt(n * 0.95 * 0.05 / 4.0);
  return make_report("dft_spectral", {}, std::erfc(std::abs(d) / std::numbers::sqrt2), alpha);
}

int approximate_entropy_block_length(std::size_t n) {
  const int limit = static_cast<int>(std::floor(std::log2(static_cast<double>(std::max<std::size_t>(n, 2))))) - 5;
  return std::clamp(limit - 1, 2, 10);
}

TestReport approximate_entropy(const BitStream& s, int m, double alpha) {
  const std::map<std::string, double> params{{"block_length", m}};
  const std::size_t n = s.size();
  if (m < 1 || m > 20) throw Error(Errc::InvalidArgument, "block length out of range");
  if (n < 100 || (std::size_t{1} << (m + 1)) > n)
    return skipped("approximate_entropy", params, "block length too large for stream");
  auto phi = [&](int len) {
    std::vector<std::uint32_t> counts(std::size_t{1} << len);
    std::uint32_t window = 0;
    const std::uint32_t mask = (1u << len) - 1u;
    // Overlapping windows with wrap-around.
    for (int j = 0; j < len - 1; ++j) window = (window << 1) | s.bits[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < n; ++i) {
      window = ((window << 1) | s.bits[(i + static_cast<std::size_t>(len) - 1) % n]) & mask;
      ++counts[window];
    }
    double sum = 0.0;
    for (auto c : counts)
      if (c) {
        const double p = static_cast<double>(c) / static_cast<double>(n);
        sum += p * std::log(p);
      }
    return sum;
  };
  const double ap_en = phi(m) - phi(m + 1);
  const double chi2 = 2.0 * static_cast<double>(n) * (std::numbers::ln2 - ap_en);
  return make_report("approximate_entropy", params, igamc(std::ldexp(1.0, m - 1), chi2 / 2.0), alpha);
}

TestReport cumulative_sums(const BitStream& s, bool forward, double alpha) {
  const std::map<std::string, double> params{{"forward", forward ? 1.0 : 0.0}};
  const std::string name = forward ? "cumulative_sums_forward" : "cumulative_sums_reverse";
  if (s.size() < 100) return skipped(name, params, "needs at least 100 bits");
  const auto n = static_cast<long long>(s.size());
  long long sum = 0, z = 0;
  for (long long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(forward ? i : n - 1 - i);
    sum += s.bits[idx] ? 1 : -1;
    z = std::max(z, std::llabs(sum));
  }
  const double zd = static_cast<double>(z);
  const double nd = static_cast<double>(n);
  const double sqrt_n = std::sqrt(nd);
  double first = 0.0;
  for (long long k = static_cast<long long>(std::floor((-nd / zd + 1.0) / 4.0));
       k <= static_cast<long long>(std::floor((nd / zd - 1.0) / 4.0)); ++k)
    first += normal_cdf((4.0 * k + 1.0) * zd / sqrt_n) - normal_cdf((4.0 * k - 1.0) * zd / sqrt_n);
  double second = 0.0;
  for (long long k = static_cast<long long>(std::floor((-nd / zd - 3.0) / 4.0));
       k <= static_cast<long long>(std::floor((nd / zd - 1.0) / 4.0)); ++k)
    second += normal_cdf((4.0 * k + 3.0) * zd / sqrt_n) - normal_cdf((4.0 * k + 1.0) * zd / sqrt_n);
  return make_report(name, params, 1.0 - first + second, alpha);
}

std::vector<TestReport> run_nist_subset(const BitStream& s, double alpha) {
  if (s.size() < 100) throw Error(Errc::TooShort, "streams shorter than 100 bits are not tested");
  std::vector<TestReport> out;
  out.push_back(frequency_monobit(s, alpha));
  for (int m = 3; m <= 8; ++m) out.push_back(block_frequency(s, m, alpha));
  out.push_back(runs(s, alpha));
  out.push_back(longest_run_of_ones(s, alpha));
  out.push_back(binary_matrix_rank(s, 8, 8, alpha));
  out.push_back(dft_spectral(s, alpha));
  out.push_back(approximate_entropy(s, approximate_entropy_block_length(s.size()), alpha));
  out.push_back(cumulative_sums(s, true, alpha));
  out.push_back(cumulative_sums(s, false, alpha));
  return out;
}

bool all_executed_passed(const std::vector<TestReport>& reports) {
  return std::none_of(reports.begin(), reports.end(),
                      [](const TestReport& r) { return r.outcome == TestOutcome::Failed; });
}

void to_json(nlohmann::json& j, const TestReport& r) {
  j = nlohmann::json{{"test_name", r.test_name}, {"parameters", r.parameters}};
  switch (r.outcome) {
    case TestOutcome::Passed: j["decision"] = "passed"; break;
    case TestOutcome::Failed: j["decision"] = "failed"; break;
    case TestOutcome::Skipped: j["decision"] = "skipped"; break;
  }
  if (r.outcome == TestOutcome::Skipped) {
    j["p_value"] = nullptr;
    j["note"] = r.note;
  } else {
    j["p_value"] = r.p_value;
  }
}

}  // namespace sfspn
