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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace sfspn {

inline constexpr std::size_t kDefaultBurnIn = 500;

/// Modified logistic map x_n = r x_{n-1} (1 - x_{n-1}^(1-b)).
struct LogisticParams {
  double x0 = 0.5;
  double b = 0.2;
  double r = 4.5;

  /// Throws InvalidArgument unless x0 in (0,1), b in [0,1), r > 0.
  void validate() const;
  friend bool operator==(const LogisticParams&, const LogisticParams&) = default;
};

class LogisticMap {
 public:
  explicit LogisticMap(const LogisticParams& p);

  /// Advances one step. Throws DivergedOrbit if the iterate leaves [0, 10].
  double next();
  double state() const { return x_; }

 private:
  double x_;
  double b_;
  double r_;
};

/// Iterates burn_in + n times and returns the last n values.
std::vector<double> logistic_sequence(const LogisticParams& p, std::size_t n,
                                      std::size_t burn_in = kDefaultBurnIn);

/// Tangent-delay ellipse reflecting cavity map seed.
struct TdErcsParams {
  double x0 = 0.5;
  double tan_alpha = 1.0;
  double mu = 0.5;
  int m = 3;

  /// Throws InvalidArgument for mu outside (0.05,1), m < 2 or |x0| > 1, and
  /// DegenerateSeed for x0 = +-1.
  void validate() const;
  friend bool operator==(const TdErcsParams&, const TdErcsParams&) = default;
};

class TdErcsMap {
 public:
  explicit TdErcsMap(const TdErcsParams& p);

  struct Sample {
    double x;
    double k;
  };

  /// Next (x_n, k_n). Throws NumericalBlowup when |x_n| > 1 + 1e-6 or the
  /// state stops being finite.
  Sample next();

  double x() const { return x_; }
  double y() const { return y_; }
  double k() const { return k_; }
  double k_prime_initial() const { return k_prime0_; }

 private:
  double mu2_;
  int m_;
  double x_, y_, k_;
  double k_prime0_;
  std::size_t n_ = 0;
  // x_{n-m}, y_{n-m} lookback; slot i holds iterate i mod m.
  std::vector<double> x_history_;
  std::vector<double> y_history_;
};

struct TdErcsSequence {
  std::vector<double> x;
  std::vector<double> k;
};

/// Iterates 1..n (the seed itself is not emitted).
TdErcsSequence tdercs_sequence(const TdErcsParams& p, std::size_t n);

/// floor(v * 100) mod 8 for v in (0,1).
std::vector<std::uint8_t> quantize_shifts(std::span<const double> xs);

/// floor((v + 1) * 1000) mod s_n for v in [-1,1]. Values within 1e-9 outside
/// the interval are clamped onto it.
std::vector<std::uint32_t> quantize_selectors(std::span<const double> ys, std::uint32_t s_n);

struct BifurcationScan {
  double b = 0.2;
  double r_from = 1.0;
  double r_to = 4.6;
  double r_step = 0.01;
  double x0 = 0.5;
  std::size_t burn_in = kDefaultBurnIn;
  std::size_t keep = 100;
};

/// One scatter point; x is empty when the orbit diverged for this r.
struct BifurcationRow {
  double r;
  std::optional<double> x;
};

std::vector<BifurcationRow> bifurcation_scan(const BifurcationScan& scan);
void write_bifurcation_csv(std::ostream& out, const std::vector<BifurcationRow>& rows);

enum class OrbitKind { Fixed, Periodic, Aperiodic };

struct OrbitClass {
  OrbitKind kind = OrbitKind::Aperiodic;
  int period = 0;  // 1 for Fixed, p for Periodic, 0 for Aperiodic

  friend bool operator==(const OrbitClass&, const OrbitClass&) = default;
};

inline constexpr double kDefaultOrbitTolerance = 1e-6;
inline constexpr int kMaxDetectedPeriod = 16;

/// Judged on the second half of seq. Throws TooShort below 64 samples.
OrbitClass classify_orbit(std::span<const double> seq, double tol = kDefaultOrbitTolerance);

/// Classifies logistic_sequence(p, n) with the default burn-in.
OrbitClass classify_logistic(const LogisticParams& p, std::size_t n = 1000,
                             double tol = kDefaultOrbitTolerance);

struct Divergence {
  std::optional<std::size_t> first_index;  // first n with |x1_n - x2_n| > 0.1
  std::vector<double> trace;               // |x1_n - x2_n|
};

inline constexpr double kDivergenceThreshold = 0.1;

/// No burn-in: both orbits are compared from the first iterate. Throws
/// IdenticalParams when p1 == p2 and InvalidArgument when they differ in more
/// than one field.
Divergence sensitivity_divergence(const LogisticParams& p1, const LogisticParams& p2, std::size_t n);
Divergence sensitivity_divergence(const TdErcsParams& p1, const TdErcsParams& p2, std::size_t n);

void write_divergence_csv(std::ostream& out, const Divergence& d);

void to_json(nlohmann::json& j, const OrbitClass& c);
void to_json(nlohmann::json& j, const LogisticParams& p);
void to_json(nlohmann::json& j, const TdErcsParams& p);

}  // namespace sfspn
