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

#include "sfspn/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "sfspn/error.hpp"
#include "sfspn/parallel.hpp"

namespace sfspn {

void LogisticParams::validate() const {
  if (!(x0 > 0.0 && x0 < 1.0)) throw Error(Errc::InvalidArgument, "logistic x0 must lie in (0,1)");
  if (!(b >= 0.0 && b < 1.0)) throw Error(Errc::InvalidArgument, "logistic b must lie in [0,1)");
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(Errc::InvalidArgument, "logistic r must be positive");
}

LogisticMap::LogisticMap(const LogisticParams& p) : x_(p.x0), b_(p.b), r_(p.r) { p.validate(); }

double LogisticMap::next() {
  // x^(1-b) through exp/log so that every platform evaluates the same chain.
  const double power = x_ > 0.0 ? std::exp((1.0 - b_) * std::log(x_)) : 0.0;
  const double next = r_ * x_ * (1.0 - power);
  if (!(next >= 0.0 && next <= 10.0))
    throw Error(Errc::DivergedOrbit, "iterate " + std::to_string(next) + " left [0,10] at r=" +
                                         std::to_string(r_) + ", b=" + std::to_string(b_));
  x_ = next;
  return x_;
}

std::vector<double> logistic_sequence(const LogisticParams& p, std::size_t n, std::size_t burn_in) {
  if (n < 1) throw Error(Errc::InvalidArgument, "sequence length must be at least 1");
  LogisticMap map(p);
  for (std::size_t i = 0; i < burn_in; ++i) map.next();
  std::vector<double> out(n);
  for (auto& v : out) v = map.next();
  return out;
}

void TdErcsParams::validate() const {
  if (!(mu > 0.05 && mu < 1.0)) throw Error(Errc::InvalidArgument, "TD-ERCS mu must lie in (0.05,1)");
  if (m < 2) throw Error(Errc::InvalidArgument, "TD-ERCS m must be at least 2");
  if (!std::isfinite(tan_alpha)) throw Error(Errc::InvalidArgument, "TD-ERCS tan_alpha must be finite");
  if (!(x0 >= -1.0 && x0 <= 1.0)) throw Error(Errc::InvalidArgument, "TD-ERCS x0 must lie in [-1,1]");
  if (std::abs(x0) == 1.0) throw Error(Errc::DegenerateSeed, "x0 = +-1 gives y0 = 0");
}

TdErcsMap::TdErcsMap(const TdErcsParams& p)
    : mu2_(p.mu * p.mu), m_(p.m), x_history_(static_cast<std::size_t>(p.m)),
      y_history_(static_cast<std::size_t>(p.m)) {
  p.validate();
  x_ = p.x0;
  y_ = p.mu * std::sqrt(1.0 - p.x0 * p.x0);
  k_prime0_ = -(x_ / y_) * mu2_;
  k_ = (p.tan_alpha + k_prime0_) / (1.0 - k_prime0_ * p.tan_alpha);
  x_history_[0] = x_;
  y_history_[0] = y_;
}

TdErcsMap::Sample TdErcsMap::next() {
  const std::size_t n = n_ + 1;
  const double k = k_;
  const double x = -(2.0 * k * y_ + x_ * (mu2_ - k * k)) / (mu2_ + k * k);
  const double y = k * (x - x_) + y_;

  // Delayed slope: the seed's k'_0 until m iterates exist, then the slope
  // of the tangent at (x_{n-m}, y_{n-m}).
  double kd = k_prime0_;
  if (n >= static_cast<std::size_t>(m_)) {
    const std::size_t slot = (n - static_cast<std::size_t>(m_)) % static_cast<std::size_t>(m_);
    kd = -(x_history_[slot] / y_history_[slot]) * mu2_;
  }
  const double k_next = (2.0 * kd - k + k * kd * kd) / (1.0 + 2.0 * k * kd - kd * kd);

  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(k_next) || std::abs(x) > 1.0 + 1e-6)
    throw Error(Errc::NumericalBlowup, "TD-ERCS state left the ellipse at iterate " + std::to_string(n));

  x_ = x;
  y_ = y;
  k_ = k_next;
  n_ = n;
  const std::size_t slot = n % static_cast<std::size_t>(m_);
  x_history_[slot] = x_;
  y_history_[slot] = y_;
  return {x_, k_};
}

TdErcsSequence tdercs_sequence(const TdErcsParams& p, std::size_t n) {
  TdErcsMap map(p);
  TdErcsSequence out;
  out.x.reserve(n);
  out.k.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = map.next();
    out.x.push_back(s.x);
    out.k.push_back(s.k);
  }
  return out;
}

std::vector<std::uint8_t> quantize_shifts(std::span<const double> xs) {
  std::vector<std::uint8_t> out;
  out.reserve(xs.size());
  for (double v : xs) {
    if (!(v > 0.0 && v < 1.0))
      throw Error(Errc::ValueOutOfRange, "shift source " + std::to_string(v) + " not in (0,1)");
    out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(std::floor(v * 100.0)) % 8u));
  }
  return out;
}

std::vector<std::uint32_t> quantize_selectors(std::span<const double> ys, std::uint32_t s_n) {
  if (s_n < 1) throw Error(Errc::InvalidArgument, "selector modulus must be at least 1");
  constexpr double kSlack = 1e-9;
  std::vector<std::uint32_t> out;
  out.reserve(ys.size());
  for (double v : ys) {
    if (!(v >= -1.0 - kSlack && v <= 1.0 + kSlack))
      throw Error(Errc::ValueOutOfRange, "selector source " + std::to_string(v) + " not in [-1,1]");
    const double clamped = std::clamp(v, -1.0, 1.0);
    const auto scaled = static_cast<std::uint64_t>(std::floor((clamped + 1.0) * 1000.0));
    out.push_back(static_cast<std::uint32_t>(scaled % s_n));
  }
  return out;
}

std::vector<BifurcationRow> bifurcation_scan(const BifurcationScan& scan) {
  if (!(scan.r_from < scan.r_to)) throw Error(Errc::InvalidArgument, "r_from must be below r_to");
  if (!(scan.r_step > 0.0)) throw Error(Errc::InvalidArgument, "r_step must be positive");
  if (scan.keep < 1) throw Error(Errc::InvalidArgument, "keep must be at least 1");
  // Grid points are r_from + i*step so that rounding does not accumulate.
  const auto steps = static_cast<std::size_t>(std::floor((scan.r_to - scan.r_from) / scan.r_step + 1e-9)) + 1;
  std::vector<std::vector<BifurcationRow>> per_r(steps);
  parallel_for(steps, [&](std::size_t i) {
    const double r = scan.r_from + static_cast<double>(i) * scan.r_step;
    auto& rows = per_r[i];
    try {
      for (double x : logistic_sequence({scan.x0, scan.b, r}, scan.keep, scan.burn_in))
        rows.push_back({r, x});
    } catch (const Error& e) {
      if (e.code() != Errc::DivergedOrbit) throw;
      rows.assign(1, BifurcationRow{r, std::nullopt});
    }
  });
  std::vector<BifurcationRow> rows;
  for (auto& chunk : per_r) rows.insert(rows.end(), chunk.begin(), chunk.end());
  return rows;
}

void write_bifurcation_csv(std::ostream& out, const std::vector<BifurcationRow>& rows) {
  const auto precision = out.precision(17);
  out << "r,x\n";
  for (const auto& row : rows) {
    out << row.r << ',';
    if (row.x) out << *row.x;
    else out << "diverged";
    out << '\n';
  }
  out.precision(precision);
}

OrbitClass classify_orbit(std::span<const double> seq, double tol) {
  if (seq.size() < 64) throw Error(Errc::TooShort, "orbit classification needs at least 64 samples");
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  const auto tail = seq.subspan(seq.size() / 2);
  auto repeats_with = [&](std::size_t p) {
    for (std::size_t i = 0; i + p < tail.size(); ++i)
      if (!(std::abs(tail[i + p] - tail[i]) < tol)) return false;
    return true;
  };
  if (repeats_with(1)) return {OrbitKind::Fixed, 1};
  for (int p = 2; p <= kMaxDetectedPeriod; ++p)
    if (repeats_with(static_cast<std::size_t>(p))) return {OrbitKind::Periodic, p};
  return {OrbitKind::Aperiodic, 0};
}

OrbitClass classify_logistic(const LogisticParams& p, std::size_t n, double tol) {
  const auto seq = logistic_sequence(p, n);
  return classify_orbit(seq, tol);
}

namespace {

int differing_fields(const LogisticParams& a, const LogisticParams& b) {
  return (a.x0 != b.x0) + (a.b != b.b) + (a.r != b.r);
}

int differing_fields(const TdErcsParams& a, const TdErcsParams& b) {
  return (a.x0 != b.x0) + (a.tan_alpha != b.tan_alpha) + (a.mu != b.mu) + (a.m != b.m);
}

template <class Params>
void check_pair(const Params& p1, const Params& p2) {
  const int fields = differing_fields(p1, p2);
  if (fields == 0) throw Error(Errc::IdenticalParams, "parameter sets are identical");
  if (fields > 1) throw Error(Errc::InvalidArgument, "parameter sets must differ in exactly one field");
}

Divergence compare(const std::vector<double>& a, const std::vector<double>& b) {
  Divergence d;
  d.trace.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    d.trace[i] = std::abs(a[i] - b[i]);
    if (!d.first_index && d.trace[i] > kDivergenceThreshold) d.first_index = i;
  }
  return d;
}

}  // namespace

Divergence sensitivity_divergence(const LogisticParams& p1, const LogisticParams& p2, std::size_t n) {
  check_pair(p1, p2);
  return compare(logistic_sequence(p1, n, 0), logistic_sequence(p2, n, 0));
}

Divergence sensitivity_divergence(const TdErcsParams& p1, const TdErcsParams& p2, std::size_t n) {
  check_pair(p1, p2);
  return compare(tdercs_sequence(p1, n).x, tdercs_sequence(p2, n).x);
}

void write_divergence_csv(std::ostream& out, const Divergence& d) {
  const auto precision = out.precision(17);
  out << "n,delta\n";
  for (std::size_t i = 0; i < d.trace.size(); ++i) out << i << ',' << d.trace[i] << '\n';
  out.precision(precision);
}

void to_json(nlohmann::json& j, const OrbitClass& c) {
  switch (c.kind) {
    case OrbitKind::Fixed: j = {{"verdict", "fixed"}, {"period", 1}}; break;
    case OrbitKind::Periodic: j = {{"verdict", "periodic"}, {"period", c.period}}; break;
    case OrbitKind::Aperiodic: j = {{"verdict", "aperiodic"}, {"period", nullptr}}; break;
  }
}

void to_json(nlohmann::json& j, const LogisticParams& p) {
  j = {{"x0", p.x0}, {"b", p.b}, {"r", p.r}};
}

void to_json(nlohmann::json& j, const TdErcsParams& p) {
  j = {{"x0", p.x0}, {"tan_alpha", p.tan_alpha}, {"mu", p.mu}, {"m", p.m}};
}

}  // namespace sfspn
