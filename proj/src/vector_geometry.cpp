// Copyright 2026 The rmt-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rmtlab/vector_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "rmtlab/error.hpp"
#include "rmtlab/format.hpp"

namespace rmtlab {

namespace {

constexpr double kLcdBisectionTolerance = 1e-9;

void check_unit_interval(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) {
    throw Error(ErrorCode::kBadParams,
                std::string(name) + " must lie in (0, 1), got " + format_double(x));
  }
}

// dist(x, Z \ {0}) <= alpha for x >= 0.
bool near_nonzero_integer(double x, double alpha) {
  const double m = std::max(1.0, std::nearbyint(x));
  return std::abs(x - m) <= alpha;
}

std::size_t admissible_count(std::span<const double> mags, double t, double alpha) {
  std::size_t c = 0;
  for (double a : mags) c += a > 0.0 && near_nonzero_integer(t * a, alpha);
  return c;
}

struct SweepEvent {
  double t;
  bool is_end;
  std::size_t coord;
  double m;
};

struct SweepLater {
  bool operator()(const SweepEvent& x, const SweepEvent& y) const {
    if (x.t != y.t) return x.t > y.t;
    if (x.is_end != y.is_end) return x.is_end;  // starts first: intervals are closed
    return x.coord > y.coord;
  }
};

std::optional<double> lcd_sweep(std::span<const double> mags, std::size_t need,
                                const LcdParams& p) {
  const bool merged = p.alpha >= 0.5;  // consecutive intervals overlap
  std::priority_queue<SweepEvent, std::vector<SweepEvent>, SweepLater> heap;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    if (mags[k] > 0.0) heap.push({(1.0 - p.alpha) / mags[k], false, k, 1.0});
  }
  std::size_t active = 0;
  while (!heap.empty()) {
    const SweepEvent e = heap.top();
    heap.pop();
    if (e.t > p.t_max) return std::nullopt;
    const double a = mags[e.coord];
    if (!e.is_end) {
      if (++active >= need) return e.t;
      if (!merged) heap.push({(e.m + p.alpha) / a, true, e.coord, e.m});
    } else {
      --active;
      heap.push({(e.m + 1.0 - p.alpha) / a, false, e.coord, e.m + 1.0});
    }
  }
  return std::nullopt;
}

std::optional<double> lcd_grid(std::span<const double> mags, std::size_t need,
                               const LcdParams& p) {
  const double h = p.effective_grid_step();
  const auto steps = static_cast<std::size_t>(std::floor(p.t_max / h));
  for (std::size_t i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) * h;
    if (admissible_count(mags, t, p.alpha) < need) continue;
    double lo = static_cast<double>(i - 1) * h;
    double hi = t;
    while (hi - lo > kLcdBisectionTolerance) {
      const double mid = 0.5 * (lo + hi);
      (admissible_count(mags, mid, p.alpha) >= need ? hi : lo) = mid;
    }
    return hi;
  }
  return std::nullopt;
}

bool larger_d(const std::optional<double>& x, const std::optional<double>& y) {
  if (!y) return false;
  if (!x) return true;
  return *x > *y;
}

}  // namespace

UnitVector::UnitVector(std::vector<Complex> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorCode::kDomainError, "unit vector needs at least one coordinate");
  double scale = 0.0;
  for (const auto& z : coords_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::kDomainError, "vector has non-finite coordinates");
    }
    scale = std::max(scale, std::abs(z));
  }
  if (scale == 0.0) throw Error(ErrorCode::kDomainError, "cannot normalize the zero vector");
  double ss = 0.0;
  for (const auto& z : coords_) ss += std::norm(z / scale);
  const double norm = scale * std::sqrt(ss);
  for (auto& z : coords_) z /= norm;
}

std::size_t sparsity_budget(std::size_t n, double gamma) {
  check_unit_interval(gamma, "gamma");
  return static_cast<std::size_t>(std::floor(gamma * static_cast<double>(n) + 1e-12));
}

double distance_to_sparse(const UnitVector& b, double gamma) {
  const std::size_t n = b.size();
  const std::size_t keep = std::min(n, sparsity_budget(n, gamma));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return std::abs(b[x]) > std::abs(b[y]); });
  // Smallest terms first for a stable sum.
  double ss = 0.0;
  for (std::size_t i = n; i-- > keep;) ss += std::norm(b[order[i]]);
  return std::sqrt(ss);
}

VectorClass classify(const UnitVector& b, double gamma, double rho) {
  check_unit_interval(rho, "rho");
  const std::size_t support = static_cast<std::size_t>(
      std::count_if(b.coords().begin(), b.coords().end(), [](Complex z) { return z != 0.0; }));
  if (support <= sparsity_budget(b.size(), gamma)) return VectorClass::kSparse;
  return distance_to_sparse(b, gamma) <= rho ? VectorClass::kCompressible
                                             : VectorClass::kIncompressible;
}

std::vector<double> SpreadPart::real_part() const {
  std::vector<double> r(values.size());
  std::transform(values.begin(), values.end(), r.begin(), [](Complex z) { return z.real(); });
  return r;
}

std::vector<double> SpreadPart::imag_part() const {
  std::vector<double> r(values.size());
  std::transform(values.begin(), values.end(), r.begin(), [](Complex z) { return z.imag(); });
  return r;
}

std::vector<double> SpreadPart::modulus() const {
  std::vector<double> r(values.size());
  std::transform(values.begin(), values.end(), r.begin(), [](Complex z) { return std::abs(z); });
  return r;
}

SpreadPart spread_part(const UnitVector& b, double k1, double k2) {
  if (!(k1 > 0.0 && k2 >= k1)) {
    throw Error(ErrorCode::kBadParams, "spread part needs 0 < K1 <= K2");
  }
  const double root_n = std::sqrt(static_cast<double>(b.size()));
  SpreadPart s{k1, k2, {}, {}};
  for (std::size_t k = 0; k < b.size(); ++k) {
    const Complex v = root_n * b[k];
    const double m = std::abs(v);
    if (k1 <= m && m <= k2) {
      s.indices.push_back(k);
      s.values.push_back(v);
    }
  }
  return s;
}

void LcdParams::validate() const {
  check_unit_interval(alpha, "alpha");
  if (!(t_max > 0.0)) throw Error(ErrorCode::kBadParams, "t_max must be positive");
  const double h = effective_grid_step();
  if (!(h > 0.0) || h > alpha / 4.0) {
    throw Error(ErrorCode::kBadParams,
                "grid_step " + format_double(h) + " exceeds alpha/4 = " + format_double(alpha / 4.0));
  }
}

std::optional<double> lcd(std::span<const double> v, const LcdParams& params) {
  params.validate();
  if (params.tau >= v.size()) return 0.0;
  std::vector<double> mags(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k])) throw Error(ErrorCode::kNonFinite, "lcd input is not finite");
    mags[k] = std::abs(v[k]);
  }
  const std::size_t need = v.size() - params.tau;
  if (params.method == LcdMethod::kGridBisection) return lcd_grid(mags, need, params);
  return lcd_sweep(mags, need, params);
}

LcdReport lcd_regimes(const SpreadPart& spread, const LcdParams& params) {
  auto part_lcd = [&](const std::vector<double>& v) -> std::optional<double> {
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) return 0.0;
    return lcd(v, params);
  };
  LcdReport r;
  r.real = part_lcd(spread.real_part());
  r.imag = part_lcd(spread.imag_part());
  r.modulus = part_lcd(spread.modulus());
  r.best = r.real;
  if (larger_d(r.imag, r.best)) r.best = r.imag;
  if (larger_d(r.modulus, r.best)) r.best = r.modulus;
  return r;
}

EvenlySpreadWitness evenly_spread_witness(const UnitVector& b, double gamma, double rho) {
  if (classify(b, gamma, rho) != VectorClass::kIncompressible) {
    throw Error(ErrorCode::kBadParams, "evenly spread witness needs an incompressible vector");
  }
  const double n = static_cast<double>(b.size());
  const double lo = rho / (2.0 * std::sqrt(2.0 * n));
  const double hi = 1.0 / std::sqrt(gamma * n);
  EvenlySpreadWitness parts[2] = {{Part::kReal, {}}, {Part::kImag, {}}};
  for (std::size_t k = 0; k < b.size(); ++k) {
    const double re = std::abs(b[k].real());
    const double im = std::abs(b[k].imag());
    if (lo <= re && re <= hi) parts[0].indices.push_back(k);
    if (lo <= im && im <= hi) parts[1].indices.push_back(k);
  }
  auto& best = parts[1].indices.size() > parts[0].indices.size() ? parts[1] : parts[0];
  const double required = rho * rho * gamma * n / 4.0;
  if (static_cast<double>(best.indices.size()) < required) {
    throw Error(ErrorCode::kWitnessNotFound,
                "largest part has " + std::to_string(best.indices.size()) + " coordinates, need " +
                    format_double(required));
  }
  return best;
}

}  // namespace rmtlab
