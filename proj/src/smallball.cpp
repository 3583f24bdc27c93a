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


#include "rmtlab/smallball.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "rmtlab/error.hpp"
#include "rmtlab/format.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/random.hpp"

namespace rmtlab {

namespace {

constexpr std::size_t kMaxGridCells = std::size_t{1} << 24;
constexpr double kZ95 = 1.96;

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::kBadParams, std::string(name) + " must be positive, got " + format_double(x));
  }
}

}  // namespace

void BoundParams::validate() const {
  require_positive(C, "C");
  require_positive(k1, "K1");
  require_positive(k2, "K2");
  if (!(c > 0.0 && c < 1.0)) throw Error(ErrorCode::kBadParams, "c must lie in (0, 1)");
  if (!(alpha > 0.0 && alpha < k1 / (6.0 * k2))) {
    throw Error(ErrorCode::kBadParams, "alpha must lie in (0, K1/(6 K2))");
  }
  if (!(beta > 0.0 && beta < 0.5)) throw Error(ErrorCode::kBadParams, "beta must lie in (0, 1/2)");
  if (sigma1_sq * sigma2_sq < sigma12 * sigma12) {
    throw Error(ErrorCode::kBadParams, "covariance matrix must be positive semidefinite");
  }
}

LcdRegime lcd_regime(const EntryMoments& m) {
  const double det = m.sigma1_sq * m.sigma2_sq - m.sigma12 * m.sigma12;
  if (m.sigma1_sq == 0.0 || m.sigma2_sq == 0.0 ||
      std::abs(det) <= 1e-12 * m.sigma1_sq * m.sigma2_sq) {
    return LcdRegime::kComponents;
  }
  return LcdRegime::kGeneral;
}

std::optional<double> regime_lcd(const LcdReport& report, LcdRegime regime) {
  auto larger = [](std::optional<double> x, std::optional<double> y) -> std::optional<double> {
    if (!x || !y) return std::nullopt;
    return std::max(*x, *y);
  };
  const auto comp = larger(report.real, report.imag);
  return regime == LcdRegime::kComponents ? comp : larger(comp, report.modulus);
}

std::vector<Complex> smallball_samples(std::span<const Complex> b, const EntryDistribution& dist,
                                       std::span<const Complex> shift, std::size_t trials,
                                       std::uint64_t seed, std::size_t workers) {
  if (b.empty()) throw Error(ErrorCode::kBadSpec, "coefficient vector is empty");
  if (!shift.empty() && shift.size() != b.size()) {
    throw Error(ErrorCode::kShapeMismatch, "shift vector length differs from coefficient length");
  }
  Complex offset{};
  for (std::size_t k = 0; k < shift.size(); ++k) offset += b[k] * shift[k];
  const SeedTree tree(seed);
  std::vector<Complex> out(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    Complex s{};
    for (std::size_t k = 0; k < b.size(); ++k) {
      EntryStream st = tree.stream(StreamDomain::kSmallBallEntry, t, k);
      s += b[k] * dist.sample(st);
    }
    out[t] = s - offset;
  });
  return out;
}

std::vector<SmallBallEstimate> estimate_smallball(std::span<const Complex> samples,
                                                  std::span<const double> epsilons) {
  if (samples.empty()) throw Error(ErrorCode::kBadSpec, "no samples");
  if (epsilons.empty()) throw Error(ErrorCode::kBadParams, "no epsilon values");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    require_positive(epsilons[i], "epsilon");
    if (i > 0 && !(epsilons[i] > epsilons[i - 1])) {
      throw Error(ErrorCode::kBadParams, "epsilon grid must be strictly increasing");
    }
  }
  const std::size_t ne = epsilons.size();
  const double h = epsilons.front() / 2.0;
  const double half_diag = h / std::numbers::sqrt2;
  const double reach = epsilons.back() + half_diag;
  const auto r_cells = static_cast<std::int64_t>(std::ceil(reach / h));

  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : samples) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw Error(ErrorCode::kNonFinite, "non-finite small-ball sample");
    }
    xmin = std::min(xmin, s.real());
    xmax = std::max(xmax, s.real());
    ymin = std::min(ymin, s.imag());
    ymax = std::max(ymax, s.imag());
  }
  const auto ix0 = static_cast<std::int64_t>(std::floor(xmin / h)) - r_cells;
  const auto iy0 = static_cast<std::int64_t>(std::floor(ymin / h)) - r_cells;
  const auto w = static_cast<std::int64_t>(std::floor(xmax / h)) + r_cells - ix0 + 1;
  const auto hgt = static_cast<std::int64_t>(std::floor(ymax / h)) + r_cells - iy0 + 1;
  if (static_cast<double>(w) * static_cast<double>(hgt) > static_cast<double>(kMaxGridCells)) {
    throw Error(ErrorCode::kBadParams, "sample cloud spans more than 2^24 grid cells; raise epsilon");
  }
  const std::size_t cells = static_cast<std::size_t>(w * hgt);

  // Counting sort of the samples into cells.
  std::vector<std::size_t> start(cells + 1, 0);
  std::vector<std::size_t> cell_of(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto cx = static_cast<std::int64_t>(std::floor(samples[i].real() / h)) - ix0;
    const auto cy = static_cast<std::int64_t>(std::floor(samples[i].imag() / h)) - iy0;
    cell_of[i] = static_cast<std::size_t>(cy * w + cx);
    ++start[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) start[c + 1] += start[c];
  std::vector<double> px(samples.size()), py(samples.size());
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const std::size_t slot = fill[cell_of[i]]++;
      px[slot] = samples[i].real();
      py[slot] = samples[i].imag();
    }
  }
  // 2-D prefix sums of occupancy to skip centers with nothing in reach.
  const std::size_t pw = static_cast<std::size_t>(w) + 1;
  std::vector<std::size_t> prefix(pw * (static_cast<std::size_t>(hgt) + 1), 0);
  for (std::int64_t y = 0; y < hgt; ++y) {
    for (std::int64_t x = 0; x < w; ++x) {
      const std::size_t c = static_cast<std::size_t>(y * w + x);
      prefix[(y + 1) * pw + x + 1] = start[c + 1] - start[c] + prefix[y * pw + x + 1] +
                                     prefix[(y + 1) * pw + x] - prefix[y * pw + x];
    }
  }
  auto window_count = [&](std::int64_t x0, std::int64_t y0, std::int64_t x1, std::int64_t y1) {
    x0 = std::max<std::int64_t>(x0, 0);
    y0 = std::max<std::int64_t>(y0, 0);
    x1 = std::min<std::int64_t>(x1, w - 1);
    y1 = std::min<std::int64_t>(y1, hgt - 1);
    if (x0 > x1 || y0 > y1) return std::size_t{0};
    return prefix[(y1 + 1) * pw + x1 + 1] - prefix[y0 * pw + x1 + 1] - prefix[(y1 + 1) * pw + x0] +
           prefix[y0 * pw + x0];
  };

  std::vector<double> tight2(ne), loose2(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    tight2[e] = epsilons[e] * epsilons[e];
    loose2[e] = (epsilons[e] + half_diag) * (epsilons[e] + half_diag);
  }
  const double reach2 = loose2.back();
  const auto occupied_reach = static_cast<std::int64_t>(std::ceil(epsilons.back() / h)) + 1;

  std::vector<std::size_t> best(ne, 0), best_loose(ne, 0);
  std::vector<Complex> best_center(ne);
  std::vector<std::size_t> hist_t(ne), hist_l(ne);
  for (std::int64_t cy = 0; cy < hgt; ++cy) {
    for (std::int64_t cx = 0; cx < w; ++cx) {
      if (window_count(cx - occupied_reach, cy - occupied_reach, cx + occupied_reach,
                       cy + occupied_reach) == 0) {
        continue;
      }
      const double vx = (static_cast<double>(cx + ix0) + 0.5) * h;
      const double vy = (static_cast<double>(cy + iy0) + 0.5) * h;
      std::fill(hist_t.begin(), hist_t.end(), 0);
      std::fill(hist_l.begin(), hist_l.end(), 0);
      for (std::int64_t y = std::max<std::int64_t>(cy - r_cells, 0);
           y <= std::min<std::int64_t>(cy + r_cells, hgt - 1); ++y) {
        for (std::int64_t x = std::max<std::int64_t>(cx - r_cells, 0);
             x <= std::min<std::int64_t>(cx + r_cells, w - 1); ++x) {
          const std::size_t c = static_cast<std::size_t>(y * w + x);
          for (std::size_t i = start[c]; i < start[c + 1]; ++i) {
            const double dx = px[i] - vx, dy = py[i] - vy;
            const double d2 = dx * dx + dy * dy;
            if (d2 > reach2) continue;
            const auto it = std::lower_bound(tight2.begin(), tight2.end(), d2);
            if (it != tight2.end()) ++hist_t[static_cast<std::size_t>(it - tight2.begin())];
            ++hist_l[static_cast<std::size_t>(std::lower_bound(loose2.begin(), loose2.end(), d2) -
                                              loose2.begin())];
          }
        }
      }
      std::size_t acc_t = 0, acc_l = 0;
      for (std::size_t e = 0; e < ne; ++e) {
        acc_t += hist_t[e];
        acc_l += hist_l[e];
        if (acc_t > best[e]) {
          best[e] = acc_t;
          best_center[e] = {vx, vy};
        }
        best_loose[e] = std::max(best_loose[e], acc_l);
      }
    }
  }

  const double trials = static_cast<double>(samples.size());
  std::vector<SmallBallEstimate> out(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    auto& r = out[e];
    r.epsilon = epsilons[e];
    r.trials = samples.size();
    r.p_hat = static_cast<double>(best[e]) / trials;
    r.grid_bias = std::max(0.0, static_cast<double>(best_loose[e]) / trials - r.p_hat);
    r.half_width = kZ95 * std::sqrt(r.p_hat * (1.0 - r.p_hat) / trials) + r.grid_bias;
    r.mode_center = best_center[e];
  }
  return out;
}

SmallBallEstimate empirical_smallball(std::span<const Complex> b, const EntryDistribution& dist,
                                      std::span<const Complex> shift, double epsilon,
                                      std::size_t trials, std::uint64_t seed,
                                      std::size_t workers) {
  if (trials < 1000) throw Error(ErrorCode::kBadParams, "small-ball estimates need >= 1000 trials");
  const auto samples = smallball_samples(b, dist, shift, trials, seed, workers);
  const double eps[] = {epsilon};
  return estimate_smallball(samples, eps).front();
}

double berry_esseen_bound(std::size_t n, double epsilon, double k1, double k2, double C) {
  if (n == 0) throw Error(ErrorCode::kBadParams, "n must be positive");
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::kBadParams, "epsilon must be nonnegative");
  require_positive(k1, "K1");
  require_positive(C, "C");
  if (!(k2 >= k1)) throw Error(ErrorCode::kBadParams, "K2 must be >= K1");
  const double ratio = k2 / k1;
  return clamp01(C / std::sqrt(static_cast<double>(n)) * (epsilon / k1 + ratio * ratio * ratio));
}

double lcd_bound(double epsilon, std::size_t n, std::optional<double> d, double alpha, double beta,
                 double C, double c) {
  if (n == 0) throw Error(ErrorCode::kBadParams, "n must be positive");
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::kBadParams, "epsilon must be nonnegative");
  if (d && !(*d >= 0.0)) throw Error(ErrorCode::kBadParams, "D must be nonnegative");
  require_positive(beta, "beta");
  require_positive(C, "C");
  const double nn = static_cast<double>(n);
  const double inv_d = !d ? 0.0 : (*d == 0.0 ? INFINITY : 1.0 / (std::sqrt(nn) * *d));
  const double value =
      C / std::sqrt(beta) * (epsilon + inv_d) + C * std::exp(-c * alpha * alpha * beta * nn);
  return clamp01(value);
}

double esseen_integral_bound(std::span<const double> b, double epsilon,
                             const EntryDistribution& dist, double C) {
  if (b.empty()) throw Error(ErrorCode::kBadSpec, "coefficient vector is empty");
  require_positive(epsilon, "epsilon");
  require_positive(C, "C");
  const bool rademacher = dist.kind() == DistKind::kRademacher;
  if (!rademacher && dist.kind() != DistKind::kRealGaussian) {
    throw Error(ErrorCode::kBadSpec, "no closed-form characteristic factor for " + dist.name());
  }
  double bmax = 0.0;
  for (double x : b) bmax = std::max(bmax, std::abs(x));
  auto integrand = [&](double t) {
    double p = 1.0;
    for (double x : b) {
      const double u = x * t / epsilon;
      p *= rademacher ? std::abs(std::cos(u)) : std::exp(-0.5 * u * u);
    }
    return p;
  };
  // The integrand is even. Panels no wider than a quarter period of the
  // fastest factor keep the |cos| kinks at panel edges or well resolved.
  const double half = std::numbers::pi / 2.0;
  const double width = bmax > 0.0 ? std::min(half, half * epsilon / bmax) : half;
  const auto panels = static_cast<std::size_t>(std::ceil(half / width));
  double total = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double a = half * static_cast<double>(i) / static_cast<double>(panels);
    const double z = half * static_cast<double>(i + 1) / static_cast<double>(panels);
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, z, 15,
                                                                           1e-12);
  }
  return C * 2.0 * total;
}

double paley_zygmund_mu(double lambda, double b) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error(ErrorCode::kBadParams, "lambda must lie in (0, 1)");
  require_positive(b, "B");
  const double l2 = 1.0 - lambda * lambda;
  auto f = [&](double t) {
    const double num = t * t + l2;
    const double den = t * t * t + 1.0 + b;
    return num * num * num / (den * den);
  };
  constexpr double kStep = 1e-3;
  constexpr int kSteps = 100000;
  int best_i = 0;
  double best = f(0.0);
  for (int i = 1; i <= kSteps; ++i) {
    const double v = f(i * kStep);
    if (v < best) {
      best = v;
      best_i = i;
    }
  }
  // Golden-section refinement around the best grid point.
  double lo = std::max(0.0, (best_i - 1) * kStep);
  double hi = std::min(kSteps * kStep, (best_i + 1) * kStep);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  best = std::min({best, f1, f2});
  // f -> 1 as t -> infinity.
  return std::min(best, 1.0);
}

}  // namespace rmtlab
