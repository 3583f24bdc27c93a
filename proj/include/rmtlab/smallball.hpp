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


#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/matrix.hpp"
#include "rmtlab/vector_geometry.hpp"

namespace rmtlab {

struct SmallBallEstimate {
  double epsilon = 0.0;
  /// max over grid centers v of the fraction of samples with |S - v| <= eps.
  double p_hat = 0.0;
  std::size_t trials = 0;
  /// 1.96 sqrt(p(1-p)/trials) + grid_bias.
  double half_width = 0.0;
  /// Fraction gained by widening the disk by the grid half-diagonal: an upper
  /// bound on what the grid can miss of the sup over all v.
  double grid_bias = 0.0;
  Complex mode_center{};
};

/// Constants of the concentration bounds. C and c are existential in the
/// theory, so they are inputs here.
struct BoundParams {
  double C = 1.0;
  double c = 0.5;
  double alpha = 0.1;
  double beta = 0.25;
  double k1 = 1.0;
  double k2 = 1.0;
  double third_moment_bound = 1.05;
  double sigma1_sq = 1.0;
  double sigma2_sq = 0.0;
  double sigma12 = 0.0;

  /// BadParams unless 0 < alpha < K1/(6 K2), 0 < beta < 1/2, 0 < c < 1,
  /// C > 0 and sigma1^2 sigma2^2 >= sigma12^2.
  void validate() const;
};

enum class LcdRegime {
  /// Real, imaginary or linearly correlated entries: D = max(D(b1), D(b2)).
  kComponents,
  /// General complex entries: the better of the component and modulus forms.
  kGeneral,
};

LcdRegime lcd_regime(const EntryMoments& moments);

/// The D that enters lcd_bound for this regime (nullopt = +inf).
std::optional<double> regime_lcd(const LcdReport& report, LcdRegime regime);

/// S_t = sum_k b_k (eta_k - a_k) for t in [0, trials); eta_k of trial t comes
/// from stream (kSmallBallEntry, t, k). An empty `shift` means a = 0.
std::vector<Complex> smallball_samples(std::span<const Complex> b, const EntryDistribution& dist,
                                       std::span<const Complex> shift, std::size_t trials,
                                       std::uint64_t seed, std::size_t workers = 0);

/// Grid estimate of sup_v P(|S - v| <= eps) for each eps (sorted ascending,
/// positive). Every eps shares one candidate grid of pitch min(eps)/2, so the
/// estimates are nondecreasing in eps.
std::vector<SmallBallEstimate> estimate_smallball(std::span<const Complex> samples,
                                                  std::span<const double> epsilons);

/// Sampling plus estimation for one epsilon. Requires trials >= 1000.
SmallBallEstimate empirical_smallball(std::span<const Complex> b, const EntryDistribution& dist,
                                      std::span<const Complex> shift, double epsilon,
                                      std::size_t trials, std::uint64_t seed,
                                      std::size_t workers = 0);

/// (C / sqrt(n)) (eps / K1 + (K2 / K1)^3), clamped to [0, 1].
double berry_esseen_bound(std::size_t n, double epsilon, double k1, double k2, double C);

/// (C / sqrt(beta)) (eps + 1 / (sqrt(n) D)) + C exp(-c alpha^2 beta n), clamped
/// to [0, 1]; nullopt D means +inf.
double lcd_bound(double epsilon, std::size_t n, std::optional<double> d, double alpha, double beta,
                 double C, double c);

/// C times the integral over [-pi/2, pi/2] of prod_k |phi(b_k t / eps)|, for
/// Rademacher (|cos|) and real-gaussian (exp(-x^2/2)) entries. BadSpec for
/// other laws or empty b.
double esseen_integral_bound(std::span<const double> b, double epsilon,
                             const EntryDistribution& dist, double C);

/// min over t >= 0 of (t^2 + 1 - lambda^2)^3 / (t^3 + 1 + B)^2.
double paley_zygmund_mu(double lambda, double b);

}  // namespace rmtlab
