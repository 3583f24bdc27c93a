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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rmtlab/matrix.hpp"

namespace rmtlab {

/// A point of the unit sphere in C^n. The constructor normalizes.
class UnitVector {
 public:
  /// Throws DomainError for empty, zero or non-finite input.
  explicit UnitVector(std::vector<Complex> coords);

  std::size_t size() const noexcept { return coords_.size(); }
  const std::vector<Complex>& coords() const noexcept { return coords_; }
  Complex operator[](std::size_t k) const { return coords_[k]; }

 private:
  std::vector<Complex> coords_;
};

enum class VectorClass { kSparse, kCompressible, kIncompressible };

/// Which coordinate part: 1 = real, 2 = imaginary.
enum class Part { kReal = 1, kImag = 2 };

/// floor(gamma * n), with a 1e-12 guard against products like 0.3 * 10.
std::size_t sparsity_budget(std::size_t n, double gamma);

/// Distance from b to vectors supported on at most floor(gamma n)
/// coordinates: the norm of b after removing its largest-modulus entries
/// (ties go to the lower index).
double distance_to_sparse(const UnitVector& b, double gamma);

/// Compressible uses the closed inequality distance <= rho.
VectorClass classify(const UnitVector& b, double gamma, double rho);

struct SpreadPart {
  double k1 = 0.0;
  double k2 = 0.0;
  /// Ascending indices k with k1 <= sqrt(n)|b_k| <= k2.
  std::vector<std::size_t> indices;
  /// sqrt(n) b_k for each retained k.
  std::vector<Complex> values;

  std::vector<double> real_part() const;
  std::vector<double> imag_part() const;
  std::vector<double> modulus() const;
};

SpreadPart spread_part(const UnitVector& b, double k1, double k2);

enum class LcdMethod {
  /// Exact infimum from a sweep over the admissible intervals of every coordinate.
  kExactSweep,
  /// Scan t on a grid of width grid_step, then bisect the first hit to 1e-9.
  kGridBisection,
};

struct LcdParams {
  double alpha = 0.1;
  /// Number of coordinates allowed to miss the alpha-neighbourhood.
  std::size_t tau = 0;
  double t_max = 1e4;
  /// 0 means alpha / 4.
  double grid_step = 0.0;
  LcdMethod method = LcdMethod::kExactSweep;

  /// BadParams unless alpha in (0, 1), t_max > 0 and 0 < grid_step <= alpha / 4.
  void validate() const;
  double effective_grid_step() const { return grid_step > 0.0 ? grid_step : alpha / 4.0; }
};

/// Essential LCD D_{alpha,tau}(v): the infimum of t > 0 such that all but tau
/// coordinates of t v are within alpha of a nonzero integer. Returns 0 when
/// tau >= dim(v) and std::nullopt (+inf) when no t <= t_max qualifies.
std::optional<double> lcd(std::span<const double> v, const LcdParams& params);

/// D for both coordinate parts and the moduli of a spread part. `best` is the
/// largest of the three (+inf counts as largest). A part that vanishes
/// identically (the imaginary part of a real vector, say) gets D = 0 so it
/// never wins.
struct LcdReport {
  std::optional<double> real;
  std::optional<double> imag;
  std::optional<double> modulus;
  std::optional<double> best;
};

LcdReport lcd_regimes(const SpreadPart& spread, const LcdParams& params);

struct EvenlySpreadWitness {
  Part part = Part::kReal;
  std::vector<std::size_t> indices;
};

/// Finds j and sigma_1 with |sigma_1| >= rho^2 gamma n / 4 and
/// rho / (2 sqrt(2n)) <= |b_jk| <= 1 / sqrt(gamma n) on sigma_1. BadParams if
/// b is not incompressible, WitnessNotFound if no part qualifies.
EvenlySpreadWitness evenly_spread_witness(const UnitVector& b, double gamma, double rho);

}  // namespace rmtlab
