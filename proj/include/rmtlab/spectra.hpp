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

#include <optional>
#include <span>
#include <vector>

#include "rmtlab/matrix.hpp"

namespace rmtlab {

/// Eigenvalue cloud of n^(-1/2) X.
struct Esd2D {
  std::vector<Complex> eigenvalues;

  std::size_t n() const noexcept { return eigenvalues.size(); }
  /// mu_n(x, y) = #{k : Re l_k <= x, Im l_k <= y} / n.
  double cdf(double x, double y) const;
};

/// Sorted nonnegative spectrum of a Hermitian product.
struct Esd1D {
  std::vector<double> values;

  std::size_t n() const noexcept { return values.size(); }
  double cdf(double x) const;
};

struct RadialAngular {
  std::vector<double> radii;   // ascending
  std::vector<double> angles;  // ascending, in (-pi, pi]
};

/// One evaluated point of an empirical potential grid. `value` is empty when
/// n^(-1/2) X - zI is numerically singular (the potential is +inf there).
struct PotentialPoint {
  Complex z;
  std::optional<double> value;
};

struct PotentialGrid {
  std::size_t n = 0;
  double exclude_inner = 0.8;
  double exclude_outer = 1.2;
  std::vector<PotentialPoint> points;
};

Esd2D esd2d(const ComplexMatrix& x);

/// Sorts `values` and clamps entries in [-1e-12, 0) to zero. Throws
/// DomainError for anything more negative or non-finite.
Esd1D make_esd1d(std::vector<double> values);

/// Spectrum of H_n = (n^(-1/2) X - zI)(n^(-1/2) X - zI)^*, i.e. the squared
/// singular values of n^(-1/2) X - zI.
Esd1D hermitian_esd(const ComplexMatrix& x, Complex z);

/// Throws BadSpec when fewer than two eigenvalues are present.
RadialAngular radial_angular_stats(const Esd2D& esd);

/// (1/n) sum 1 / (l_k - z). DomainError unless Im z > 0.
Complex stieltjes(const Esd1D& esd, Complex z);

/// -(1/n) sum_i log s_i(n^(-1/2) X - zI); empty when singular.
std::optional<double> empirical_potential(const ComplexMatrix& x, Complex z);

/// -(1/n) sum_k log |l_k - z| over the cloud; empty if z hits an eigenvalue.
std::optional<double> logarithmic_potential(const Esd2D& esd, Complex z);

/// (1/n) sum log l_k; empty if some l_k is zero.
std::optional<double> empirical_log_moment(const Esd1D& esd);

/// Evaluates empirical_potential at every point outside the annulus
/// exclude_inner < |z| < exclude_outer, in input order. `workers` as in
/// parallel_for.
PotentialGrid potential_grid(const ComplexMatrix& x, std::span<const Complex> points,
                             double exclude_inner = 0.8, double exclude_outer = 1.2,
                             std::size_t workers = 0);

/// Closed form of the integral over theta in [0, 2pi) of log|z - r e^{i theta}|.
double ring_integral(Complex z, double r);

/// Logarithmic potential of the uniform law on the unit disk.
double circular_potential(Complex z);

/// Integral of log x against the limiting law v(dx, z).
double log_moment_v(Complex z);

/// Partial derivative in s of log_moment_v(s + it).
double g_derivative(double s, double t);

/// Two-sided KS distance of a sorted sample to Uniform[a, b].
double ks_uniform(std::span<const double> sorted, double a, double b);

/// Two-sided two-sample KS distance between sorted samples.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace rmtlab
