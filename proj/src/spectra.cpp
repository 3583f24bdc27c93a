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


#include "rmtlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/error.hpp"
#include "rmtlab/linalg.hpp"
#include "rmtlab/parallel.hpp"

namespace rmtlab {

namespace {

constexpr double kNegativeSlack = 1e-12;

void require_square(const ComplexMatrix& x, const char* what) {
  if (!x.is_square() || x.rows() == 0) {
    throw Error(ErrorCode::kShapeMismatch, std::string(what) + " needs a nonempty square matrix");
  }
}

}  // namespace

double Esd2D::cdf(double x, double y) const {
  if (eigenvalues.empty()) return 0.0;
  std::size_t count = 0;
  for (const auto& l : eigenvalues) count += (l.real() <= x && l.imag() <= y);
  return static_cast<double>(count) / static_cast<double>(eigenvalues.size());
}

double Esd1D::cdf(double x) const {
  if (values.empty()) return 0.0;
  const auto it = std::upper_bound(values.begin(), values.end(), x);
  return static_cast<double>(it - values.begin()) / static_cast<double>(values.size());
}

Esd2D esd2d(const ComplexMatrix& x) {
  require_square(x, "esd2d");
  auto eig = eigenvalues(x).eigenvalues;
  const double scale = 1.0 / std::sqrt(static_cast<double>(x.rows()));
  for (auto& l : eig) l *= scale;
  return {std::move(eig)};
}

Esd1D make_esd1d(std::vector<double> values) {
  for (auto& v : values) {
    if (!std::isfinite(v) || v < -kNegativeSlack) {
      throw Error(ErrorCode::kDomainError, "spectrum of a Hermitian product must be nonnegative");
    }
    if (v < 0.0) v = 0.0;
  }
  std::sort(values.begin(), values.end());
  return {std::move(values)};
}

Esd1D hermitian_esd(const ComplexMatrix& x, Complex z) {
  require_square(x, "hermitian_esd");
  auto s = svd(scaled_shifted(x, z), false).singular_values;
  for (auto& v : s) v *= v;
  return make_esd1d(std::move(s));
}

RadialAngular radial_angular_stats(const Esd2D& esd) {
  if (esd.n() < 2) throw Error(ErrorCode::kBadSpec, "radial/angular statistics need n >= 2");
  RadialAngular r;
  r.radii.reserve(esd.n());
  r.angles.reserve(esd.n());
  for (const auto& l : esd.eigenvalues) {
    r.radii.push_back(std::abs(l));
    double a = std::arg(l);
    if (a <= -std::numbers::pi) a = std::numbers::pi;
    r.angles.push_back(a);
  }
  std::sort(r.radii.begin(), r.radii.end());
  std::sort(r.angles.begin(), r.angles.end());
  return r;
}

Complex stieltjes(const Esd1D& esd, Complex z) {
  if (!(z.imag() > 0.0)) throw Error(ErrorCode::kDomainError, "Stieltjes transform needs Im z > 0");
  if (esd.values.empty()) throw Error(ErrorCode::kBadSpec, "empty spectrum");
  Complex sum{};
  for (double l : esd.values) sum += 1.0 / (l - z);
  return sum / static_cast<double>(esd.n());
}

std::optional<double> empirical_potential(const ComplexMatrix& x, Complex z) {
  require_square(x, "empirical_potential");
  const LogValue ld = log_abs_det(scaled_shifted(x, z));
  if (is_neg_infinity(ld)) return std::nullopt;
  return -finite_value(ld) / static_cast<double>(x.rows());
}

std::optional<double> logarithmic_potential(const Esd2D& esd, Complex z) {
  if (esd.eigenvalues.empty()) throw Error(ErrorCode::kBadSpec, "empty spectrum");
  double sum = 0.0;
  for (const auto& l : esd.eigenvalues) {
    const double d = std::abs(l - z);
    if (d == 0.0) return std::nullopt;
    sum += std::log(d);
  }
  return -sum / static_cast<double>(esd.n());
}

std::optional<double> empirical_log_moment(const Esd1D& esd) {
  if (esd.values.empty()) throw Error(ErrorCode::kBadSpec, "empty spectrum");
  double sum = 0.0;
  for (double v : esd.values) {
    // Squared singular values below the log-determinant floor count as zero.
    if (v <= kLogUnderflowFloor * kLogUnderflowFloor) return std::nullopt;
    sum += std::log(v);
  }
  return sum / static_cast<double>(esd.n());
}

PotentialGrid potential_grid(const ComplexMatrix& x, std::span<const Complex> points,
                             double exclude_inner, double exclude_outer, std::size_t workers) {
  require_square(x, "potential_grid");
  PotentialGrid grid{x.rows(), exclude_inner, exclude_outer, {}};
  for (const auto& z : points) {
    const double r = std::abs(z);
    if (r > exclude_inner && r < exclude_outer) continue;
    if (std::any_of(grid.points.begin(), grid.points.end(),
                    [&](const PotentialPoint& p) { return p.z == z; })) {
      throw Error(ErrorCode::kBadSpec, "potential grid points must be distinct");
    }
    grid.points.push_back({z, std::nullopt});
  }
  parallel_for(grid.points.size(), workers, [&](std::size_t i) {
    grid.points[i].value = empirical_potential(x, grid.points[i].z);
  });
  return grid;
}

double ring_integral(Complex z, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::kDomainError, "ring radius must be positive");
  const double a = std::abs(z);
  return 2.0 * std::numbers::pi * std::log(a <= r ? r : a);
}

double circular_potential(Complex z) {
  const double a2 = std::norm(z);
  return a2 <= 1.0 ? 0.5 * (1.0 - a2) : -0.5 * std::log(a2);
}

double log_moment_v(Complex z) {
  const double a2 = std::norm(z);
  return a2 <= 1.0 ? a2 - 1.0 : std::log(a2);
}

double g_derivative(double s, double t) {
  const double a2 = s * s + t * t;
  return a2 > 1.0 ? 2.0 * s / a2 : 2.0 * s;
}

double ks_uniform(std::span<const double> sorted, double a, double b) {
  if (sorted.empty()) throw Error(ErrorCode::kBadSpec, "KS statistic of an empty sample");
  if (!(b > a)) throw Error(ErrorCode::kBadParams, "KS reference interval must satisfy a < b");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = std::clamp((sorted[i] - a) / (b - a), 0.0, 1.0);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kBadSpec, "KS statistic of an empty sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

}  // namespace rmtlab
