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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rmtlab/error.hpp"
#include "rmtlab/linalg.hpp"
#include "test_util.hpp"

namespace rmtlab {
namespace {

using testing::random_complex_sign;
using testing::random_gaussian;
using testing::random_unitary;

double reconstruction_error(const ComplexMatrix& a, const SvdResult& r) {
  const ComplexMatrix& u = *r.left_vectors;
  const ComplexMatrix& v = *r.right_vectors;
  ComplexMatrix us = u;
  for (std::size_t i = 0; i < us.rows(); ++i)
    for (std::size_t k = 0; k < us.cols(); ++k) us(i, k) *= r.singular_values[k];
  return (a - multiply_adjoint(us, v)).frobenius_norm();
}

double unitarity_error(const ComplexMatrix& q) {
  return (multiply_adjoint(q.adjoint(), q.adjoint()) - ComplexMatrix::identity(q.rows()))
      .max_abs();
}

TEST(Svd, Identity) {
  for (auto method : {SvdMethod::kJacobi, SvdMethod::kGolubKahan}) {
    const auto r = svd(ComplexMatrix::identity(3), true, method);
    ASSERT_EQ(r.singular_values.size(), 3u);
    for (double s : r.singular_values) EXPECT_NEAR(s, 1.0, 1e-15);
  }
}

TEST(Svd, DiagonalIsSortedDescending) {
  const ComplexMatrix a{{3, 0, 0}, {0, 4, 0}, {0, 0, 5}};
  for (auto method : {SvdMethod::kJacobi, SvdMethod::kGolubKahan}) {
    const auto r = svd(a, true, method);
    EXPECT_NEAR(r.singular_values[0], 5.0, 1e-14);
    EXPECT_NEAR(r.singular_values[1], 4.0, 1e-14);
    EXPECT_NEAR(r.singular_values[2], 3.0, 1e-14);
    EXPECT_LE(reconstruction_error(a, r), 1e-13);
  }
}

TEST(Svd, NilpotentJordanBlock) {
  const ComplexMatrix a{{0, 1}, {0, 0}};
  for (auto method : {SvdMethod::kJacobi, SvdMethod::kGolubKahan}) {
    const auto r = svd(a, true, method);
    EXPECT_NEAR(r.singular_values[0], 1.0, 1e-15);
    EXPECT_NEAR(r.singular_values[1], 0.0, 1e-15);
    EXPECT_LE(reconstruction_error(a, r), 1e-14);
    EXPECT_LE(unitarity_error(*r.left_vectors), 1e-14);
  }
}

TEST(Svd, RejectsNonFinite) {
  ComplexMatrix a = ComplexMatrix::identity(2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    svd(a, false);
    FAIL() << "expected NonFinite";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
  a(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(eigenvalues(a), Error);
}

TEST(Svd, ReconstructionBothMethods) {
  for (std::size_t n : {1u, 2u, 5u, 17u, 64u, 200u}) {
    const ComplexMatrix a = random_gaussian(n, 100 + n);
    for (auto method : {SvdMethod::kJacobi, SvdMethod::kGolubKahan}) {
      const auto r = svd(a, true, method);
      EXPECT_TRUE(std::is_sorted(r.singular_values.rbegin(), r.singular_values.rend()));
      EXPECT_GE(r.singular_values.back(), 0.0);
      EXPECT_LE(reconstruction_error(a, r), kSvdTolerance * r.singular_values[0]) << n;
      EXPECT_LE(unitarity_error(*r.left_vectors), 1e-10) << n;
      EXPECT_LE(unitarity_error(*r.right_vectors), 1e-10) << n;
    }
  }
}

TEST(Svd, RankDeficientReconstruction) {
  // Rank 2 in dimension 6: completion of U must stay unitary.
  ComplexMatrix a(6);
  const ComplexMatrix g = random_gaussian(6, 9);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) a(i, j) = g(i, 0) * g(j, 1) + g(i, 2) * g(j, 3);
  for (auto method : {SvdMethod::kJacobi, SvdMethod::kGolubKahan}) {
    const auto r = svd(a, true, method);
    EXPECT_LE(reconstruction_error(a, r), 1e-12 * r.singular_values[0]);
    EXPECT_LE(unitarity_error(*r.left_vectors), 1e-10);
    EXPECT_LE(r.singular_values[2], 1e-13 * r.singular_values[0]);
  }
}

TEST(Svd, CompletionWhenKernelIsSpreadEvenly) {
  // Rows sum to zero, so the left null space is spanned by (1, 1, 1, 1) / 2
  // and every standard basis vector keeps only half its norm after projection.
  ComplexMatrix a(4);
  const ComplexMatrix g = random_gaussian(4, 21);
  for (std::size_t j = 0; j < 4; ++j) {
    Complex mean{};
    for (std::size_t i = 0; i < 4; ++i) mean += g(i, j) / 4.0;
    for (std::size_t i = 0; i < 4; ++i) a(i, j) = g(i, j) - mean;
  }
  for (auto method : {SvdMethod::kJacobi, SvdMethod::kGolubKahan}) {
    const auto r = svd(a, true, method);
    EXPECT_LE(reconstruction_error(a, r), 1e-12 * r.singular_values[0]);
    EXPECT_LE(unitarity_error(*r.left_vectors), 1e-10);
    EXPECT_LE(unitarity_error(*r.right_vectors), 1e-10);
  }
  // Singular sign matrices of every size hit the same path.
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const ComplexMatrix s = random_complex_sign(1 + seed % 4, seed);
    const auto r = svd(s, true, SvdMethod::kJacobi);
    EXPECT_LE(unitarity_error(*r.left_vectors), 1e-10) << seed;
  }
}

TEST(Svd, MethodsAgreeOnValues) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix a = random_complex_sign(40, seed);
    const auto j = svd(a, false, SvdMethod::kJacobi);
    const auto g = svd(a, false, SvdMethod::kGolubKahan);
    for (std::size_t k = 0; k < 40; ++k) {
      EXPECT_NEAR(j.singular_values[k], g.singular_values[k], 1e-12 * j.singular_values[0]);
    }
  }
}

TEST(Svd, UnitaryInvariance) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ComplexMatrix a = random_gaussian(24, seed);
    const ComplexMatrix q = random_unitary(24, 1000 + seed);
    const auto sa = svd(a, false).singular_values;
    const auto sq = svd(q * a, false).singular_values;
    for (std::size_t k = 0; k < sa.size(); ++k) EXPECT_NEAR(sa[k], sq[k], 1e-10);
  }
}

TEST(SpectralNorm, Examples) {
  EXPECT_NEAR(spectral_norm(ComplexMatrix::identity(4)), 1.0, 1e-15);
  ComplexMatrix single(3);
  single(1, 2) = 7.0;
  EXPECT_NEAR(spectral_norm(single), 7.0, 1e-14);
  for (std::size_t n : {1u, 3u, 10u}) {
    ComplexMatrix ones(n);
    for (auto& z : ones.data()) z = 1.0;
    EXPECT_NEAR(spectral_norm(ones), static_cast<double>(n), 1e-12);
  }
}

TEST(SpectralNorm, Submultiplicative) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix a = random_gaussian(12, 2 * seed);
    const ComplexMatrix b = random_complex_sign(12, 2 * seed + 1);
    EXPECT_LE(spectral_norm(a * b), spectral_norm(a) * spectral_norm(b) + 1e-10);
  }
}

TEST(SmallestSingularValue, Examples) {
  EXPECT_NEAR(smallest_singular_value(ComplexMatrix::identity(3)), 1.0, 1e-15);
  EXPECT_EQ(smallest_singular_value(ComplexMatrix{{1, 0}, {0, 0}}), 0.0);
  EXPECT_NEAR(smallest_singular_value(ComplexMatrix{{2, 0}, {0, 0.5}}), 0.5, 1e-15);
  // Numerically singular: rows equal.
  EXPECT_EQ(smallest_singular_value(ComplexMatrix{{1, 1}, {1, 1}}), 0.0);
}

TEST(LogAbsDet, Examples) {
  EXPECT_NEAR(finite_value(log_abs_det(ComplexMatrix::identity(5))), 0.0, 1e-15);
  const double e = std::numbers::e;
  EXPECT_NEAR(finite_value(log_abs_det(ComplexMatrix{{e, 0}, {0, e}})), 2.0, 1e-14);
  EXPECT_TRUE(is_neg_infinity(log_abs_det(ComplexMatrix{{1, 0}, {0, 0}})));
  EXPECT_TRUE(is_neg_infinity(log_abs_det(ComplexMatrix(4))));
  EXPECT_THROW(finite_value(log_abs_det(ComplexMatrix(2))), Error);
}

TEST(Eigenvalues, RotationGenerator) {
  auto ev = eigenvalues(ComplexMatrix{{0, 1}, {-1, 0}}).eigenvalues;
  ASSERT_EQ(ev.size(), 2u);
  std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });
  EXPECT_NEAR(std::abs(ev[0] - Complex(0, -1)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(ev[1] - Complex(0, 1)), 0.0, 1e-15);
}

TEST(Eigenvalues, UpperTriangular) {
  const ComplexMatrix a{{2, Complex(5, -1)}, {0, Complex(3, 1)}};
  auto ev = eigenvalues(a).eigenvalues;
  std::sort(ev.begin(), ev.end(), [](Complex x, Complex y) { return x.real() < y.real(); });
  EXPECT_NEAR(std::abs(ev[0] - Complex(2, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(ev[1] - Complex(3, 1)), 0.0, 1e-14);

  ComplexMatrix big(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i; j < 5; ++j) big(i, j) = Complex(double(i + 1), double(j) - 2.0);
  auto ev5 = eigenvalues(big).eigenvalues;
  std::sort(ev5.begin(), ev5.end(), [](Complex x, Complex y) { return x.real() < y.real(); });
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(std::abs(ev5[i] - big(i, i)), 0.0, 1e-12);
}

TEST(Eigenvalues, DegenerateInputs) {
  EXPECT_EQ(eigenvalues(ComplexMatrix(3)).eigenvalues, std::vector<Complex>(3, Complex{}));
  const auto one = eigenvalues(ComplexMatrix{{Complex(1, 2)}}).eigenvalues;
  EXPECT_EQ(one, std::vector<Complex>{Complex(1, 2)});
  const auto jordan = eigenvalues(ComplexMatrix{{0, 0}, {1, 0}}).eigenvalues;
  for (auto z : jordan) EXPECT_LT(std::abs(z), 1e-12);
}

// Independent checks: trace from the matrix diagonal, |det| from the SVD.
void expect_trace_and_det(const ComplexMatrix& a) {
  const auto ev = eigenvalues(a).eigenvalues;
  ASSERT_EQ(ev.size(), a.rows());
  Complex sum{};
  double log_prod = 0.0;
  for (auto z : ev) {
    sum += z;
    log_prod += std::log(std::abs(z));
  }
  const double norm = spectral_norm(a);
  EXPECT_LE(std::abs(sum - a.trace()), 1e-8 * norm);
  EXPECT_NEAR(log_prod, finite_value(log_abs_det(a)), 1e-8);
}

TEST(Eigenvalues, ComplexSign8x8CrossChecks) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) expect_trace_and_det(random_complex_sign(8, seed));
}

TEST(Eigenvalues, GaussianCrossChecks) {
  for (std::size_t n : {3u, 16u, 64u, 150u}) expect_trace_and_det(random_gaussian(n, 7 * n));
}

TEST(Eigenvalues, NormalMatrixHasKnownSpectrum) {
  // Q diag(l) Q^* with random unitary Q.
  const std::size_t n = 30;
  std::vector<Complex> l(n);
  for (std::size_t k = 0; k < n; ++k) l[k] = std::polar(1.0 + 0.1 * double(k), 0.7 * double(k));
  const ComplexMatrix q = random_unitary(n, 77);
  const ComplexMatrix a = multiply_adjoint(q * ComplexMatrix::diagonal(l), q);
  auto ev = eigenvalues(a).eigenvalues;
  for (auto target : l) {
    double best = 1e300;
    for (auto z : ev) best = std::min(best, std::abs(z - target));
    EXPECT_LT(best, 1e-10);
  }
}

TEST(Eigenvalues, DetModulusViaEigenvaluesMatchesSvd) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const ComplexMatrix a = random_gaussian(16, 500 + seed);
    if (smallest_singular_value(a) <= 1e-8) continue;
    double via_eig = 0.0;
    for (auto z : eigenvalues(a).eigenvalues) via_eig += std::log(std::abs(z));
    EXPECT_LE(std::abs(finite_value(log_abs_det(a)) - via_eig), 1e-6);
  }
}

TEST(Hessenberg, StructureAndSimilarity) {
  const ComplexMatrix a = random_gaussian(20, 3);
  const ComplexMatrix h = hessenberg(a);
  for (std::size_t i = 0; i < 20; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) EXPECT_EQ(h(i, j), Complex{});
  EXPECT_NEAR(std::abs(h.trace() - a.trace()), 0.0, 1e-12);
  EXPECT_NEAR(h.frobenius_norm(), a.frobenius_norm(), 1e-12);
}

}  // namespace
}  // namespace rmtlab
