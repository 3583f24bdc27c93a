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

// Dense complex kernels: SVD, non-Hermitian eigenvalues, norms and
// log-determinants. All functions are pure and thread-safe.

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "rmtlab/matrix.hpp"

namespace rmtlab {

/// Relative backward-error target of the SVD.
inline constexpr double kSvdTolerance = 1e-10;
/// Singular values at or below this are treated as exact zeros by log_abs_det.
inline constexpr double kLogUnderflowFloor = 1e-300;
/// Largest n for which vector-requesting SVDs use one-sided Jacobi.
inline constexpr std::size_t kJacobiMaxDimension = 512;

/// Tag for log|det| of an (exactly) singular matrix.
struct NegInfinity {
  friend bool operator==(NegInfinity, NegInfinity) = default;
};

/// A log-modulus that is either finite or the tagged -infinity.
using LogValue = std::variant<double, NegInfinity>;

inline bool is_neg_infinity(const LogValue& v) {
  return std::holds_alternative<NegInfinity>(v);
}

/// Throws DomainError for the -infinity alternative.
double finite_value(const LogValue& v);

struct SvdResult {
  /// Nonincreasing, nonnegative.
  std::vector<double> singular_values;
  /// A = U diag(s) V^*, present when vectors were requested.
  std::optional<ComplexMatrix> left_vectors;
  std::optional<ComplexMatrix> right_vectors;
};

struct EigenResult {
  /// Multiset of eigenvalues; order carries no meaning.
  std::vector<Complex> eigenvalues;
};

enum class SvdMethod {
  /// Jacobi when vectors are wanted and n <= kJacobiMaxDimension,
  /// Golub-Kahan otherwise.
  kAuto,
  kJacobi,
  kGolubKahan,
};

SvdResult svd(const ComplexMatrix& a, bool want_vectors, SvdMethod method = SvdMethod::kAuto);

/// Householder Hessenberg reduction followed by Wilkinson-shifted complex QR.
EigenResult eigenvalues(const ComplexMatrix& a);

/// Last singular value; reported as exactly 0 when s_n <= kSvdTolerance * s_1.
double smallest_singular_value(const ComplexMatrix& a);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// sum_i log s_i, or NegInfinity when some s_i <= kLogUnderflowFloor.
LogValue log_abs_det(const ComplexMatrix& a);

/// Upper Hessenberg matrix unitarily similar to a.
ComplexMatrix hessenberg(const ComplexMatrix& a);

}  // namespace rmtlab
