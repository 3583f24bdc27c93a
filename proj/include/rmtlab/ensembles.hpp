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
#include <string>
#include <string_view>

#include "rmtlab/matrix.hpp"
#include "rmtlab/random.hpp"

namespace rmtlab {

enum class DistKind {
  kComplexGaussian,
  kRealGaussian,
  kRademacher,
  kComplexSign,
  kUniformDisk,
  kSparseBernoulli,
  kStudentT,
};

/// Closed-form moments of one entry. sigma1_sq, sigma2_sq and sigma12 are the
/// variances of the real and imaginary parts and their covariance.
struct EntryMoments {
  double second_abs = 1.0;
  double third_abs = 0.0;
  /// Strict upper bound B on the third absolute moment (5% above it).
  double third_abs_bound = 0.0;
  double sigma1_sq = 0.0;
  double sigma2_sq = 0.0;
  double sigma12 = 0.0;
};

/// Law of a single matrix entry, scaled to mean 0 and E|X|^2 = 1 (student-t
/// with nu <= 2 has no finite variance and is left unscaled).
class EntryDistribution {
 public:
  static EntryDistribution complex_gaussian() { return {DistKind::kComplexGaussian, 0.0}; }
  static EntryDistribution real_gaussian() { return {DistKind::kRealGaussian, 0.0}; }
  static EntryDistribution rademacher() { return {DistKind::kRademacher, 0.0}; }
  static EntryDistribution complex_sign() { return {DistKind::kComplexSign, 0.0}; }
  static EntryDistribution uniform_disk() { return {DistKind::kUniformDisk, 0.0}; }
  static EntryDistribution sparse_bernoulli(double p);
  static EntryDistribution student_t(double nu);

  /// Parses the names produced by name(), e.g. "sparse-bernoulli(0.25)".
  static EntryDistribution parse(std::string_view text);

  DistKind kind() const noexcept { return kind_; }
  /// p for sparse-bernoulli, nu for student-t, 0 otherwise.
  double parameter() const noexcept { return param_; }
  std::string name() const;

  /// Real-valued entries (imaginary part identically zero).
  bool is_real() const noexcept;
  /// Heavy-tailed laws kept only to show where the moment assumptions fail.
  bool is_negative_control() const noexcept { return kind_ == DistKind::kStudentT; }
  /// Every supported law is invariant under X -> -X.
  bool is_symmetric() const noexcept { return true; }
  /// Largest possible |X|, or +inf for unbounded laws.
  double max_modulus() const noexcept;

  EntryMoments moments() const;

  Complex sample(EntryStream& stream) const;

  friend bool operator==(const EntryDistribution&, const EntryDistribution&) = default;

 private:
  EntryDistribution(DistKind kind, double param) : kind_(kind), param_(param) {}

  DistKind kind_;
  double param_;
};

struct EnsembleSpec {
  std::size_t n = 0;
  EntryDistribution dist = EntryDistribution::complex_gaussian();
  bool truncate = false;
  /// delta0 in epsilon_n = n^(-delta0).
  double epsilon_exponent = 0.05;
  Complex shift_z{};
  std::uint64_t master_seed = 0;

  /// Throws BadSpec unless n >= 2 and delta0 in (0, 1/2).
  void validate() const;
  double epsilon_n() const;
  /// sqrt(n) * epsilon_n.
  double truncation_threshold() const;
};

struct TruncationResult {
  ComplexMatrix matrix;
  std::size_t zeroed = 0;
};

/// Keeps X_jk iff |X_jk| <= sqrt(n) epsilon_n, zeroes it otherwise.
TruncationResult truncate_entries(const ComplexMatrix& x, double epsilon_n);

/// n x n matrix of i.i.d. draws, truncated when spec.truncate is set.
/// Entry (j, k) of trial t uses stream (kMatrixEntry, t, j * n + k).
ComplexMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t trial);

/// E[X 1(|X| <= threshold)].
Complex truncated_mean(const EntryDistribution& dist, double threshold);

/// The entrywise centering E X-hat for this spec (zero when not truncating).
Complex centering(const EnsembleSpec& spec);

/// X - centering * J - z sqrt(n) I, J the all-ones matrix.
ComplexMatrix shifted_matrix(const ComplexMatrix& x, Complex z, Complex centering = {});

/// n^(-1/2) X - z I.
ComplexMatrix scaled_shifted(const ComplexMatrix& x, Complex z);

/// M M^*, exactly Hermitian.
ComplexMatrix hermitian_product(const ComplexMatrix& m);

}  // namespace rmtlab
