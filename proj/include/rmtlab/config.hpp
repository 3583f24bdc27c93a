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


// Experiment configuration files: a flat YAML mapping of typed scalars and
// flow lists, e.g.
//
//   kind: smin-tail
//   n: 100
//   dist: real-gaussian
//   trials: 5000
//   z: [0, 0]            # complex numbers are [re, im]
//   epsilons: [0.05, 0.1, 0.2]
//
// Unknown keys and type mismatches are errors naming the key.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rmtlab/ensembles.hpp"

namespace rmtlab {

enum class ExperimentKind {
  kCircularLaw,
  kSminTail,
  kNormBound,
  kPotentialConvergence,
  kHermitianEsdStability,
  kSingularity,
};

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view text);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kCircularLaw;
  EnsembleSpec ensemble{.n = 64};
  std::size_t trials = 8;
  /// Shift for smin-tail and hermitian-esd-stability.
  Complex z{};
  /// smin-tail thresholds on sqrt(n) s_n(W).
  std::vector<double> epsilons{0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
  /// norm-bound threshold on lambda_max(X X^* / n).
  double k = 4.41;
  /// potential-convergence evaluation points.
  std::vector<Complex> z_grid{0.0, 0.4, Complex(0, 0.4), 1.5, 2.0, Complex(1.5, 1.5)};
  double exclude_inner = 0.8;
  double exclude_outer = 1.2;
  /// potential-convergence pass level for the max deviation.
  double tolerance = 0.05;
  /// Extra points at which the empirical CDF of the headline statistic is
  /// reported.
  std::vector<double> thresholds;

  /// BadSpec on inconsistent settings.
  void validate() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Applies one `key=value` override; the value uses the file syntax.
void apply_override(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Every key in a fixed order with shortest round-trip numbers. Parsing the
/// result gives back an equal canonical form.
std::string canonical_config(const ExperimentConfig& config);

/// 64-bit FNV-1a of canonical_config.
std::uint64_t config_hash(const ExperimentConfig& config);

std::uint64_t fnv1a64(std::string_view bytes);

/// 16 lowercase hex digits.
std::string hash_hex(std::uint64_t h);

}  // namespace rmtlab
