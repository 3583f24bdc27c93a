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
#include <string>
#include <vector>

#include "rmtlab/config.hpp"
#include "rmtlab/spectra.hpp"

namespace rmtlab {

/// One Monte Carlo observation. `values` line up with Summary::columns.
struct TrialRecord {
  std::size_t trial = 0;
  std::vector<double> values;
  /// Excluded from aggregates (e.g. a numerically singular potential).
  bool singular = false;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct StatSummary {
  std::string name;
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// Normal-approximation 95% interval for the mean.
  Interval mean_ci;
};

/// A binomial proportion with its Wilson 95% interval.
struct Proportion {
  std::string label;
  double threshold = 0.0;
  std::size_t successes = 0;
  std::size_t trials = 0;
  double p_hat = 0.0;
  Interval ci;
};

struct Summary {
  ExperimentKind kind{};
  std::string canonical_config;
  std::uint64_t config_hash = 0;
  std::size_t trials = 0;
  std::size_t singular_trials = 0;
  std::vector<std::string> columns;
  std::vector<TrialRecord> records;
  std::vector<StatSummary> stats;
  std::vector<Proportion> proportions;
  /// Kind-specific derived numbers (fitted constants, exact counts, ...).
  std::vector<std::pair<std::string, double>> scalars;
  double wall_seconds = 0.0;

  const StatSummary& stat(std::string_view name) const;
  const Proportion& proportion(std::string_view label) const;
  double scalar(std::string_view name) const;
};

Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.96);

/// Mean, median, extremes and mean CI of the finite values.
StatSummary summarize(std::string name, std::vector<double> values);

/// Dispatches on config.kind. `workers` = 0 uses RMT_LAB_THREADS or the
/// hardware concurrency; results never depend on it.
Summary run_experiment(const ExperimentConfig& config, std::size_t workers = 0);

/// Columns: radial_ks, angular_ks.
Summary run_circular_law(const ExperimentConfig& config, std::size_t workers = 0);
/// Columns: sqrt_n_smin. Proportions: P(sqrt(n) s_n(W) <= eps) per eps.
/// Scalars: min_c (max of p/eps), slope (least squares over the eps grid).
Summary run_smin_tail(const ExperimentConfig& config, std::size_t workers = 0);
/// Columns: spectral_norm, lambda_max. Proportion: exceed_k.
Summary run_norm_bound(const ExperimentConfig& config, std::size_t workers = 0);
/// Columns: max_deviation then one deviation per kept grid point.
/// Proportion: within_tolerance (singular trials count as failures).
Summary run_potential_convergence(const ExperimentConfig& config, std::size_t workers = 0);
/// Columns: ks_n_2n, log_moment, log_moment_error.
Summary run_hermitian_esd_stability(const ExperimentConfig& config, std::size_t workers = 0);
/// Rademacher only. n <= 4: exact enumeration of all 2^(n^2) sign matrices
/// (trials ignored). Otherwise Monte Carlo with s_n < 1e-10. Proportion:
/// singular.
Summary run_singularity(const ExperimentConfig& config, std::size_t workers = 0);

/// Number of singular n x n sign matrices, by exhaustive enumeration with
/// exact integer determinants. n <= 4.
std::uint64_t count_singular_sign_matrices(std::size_t n);

/// W = X_hat - E X_hat - z sqrt(n) I for trial t of the config's ensemble.
ComplexMatrix shifted_sample(const EnsembleSpec& spec, Complex z, std::uint64_t trial);

}  // namespace rmtlab
