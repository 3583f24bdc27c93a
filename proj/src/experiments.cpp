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


#include "rmtlab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/error.hpp"
#include "rmtlab/format.hpp"
#include "rmtlab/linalg.hpp"
#include "rmtlab/parallel.hpp"
#include "rmtlab/random.hpp"

namespace rmtlab {

namespace {

constexpr double kSingularThreshold = 1e-10;
constexpr std::size_t kMaxEnumerationDim = 4;

template <typename TrialFn>
Summary run_trials(const ExperimentConfig& config, std::size_t workers,
                   std::vector<std::string> columns, TrialFn&& fn) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  Summary s;
  s.kind = config.kind;
  s.canonical_config = canonical_config(config);
  s.config_hash = fnv1a64(s.canonical_config);
  s.trials = config.trials;
  s.columns = std::move(columns);
  s.records.resize(config.trials);
  parallel_for(config.trials, workers, [&](std::size_t t) {
    s.records[t] = fn(t);
    s.records[t].trial = t;
  });
  for (std::size_t c = 0; c < s.columns.size(); ++c) {
    std::vector<double> v;
    for (const auto& r : s.records) {
      if (!r.singular && c < r.values.size()) v.push_back(r.values[c]);
    }
    s.stats.push_back(summarize(s.columns[c], std::move(v)));
  }
  s.singular_trials = static_cast<std::size_t>(std::count_if(
      s.records.begin(), s.records.end(), [](const TrialRecord& r) { return r.singular; }));
  s.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

Proportion make_proportion(std::string label, double threshold, std::size_t successes,
                           std::size_t trials) {
  Proportion p{std::move(label), threshold, successes, trials, 0.0, {}};
  p.p_hat = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  p.ci = wilson_interval(successes, trials);
  return p;
}

// P(column <= threshold) over the non-singular trials.
Proportion at_most(const Summary& s, std::size_t column, double threshold, std::string label) {
  std::size_t hits = 0, total = 0;
  for (const auto& r : s.records) {
    if (r.singular) continue;
    ++total;
    hits += r.values[column] <= threshold;
  }
  return make_proportion(std::move(label), threshold, hits, total);
}

void add_thresholds(Summary& s, const ExperimentConfig& config) {
  for (double thr : config.thresholds) {
    s.proportions.push_back(
        at_most(s, 0, thr, s.columns.front() + "<=" + format_double(thr)));
  }
}

std::int64_t bareiss_determinant(std::vector<std::int64_t> a, std::size_t n) {
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
      }
    }
    prev = a[k * n + k];
  }
  return sign * a[n * n - 1];
}

}  // namespace

const StatSummary& Summary::stat(std::string_view name) const {
  for (const auto& s : stats) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::kBadParams, "no statistic '" + std::string(name) + "'");
}

const Proportion& Summary::proportion(std::string_view label) const {
  for (const auto& p : proportions) {
    if (p.label == label) return p;
  }
  throw Error(ErrorCode::kBadParams, "no proportion '" + std::string(label) + "'");
}

double Summary::scalar(std::string_view name) const {
  for (const auto& [k, v] : scalars) {
    if (k == name) return v;
  }
  throw Error(ErrorCode::kBadParams, "no scalar '" + std::string(name) + "'");
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::clamp(std::min(center - half, p), 0.0, 1.0),
          std::clamp(std::max(center + half, p), 0.0, 1.0)};
}

StatSummary summarize(std::string name, std::vector<double> values) {
  StatSummary s;
  s.name = std::move(name);
  values.erase(std::remove_if(values.begin(), values.end(), [](double v) { return !std::isfinite(v); }),
               values.end());
  s.count = values.size();
  if (values.empty()) {
    s.mean = s.median = s.min = s.max = NAN;
    s.mean_ci = {NAN, NAN};
    return s;
  }
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  // Sorted order makes the sum independent of trial scheduling.
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  s.min = values.front();
  s.max = values.back();
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  const double half = values.size() > 1 ? 1.96 * std::sqrt(ss / (n - 1.0) / n) : 0.0;
  s.mean_ci = {s.mean - half, s.mean + half};
  return s;
}

ComplexMatrix shifted_sample(const EnsembleSpec& spec, Complex z, std::uint64_t trial) {
  return shifted_matrix(sample_matrix(spec, trial), z, centering(spec));
}

Summary run_circular_law(const ExperimentConfig& config, std::size_t workers) {
  auto s = run_trials(config, workers, {"radial_ks", "angular_ks"}, [&](std::size_t t) {
    const auto ra = radial_angular_stats(esd2d(sample_matrix(config.ensemble, t)));
    std::vector<double> r2(ra.radii.size());
    std::transform(ra.radii.begin(), ra.radii.end(), r2.begin(), [](double r) { return r * r; });
    std::sort(r2.begin(), r2.end());
    return TrialRecord{t,
                       {ks_uniform(r2, 0.0, 1.0),
                        ks_uniform(ra.angles, -std::numbers::pi, std::numbers::pi)},
                       false};
  });
  add_thresholds(s, config);
  return s;
}

Summary run_smin_tail(const ExperimentConfig& config, std::size_t workers) {
  const double root_n = std::sqrt(static_cast<double>(config.ensemble.n));
  auto s = run_trials(config, workers, {"sqrt_n_smin"}, [&](std::size_t t) {
    const double sn = smallest_singular_value(shifted_sample(config.ensemble, config.z, t));
    return TrialRecord{t, {root_n * sn}, false};
  });
  // Fit over eps in [0.05, 0.5] when the grid reaches there, else all of it.
  std::vector<std::pair<double, double>> fit;
  for (double eps : config.epsilons) {
    auto p = at_most(s, 0, eps, "eps=" + format_double(eps));
    if (eps >= 0.05 - 1e-12 && eps <= 0.5 + 1e-12) fit.emplace_back(eps, p.p_hat);
    s.proportions.push_back(std::move(p));
  }
  if (fit.empty()) {
    for (const auto& p : s.proportions) fit.emplace_back(p.threshold, p.p_hat);
  }
  double min_c = 0.0;
  for (const auto& [e, p] : fit) min_c = std::max(min_c, p / e);
  double mx = 0.0, my = 0.0;
  for (const auto& [e, p] : fit) {
    mx += e;
    my += p;
  }
  mx /= static_cast<double>(fit.size());
  my /= static_cast<double>(fit.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [e, p] : fit) {
    sxy += (e - mx) * (p - my);
    sxx += (e - mx) * (e - mx);
  }
  s.scalars.emplace_back("min_c", min_c);
  s.scalars.emplace_back("slope", sxx > 0.0 ? sxy / sxx : 0.0);
  add_thresholds(s, config);
  return s;
}

Summary run_norm_bound(const ExperimentConfig& config, std::size_t workers) {
  const double n = static_cast<double>(config.ensemble.n);
  auto s = run_trials(config, workers, {"spectral_norm", "lambda_max"}, [&](std::size_t t) {
    const double s1 = spectral_norm(sample_matrix(config.ensemble, t));
    return TrialRecord{t, {s1 / std::sqrt(n), s1 * s1 / n}, false};
  });
  std::size_t exceed = 0;
  for (const auto& r : s.records) exceed += r.values[1] > config.k;
  s.proportions.push_back(make_proportion("exceed_k", config.k, exceed, s.records.size()));
  add_thresholds(s, config);
  return s;
}

Summary run_potential_convergence(const ExperimentConfig& config, std::size_t workers) {
  std::vector<Complex> kept;
  for (const auto& z : config.z_grid) {
    const double r = std::abs(z);
    if (r <= config.exclude_inner || r >= config.exclude_outer) kept.push_back(z);
  }
  if (kept.empty()) throw Error(ErrorCode::kBadSpec, "every grid point lies in the excluded annulus");
  std::vector<std::string> columns{"max_deviation"};
  for (const auto& z : kept) {
    columns.push_back("dev(" + format_double(z.real()) + "," + format_double(z.imag()) + ")");
  }
  auto s = run_trials(config, workers, columns, [&](std::size_t t) {
    const auto x = sample_matrix(config.ensemble, t);
    const auto grid =
        potential_grid(x, kept, config.exclude_inner, config.exclude_outer, /*workers=*/1);
    TrialRecord r{t, {0.0}, false};
    for (const auto& p : grid.points) {
      if (!p.value) {
        r.singular = true;
        r.values.push_back(NAN);
        continue;
      }
      const double dev = std::abs(*p.value - circular_potential(p.z));
      r.values[0] = std::max(r.values[0], dev);
      r.values.push_back(dev);
    }
    if (r.singular) r.values[0] = NAN;
    return r;
  });
  std::size_t ok = 0;
  for (const auto& r : s.records) ok += !r.singular && r.values[0] <= config.tolerance;
  s.proportions.push_back(
      make_proportion("within_tolerance", config.tolerance, ok, s.records.size()));
  add_thresholds(s, config);
  return s;
}

Summary run_hermitian_esd_stability(const ExperimentConfig& config, std::size_t workers) {
  EnsembleSpec twice = config.ensemble;
  twice.n *= 2;
  twice.master_seed = splitmix64(config.ensemble.master_seed);
  const double target = log_moment_v(config.z);
  auto s = run_trials(config, workers, {"ks_n_2n", "log_moment", "log_moment_error"},
                      [&](std::size_t t) {
                        const auto e1 = hermitian_esd(sample_matrix(config.ensemble, t), config.z);
                        const auto e2 = hermitian_esd(sample_matrix(twice, t), config.z);
                        const auto lm = empirical_log_moment(e1);
                        TrialRecord r{t, {ks_two_sample(e1.values, e2.values), NAN, NAN}, !lm};
                        if (lm) {
                          r.values[1] = *lm;
                          r.values[2] = std::abs(*lm - target);
                        }
                        return r;
                      });
  s.scalars.emplace_back("log_moment_v", target);
  add_thresholds(s, config);
  return s;
}

std::uint64_t count_singular_sign_matrices(std::size_t n) {
  if (n == 0 || n > kMaxEnumerationDim) {
    throw Error(ErrorCode::kBadParams, "exhaustive enumeration supports 1 <= n <= 4");
  }
  const std::size_t cells = n * n;
  std::uint64_t singular = 0;
  std::vector<std::int64_t> a(cells);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    for (std::size_t i = 0; i < cells; ++i) a[i] = (mask >> i) & 1u ? 1 : -1;
    singular += bareiss_determinant(a, n) == 0;
  }
  return singular;
}

Summary run_singularity(const ExperimentConfig& config, std::size_t workers) {
  config.validate();
  const std::size_t n = config.ensemble.n;
  if (n <= kMaxEnumerationDim) {
    const auto t0 = std::chrono::steady_clock::now();
    Summary s;
    s.kind = config.kind;
    s.canonical_config = canonical_config(config);
    s.config_hash = fnv1a64(s.canonical_config);
    const std::uint64_t total = std::uint64_t{1} << (n * n);
    const std::uint64_t singular = count_singular_sign_matrices(n);
    s.trials = total;
    s.columns = {"singular"};
    auto p = make_proportion("singular", 0.0, singular, total);
    p.ci = {p.p_hat, p.p_hat};  // exact
    s.proportions.push_back(p);
    s.scalars.emplace_back("exact", 1.0);
    s.scalars.emplace_back("singular_count", static_cast<double>(singular));
    s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return s;
  }
  auto s = run_trials(config, workers, {"singular", "smin"}, [&](std::size_t t) {
    const auto sv = svd(sample_matrix(config.ensemble, t), false).singular_values;
    const double sn = sv.back();
    return TrialRecord{t, {sn < kSingularThreshold ? 1.0 : 0.0, sn}, false};
  });
  std::size_t hits = 0;
  for (const auto& r : s.records) hits += r.values[0] > 0.5;
  s.proportions.push_back(make_proportion("singular", kSingularThreshold, hits, s.records.size()));
  s.scalars.emplace_back("exact", 0.0);
  return s;
}

Summary run_experiment(const ExperimentConfig& config, std::size_t workers) {
  switch (config.kind) {
    case ExperimentKind::kCircularLaw: return run_circular_law(config, workers);
    case ExperimentKind::kSminTail: return run_smin_tail(config, workers);
    case ExperimentKind::kNormBound: return run_norm_bound(config, workers);
    case ExperimentKind::kPotentialConvergence: return run_potential_convergence(config, workers);
    case ExperimentKind::kHermitianEsdStability:
      return run_hermitian_esd_stability(config, workers);
    case ExperimentKind::kSingularity: return run_singularity(config, workers);
  }
  throw Error(ErrorCode::kBadSpec, "unknown experiment kind");
}

}  // namespace rmtlab
