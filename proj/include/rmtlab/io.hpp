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


// File outputs: per-trial and aggregate CSV, summary JSON, SVG plots and the
// on-disk results cache. Every writer returns the exact bytes it would write,
// so outputs can be compared without touching the file system. Numbers use
// shortest round-trip text and never depend on the locale.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rmtlab/config.hpp"
#include "rmtlab/experiments.hpp"
#include "rmtlab/spectra.hpp"

namespace rmtlab {

inline constexpr std::string_view kToolVersion = "0.1.0";
/// Bumped whenever a CSV header or column meaning changes.
inline constexpr int kCsvSchemaVersion = 1;

/// Writes `bytes` verbatim, creating parent directories. Throws kIo.
void write_file(const std::filesystem::path& path, std::string_view bytes);
std::string read_file(const std::filesystem::path& path);

/// trial,<columns...>,singular
std::string trials_csv(const Summary& summary);

/// epsilon,p_hat,ci_lo,ci_hi,trials,n,dist,z_re,z_im
std::string smin_tail_csv(const Summary& summary, const ExperimentConfig& config);

/// label,threshold,successes,trials,p_hat,ci_lo,ci_hi
std::string proportions_csv(const Summary& summary);

/// re,im
std::string eigenvalues_csv(const Esd2D& esd);

/// re,im,potential,circular,deviation  (potential is "singular" when undefined)
std::string potential_grid_csv(const PotentialGrid& grid);

struct SmallBallRow {
  double epsilon = 0.0;
  double p_hat = 0.0;
  double half_width = 0.0;
  double be_bound = 0.0;
  /// Only defined for Rademacher and real-gaussian coefficients.
  std::optional<double> esseen_bound;
  double lcd_bound = 0.0;
};

/// epsilon,p_hat,half_width,be_bound,esseen_bound,lcd_bound
std::string smallball_csv(const std::vector<SmallBallRow>& rows);

/// Metadata, stats, proportions and scalars. Per-trial values stay in the CSV.
std::string summary_json(const Summary& summary);

/// Reads one coordinate per line as "re" or "re,im". Blank lines and lines
/// starting with '#' are skipped; a non-numeric first line is taken as a
/// header. Throws kParse naming the line.
std::vector<Complex> read_vector_csv(const std::filesystem::path& path);

/// 800 x 800 scatter of the eigenvalue cloud on [-extent, extent]^2. Markers
/// that coincide at three decimals are drawn once.
std::string scatter_svg(const Esd2D& esd, bool unit_circle, double extent = 1.5);

struct CurvePoint {
  double x = 0.0;
  double y = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Polyline through (x, y) over a shaded [lo, hi] band, both axes autoscaled.
std::string curve_svg(const std::vector<CurvePoint>& points, std::string_view title,
                      std::string_view x_label, std::string_view y_label);

struct CacheEntry {
  std::string config_hash;
  std::string tool_version;
  std::string created;
  std::vector<std::string> artifacts;
};

/// Results directory layout: <root>/<config hash>/ holds the artifacts and a
/// cache.json describing them.
class ResultsCache {
 public:
  explicit ResultsCache(std::filesystem::path root) : root_(std::move(root)) {}

  std::filesystem::path directory(std::uint64_t hash) const;
  /// Hit only when cache.json names this exact hash and tool version and
  /// every artifact is still present.
  std::optional<CacheEntry> lookup(std::uint64_t hash) const;
  void store(std::uint64_t hash, const std::vector<std::string>& artifacts) const;

 private:
  std::filesystem::path root_;
};

}  // namespace rmtlab
