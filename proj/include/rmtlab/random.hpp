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

// Counter-based random streams.
//
// Every random draw in the library is a pure function of
//   (master_seed, domain, trial, entry, block)
// evaluated with Philox4x32-10 (Salmon, Moraes, Dror, Shaw; SC'11):
//   key     = two 32-bit halves of splitmix64(master_seed ^ splitmix64(domain))
//   counter = {block, entry, trial_lo, trial_hi}
// `block` advances inside one EntryStream, so an entry may consume any number
// of 32-bit words (rejection samplers included) without touching the words of
// any other entry. Results therefore do not depend on evaluation order or on
// the number of worker threads. This layout is frozen; changing it changes
// every sampled matrix.

#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace rmtlab {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds.
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

std::uint64_t splitmix64(std::uint64_t x);

/// Independent sub-streams of one master seed.
enum class StreamDomain : std::uint32_t {
  kMatrixEntry = 1,
  kSmallBallEntry = 2,
  kCoefficient = 3,
  kAuxiliary = 4,
};

class EntryStream {
 public:
  EntryStream(PhiloxKey key, std::uint64_t trial, std::uint32_t entry);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1) with 53 random bits.
  double next_uniform();
  /// Standard normal (Box-Muller; the second variate of each pair is cached).
  double next_normal();

 private:
  void refill();

  PhiloxKey key_;
  PhiloxCounter counter_;
  PhiloxCounter buffer_{};
  int used_ = 4;
  std::optional<double> cached_normal_;
};

/// (master_seed, path) -> stream. Copyable and stateless.
class SeedTree {
 public:
  explicit SeedTree(std::uint64_t master_seed) : master_seed_(master_seed) {}

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  EntryStream stream(StreamDomain domain, std::uint64_t trial, std::uint64_t entry) const;

 private:
  std::uint64_t master_seed_;
};

}  // namespace rmtlab
