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

#include "rmtlab/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rmtlab/error.hpp"

namespace rmtlab {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter c, PhiloxKey k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, c[0], hi0, lo0);
    mulhilo(kPhiloxM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kPhiloxW0;
    k[1] += kPhiloxW1;
  }
  return c;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

EntryStream::EntryStream(PhiloxKey key, std::uint64_t trial, std::uint32_t entry)
    : key_(key),
      counter_{0u, entry, static_cast<std::uint32_t>(trial),
               static_cast<std::uint32_t>(trial >> 32)} {}

void EntryStream::refill() {
  buffer_ = philox4x32_10(counter_, key_);
  ++counter_[0];
  used_ = 0;
}

std::uint32_t EntryStream::next_u32() {
  if (used_ == 4) refill();
  return buffer_[used_++];
}

std::uint64_t EntryStream::next_u64() {
  const std::uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double EntryStream::next_uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double EntryStream::next_normal() {
  if (cached_normal_) {
    const double z = *cached_normal_;
    cached_normal_.reset();
    return z;
  }
  const double r = std::sqrt(-2.0 * std::log(next_uniform()));
  const double theta = 2.0 * std::numbers::pi * next_uniform();
  cached_normal_ = r * std::sin(theta);
  return r * std::cos(theta);
}

EntryStream SeedTree::stream(StreamDomain domain, std::uint64_t trial, std::uint64_t entry) const {
  if (entry > 0xFFFFFFFFull) {
    throw Error(ErrorCode::kBadSpec, "entry index " + std::to_string(entry) + " exceeds 32 bits");
  }
  const std::uint64_t k =
      splitmix64(master_seed_ ^ splitmix64(static_cast<std::uint64_t>(domain)));
  return EntryStream({static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)}, trial,
                     static_cast<std::uint32_t>(entry));
}

}  // namespace rmtlab
