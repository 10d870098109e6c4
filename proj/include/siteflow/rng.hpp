// Copyright 2026 The Authors.
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

// Seeded, splittable pseudo-random generator (splitmix64). The algorithm
// is fully specified here so generated instances are reproducible across
// platforms and implementations; instance files record the generator name.
//
// fork(tag) derives an independent child stream from the parent's seed and
// the tag alone, so the draw order of sibling streams never matters.

#pragma once

#include <cstdint>

namespace siteflow {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed), state_(seed) {}

  static constexpr const char* kName = "splitmix64";

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], both inclusive (multiply-shift reduction).
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t draw = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * span) >> 64);
    return lo + static_cast<std::int64_t>(draw);
  }

  // Index into a set of `count` choices.
  std::size_t next_index(std::size_t count) {
    return static_cast<std::size_t>(next_int(0, static_cast<std::int64_t>(count) - 1));
  }

  SplitMix64 fork(std::uint64_t tag) const {
    SplitMix64 child(seed_ ^ (0xD1B54A32D192ED03ull * (tag + 1)));
    child.state_ = child.next_u64();
    child.seed_ = child.state_;
    return child;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace siteflow
