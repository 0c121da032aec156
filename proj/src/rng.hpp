// Copyright 2026 The phonsim Authors
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

#ifndef PHONSIM_RNG_HPP
#define PHONSIM_RNG_HPP

#include <cstdint>

namespace phonsim {

// Counter-based generator (splitmix64 finalizer over key + counter*golden).
// A stream is a pure function of (key, counter), so per-trajectory streams
// keyed by (master seed, trajectory index) are independent of scheduling.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  static std::uint64_t derive_key(std::uint64_t master_seed,
                                  std::uint64_t stream_index) {
    return mix(master_seed + 0x9E3779B97F4A7C15ULL) ^
           mix(stream_index + 0xC2B2AE3D27D4EB4FULL);
  }

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ULL;
    return mix(key_ + counter_);
  }

  // Strictly inside (0, 1).
  double next_uniform() {
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace phonsim

#endif
