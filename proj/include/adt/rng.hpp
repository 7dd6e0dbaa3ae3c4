// Copyright 2026 the ADT authors
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
#include <vector>

namespace adt {

/// SplitMix64 stream (Steele, Lea & Flood's constants). All seeded selection
/// in this toolkit runs on this exact generator so that a given (input, seed)
/// pair reproduces bit-identically on any implementation of the same
/// contract:
///
///   state' = state + 0x9E3779B97F4A7C15
///   z = state'; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9;
///   z = (z ^ z>>27) * 0x94D049BB133111EB; output = z ^ z>>31
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Unbiased draw in [0, n) by rejection: outputs >= 2^64 - (2^64 mod n)
  /// are discarded, the first accepted output is reduced modulo n. n must be
  /// positive.
  uint64_t bounded(uint64_t n) {
    const uint64_t m = (0ULL - n) % n;  // 2^64 mod n
    uint64_t r = next();
    if (m != 0) {
      const uint64_t limit = 0ULL - m;  // 2^64 - m, the rejection boundary
      while (r >= limit) r = next();
    }
    return r % n;
  }

 private:
  uint64_t state_;
};

/// Uniform sample of k items without replacement via partial Fisher-Yates:
/// for i in [0, k): swap pool[i] with pool[i + bounded(n - i)]. The first k
/// slots are the selection, in draw order.
///
/// When k >= pool.size() the whole pool is returned unchanged and no random
/// numbers are consumed; callers that continue drawing from the same stream
/// rely on this.
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> pool, size_t k, SplitMix64& rng) {
  if (k >= pool.size()) return pool;
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(rng.bounded(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace adt
