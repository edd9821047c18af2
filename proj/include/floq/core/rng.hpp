// Copyright 2026 The floqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLOQ_CORE_RNG_HPP
#define FLOQ_CORE_RNG_HPP

#include <cstdint>
#include <random>

namespace floq {

/// splitmix64 finalizer.
inline uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Deterministic 64-bit key from a tuple of integers.
inline uint64_t hash_key(uint64_t a, uint64_t b = 0, uint64_t c = 0, uint64_t d = 0) {
    uint64_t h = mix64(a);
    h = mix64(h ^ b);
    h = mix64(h ^ (c + 0x632BE59BD9B4E019ull));
    h = mix64(h ^ (d + 0x8CB92BA72F3D8DD7ull));
    return h;
}

inline double to_unit(uint64_t bits) { return (double)(bits >> 11) * 0x1.0p-53; }

/// Stream generator seeded from a key.
using Rng = std::mt19937_64;

inline Rng make_rng(uint64_t key) { return Rng(key); }

/// Cheap counter-based stream: the k-th draw is a pure function of (key, k).
class KeyedStream {
   public:
    explicit KeyedStream(uint64_t key) : key_(key) {}
    uint64_t next() { return mix64(key_ + 0x9E3779B97F4A7C15ull * ++counter_); }
    /// Uniform in (0, 1].
    double unit_open_low() { return (double)((next() >> 11) + 1) * 0x1.0p-53; }
    double unit() { return to_unit(next()); }
    bool bit() { return next() >> 63; }

   private:
    uint64_t key_;
    uint64_t counter_ = 0;
};

}  // namespace floq

#endif
