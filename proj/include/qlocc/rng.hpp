// Copyright 2026 The qlocc Authors
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

#ifndef QLOCC_RNG_HPP
#define QLOCC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qlocc {

inline constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline constexpr uint64_t splitmix_mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Independent stream seed for work item `index` under `seed`.
inline constexpr uint64_t derive_seed(uint64_t seed, uint64_t index) {
    return splitmix_mix(seed ^ splitmix_mix(index + 0x632BE59BD9B4E019ULL));
}

// SplitMix64. Draw i of a stream is splitmix_mix(seed + (i + 1) * kGolden),
// so streams can be skipped ahead without replay.
class SplitMix64 {
   public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += kGolden;
        return splitmix_mix(state_);
    }

    void skip(uint64_t n) { state_ += n * kGolden; }

    /// [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        has_spare_ = true;
        return r * std::cos(t);
    }

   private:
    uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qlocc

#endif
