// SPDX-License-Identifier: Apache-2.0
//
// relaynet - joint relay selection and power control for multi-user,
// multi-hop decode-and-forward relay networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "relaynet/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace relaynet {

namespace {

// splitmix64 finalizer, used only to expand the key into the xoshiro state
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = mix64(seed + 0x9E3779B97F4A7C15ULL) ^
                      mix64(stream + 0x3C6EF372FE94F82AULL);
    for (auto& s : state_) {
        x += 0x9E3779B97F4A7C15ULL;
        s = mix64(x);
    }
    if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0)
        state_[0] = 1;
}

std::uint64_t StreamRng::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double StreamRng::next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double StreamRng::next_exponential() {
    return -std::log(next_unit());
}

std::uint64_t StreamRng::next_below(std::uint64_t bound) {
    if (bound == 0)
        throw std::invalid_argument("StreamRng::next_below: bound must be positive");
    const std::uint64_t max_u64 = std::numeric_limits<std::uint64_t>::max();
    // reject the top 2^64 mod bound values so the modulo is unbiased
    const std::uint64_t reject = (max_u64 % bound + 1) % bound;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x > max_u64 - reject);
    return x % bound;
}

} // namespace relaynet
