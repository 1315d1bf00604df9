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

#ifndef RELAYNET_RNG_HPP
#define RELAYNET_RNG_HPP

#include <array>
#include <cstdint>

namespace relaynet {

// xoshiro256** keyed by (seed, stream). Every (seed, stream) pair maps to a
// fixed sequence independent of platform and of any other stream, so Monte
// Carlo trials can be replayed bit-exactly and distributed across threads.
class StreamRng {
  public:
    StreamRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();

    // uniform on (0, 1], 53-bit resolution
    double next_unit();

    // unit-mean exponential variate
    double next_exponential();

    // uniform on {0, ..., bound-1}, unbiased; bound must be > 0
    std::uint64_t next_below(std::uint64_t bound);

  private:
    std::array<std::uint64_t, 4> state_;
};

} // namespace relaynet

#endif // RELAYNET_RNG_HPP
