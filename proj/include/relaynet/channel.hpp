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

#ifndef RELAYNET_CHANNEL_HPP
#define RELAYNET_CHANNEL_HPP

#include "relaynet/types.hpp"

namespace relaynet {

// Thermal noise power k*T*B in watts. Rejects non-positive inputs.
double noise_variance_ktb(double temperature_k, double bandwidth_hz);

// Draws one channel realization: every squared gain is an independent
// unit-mean exponential (squared magnitude of unit-variance Rayleigh fading)
// scaled by d^(-eta), with d = total_distance_km / l_hops applied to every
// link of a hop. Pure function of (cfg.rng_seed, draw_index): the same pair
// always yields bit-identical gains.
ChannelRealization generate_channels(const NetworkConfig& cfg, std::uint64_t draw_index);

} // namespace relaynet

#endif // RELAYNET_CHANNEL_HPP
