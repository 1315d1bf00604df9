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

#include "relaynet/channel.hpp"

#include "relaynet/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace relaynet {

double noise_variance_ktb(double temperature_k, double bandwidth_hz) {
    if (!(temperature_k > 0.0))
        throw std::invalid_argument("noise_variance_ktb: temperature must be positive");
    if (!(bandwidth_hz > 0.0))
        throw std::invalid_argument("noise_variance_ktb: bandwidth must be positive");
    constexpr double boltzmann_j_per_k = 1.380649e-23;
    return boltzmann_j_per_k * temperature_k * bandwidth_hz;
}

ChannelRealization generate_channels(const NetworkConfig& cfg, std::uint64_t draw_index) {
    cfg.validate();
    const double hop_distance_km = cfg.total_distance_km / cfg.l_hops;
    const double attenuation = std::pow(hop_distance_km, -cfg.path_loss_exponent);

    // substream 0 of the draw; selection noise uses substream 1 elsewhere
    StreamRng rng(cfg.rng_seed, draw_index * 2);

    ChannelRealization ch;
    ch.gains.reserve(cfg.l_hops);
    for (int h = 0; h < cfg.l_hops; ++h) {
        Matrix g(cfg.stage_population(h), cfg.stage_population(h + 1));
        for (Eigen::Index i = 0; i < g.rows(); ++i)
            for (Eigen::Index j = 0; j < g.cols(); ++j)
                g(i, j) = attenuation * rng.next_exponential();
        ch.gains.push_back(std::move(g));
    }
    return ch;
}

} // namespace relaynet
