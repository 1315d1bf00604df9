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

#include "relaynet/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace relaynet {

void NetworkConfig::validate() const {
    if (n_users < 1)
        throw std::invalid_argument("NetworkConfig: n_users must be positive");
    if (m_relays < n_users)
        throw std::invalid_argument("NetworkConfig: m_relays must be >= n_users");
    if (l_hops < 2)
        throw std::invalid_argument("NetworkConfig: l_hops must be >= 2");
    if (!(p_max > 0.0) || !std::isfinite(p_max))
        throw std::invalid_argument("NetworkConfig: p_max must be positive and finite");
    if (!(total_distance_km > 0.0))
        throw std::invalid_argument("NetworkConfig: total_distance_km must be positive");
    if (path_loss_exponent < 0.0)
        throw std::invalid_argument("NetworkConfig: path_loss_exponent must be >= 0");
    if (!(noise_variance > 0.0))
        throw std::invalid_argument("NetworkConfig: noise_variance must be positive");
}

int NetworkConfig::stage_population(int stage) const {
    if (stage < 0 || stage > l_hops)
        throw std::out_of_range("NetworkConfig: stage index out of range");
    return (stage == 0 || stage == l_hops) ? n_users : m_relays;
}

PowerAllocation PowerAllocation::full(const NetworkConfig& cfg) {
    return constant(cfg, cfg.p_max);
}

PowerAllocation PowerAllocation::constant(const NetworkConfig& cfg, double watts) {
    PowerAllocation p;
    p.power = Matrix::Constant(cfg.l_hops, cfg.n_users, watts);
    return p;
}

void validate_assignment(const NetworkConfig& cfg, const RelayAssignment& assign) {
    if (assign.chosen.rows() != cfg.l_hops - 1 || assign.chosen.cols() != cfg.n_users)
        throw std::invalid_argument("RelayAssignment: shape must be (l_hops-1) x n_users");
    for (int s = 0; s < assign.chosen.rows(); ++s) {
        for (int i = 0; i < cfg.n_users; ++i) {
            const int r = assign.chosen(s, i);
            if (r < 0 || r >= cfg.m_relays)
                throw std::invalid_argument("RelayAssignment: relay index out of range at stage " +
                                            std::to_string(s + 1));
            for (int j = 0; j < i; ++j)
                if (assign.chosen(s, j) == r)
                    throw std::invalid_argument(
                        "RelayAssignment: relay shared by two users at stage " +
                        std::to_string(s + 1));
        }
    }
}

void validate_powers(const NetworkConfig& cfg, const PowerAllocation& powers) {
    if (powers.power.rows() != cfg.l_hops || powers.power.cols() != cfg.n_users)
        throw std::invalid_argument("PowerAllocation: shape must be l_hops x n_users");
    constexpr double slack = 1e-12;
    for (int h = 0; h < powers.power.rows(); ++h)
        for (int i = 0; i < powers.power.cols(); ++i) {
            const double p = powers.power(h, i);
            if (!std::isfinite(p) || p < -slack || p > cfg.p_max * (1.0 + slack))
                throw std::invalid_argument("PowerAllocation: power outside [0, p_max]");
        }
}

void validate_channels(const NetworkConfig& cfg, const ChannelRealization& channels) {
    if (channels.hops() != cfg.l_hops)
        throw std::invalid_argument("ChannelRealization: wrong number of hops");
    for (int h = 0; h < cfg.l_hops; ++h) {
        const Matrix& g = channels.gains[h];
        if (g.rows() != cfg.stage_population(h) || g.cols() != cfg.stage_population(h + 1))
            throw std::invalid_argument("ChannelRealization: wrong shape at hop " +
                                        std::to_string(h));
        if (!(g.array() >= 0.0).all() || !g.allFinite())
            throw std::invalid_argument("ChannelRealization: gains must be finite and >= 0");
    }
}

} // namespace relaynet
