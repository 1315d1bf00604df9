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

#include "relaynet/rate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace relaynet {

namespace {
constexpr double inv_ln2 = 1.0 / std::numbers::ln2;
}

double compute_sinr(const NetworkConfig& cfg, const ChannelRealization& channels,
                    const RelayAssignment& assign, const PowerAllocation& powers,
                    int user, int hop) {
    if (user < 0 || user >= cfg.n_users)
        throw std::out_of_range("compute_sinr: user index out of range");
    if (hop < 0 || hop >= cfg.l_hops)
        throw std::out_of_range("compute_sinr: hop index out of range");

    const Matrix& g = channels.gains[hop];
    const int rx = assigned_node(assign, hop + 1, user);
    const int tx = assigned_node(assign, hop, user);

    double interference = 0.0;
    for (int j = 0; j < cfg.n_users; ++j) {
        if (j == user)
            continue;
        interference += powers.power(hop, j) * g(assigned_node(assign, hop, j), rx);
    }
    return powers.power(hop, user) * g(tx, rx) / (cfg.noise_variance + interference);
}

Vector hop_sinrs(const NetworkConfig& cfg, const Matrix& hop_gains,
                 const std::vector<int>& tx_nodes, const std::vector<int>& rx_nodes,
                 const Vector& stage_powers) {
    const int n = cfg.n_users;
    Vector out(n);
    for (int i = 0; i < n; ++i) {
        double interference = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            interference += stage_powers(j) * hop_gains(tx_nodes[j], rx_nodes[i]);
        }
        out(i) = stage_powers(i) * hop_gains(tx_nodes[i], rx_nodes[i]) /
                 (cfg.noise_variance + interference);
    }
    return out;
}

RateReport evaluate(const NetworkConfig& cfg, const ChannelRealization& channels,
                    const RelayAssignment& assign, const PowerAllocation& powers) {
    RateReport r;
    r.sinr.resize(cfg.n_users, cfg.l_hops);
    for (int h = 0; h < cfg.l_hops; ++h)
        for (int i = 0; i < cfg.n_users; ++i)
            r.sinr(i, h) = compute_sinr(cfg, channels, assign, powers, i, h);

    r.effective_sinr = r.sinr.rowwise().minCoeff();
    r.per_user_rate.resize(cfg.n_users);
    for (int i = 0; i < cfg.n_users; ++i)
        r.per_user_rate(i) = std::log1p(r.effective_sinr(i)) * inv_ln2;
    r.sum_rate = r.per_user_rate.sum();
    return r;
}

double bottleneck_sinr(const NetworkConfig& cfg, const ChannelRealization& channels,
                       const RelayAssignment& assign, const PowerAllocation& powers) {
    double worst = std::numeric_limits<double>::infinity();
    for (int h = 0; h < cfg.l_hops; ++h)
        for (int i = 0; i < cfg.n_users; ++i)
            worst = std::min(worst, compute_sinr(cfg, channels, assign, powers, i, h));
    return worst;
}

} // namespace relaynet
