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

#ifndef RELAYNET_TYPES_HPP
#define RELAYNET_TYPES_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace relaynet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;

// Static problem dimensions and physical constants.
//
// The network carries n_users source-destination pairs over l_hops hops;
// every intermediate stage holds m_relays decode-and-forward relays, of
// which one is assigned to each user. Stage s in {0..l_hops} is the set of
// nodes transmitting in hop s (stage 0 = sources, stage l_hops =
// destinations); hop h in {0..l_hops-1} is the transmission from stage h
// to stage h+1.
struct NetworkConfig {
    int n_users = 2;                 // N
    int m_relays = 4;                // M relays per intermediate stage, M >= N
    int l_hops = 2;                  // L >= 2
    double p_max = 1.0;              // per-node transmit power bound, watts
    double total_distance_km = 2.0;  // source-destination distance
    double path_loss_exponent = 3.6; // 0 disables path loss
    double noise_variance = 1.0;     // sigma^2, watts
    std::uint64_t rng_seed = 0;

    // throws std::invalid_argument on any violated invariant
    void validate() const;

    // number of candidate transmit nodes at a stage: N at the boundary
    // stages, M at the intermediate ones
    int stage_population(int stage) const;
};

// Squared channel magnitudes |h|^2 for one Monte Carlo draw.
// gains[h](i, j) links transmitter i of stage h to receiver j of stage h+1;
// row/column counts follow the stage populations.
struct ChannelRealization {
    std::vector<Matrix> gains;

    int hops() const { return static_cast<int>(gains.size()); }
};

// Chosen relay index per intermediate stage per user.
// chosen(s-1, i) is the relay of user i at stage s, s in {1..l_hops-1};
// stage 0 and stage l_hops map to the user's own source/destination index.
struct RelayAssignment {
    IntMatrix chosen; // (l_hops-1) x n_users

    int stages() const { return static_cast<int>(chosen.rows()); }
};

// Node index occupied by `user` at `stage`, honoring the boundary
// convention (sources and destinations are indexed by user).
inline int assigned_node(const RelayAssignment& assign, int stage, int user) {
    if (stage == 0 || stage == assign.stages() + 1)
        return user;
    return assign.chosen(stage - 1, user);
}

// Transmit powers, watts. power(h, i) is the power spent by user i's
// transmitter in hop h, h in {0..l_hops-1}.
struct PowerAllocation {
    Matrix power; // l_hops x n_users

    static PowerAllocation full(const NetworkConfig& cfg);
    static PowerAllocation constant(const NetworkConfig& cfg, double watts);
};

// Per-hop SINRs and the rates they induce for one (assignment, power) pair.
struct RateReport {
    Matrix sinr;           // n_users x l_hops
    Vector effective_sinr; // per user, min over hops
    Vector per_user_rate;  // bits per channel use
    double sum_rate = 0.0; // bits per channel use
};

void validate_assignment(const NetworkConfig& cfg, const RelayAssignment& assign);
void validate_powers(const NetworkConfig& cfg, const PowerAllocation& powers);
void validate_channels(const NetworkConfig& cfg, const ChannelRealization& channels);

} // namespace relaynet

#endif // RELAYNET_TYPES_HPP
