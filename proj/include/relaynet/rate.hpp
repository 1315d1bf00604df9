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

#ifndef RELAYNET_RATE_HPP
#define RELAYNET_RATE_HPP

#include "relaynet/types.hpp"

namespace relaynet {

// Received SINR of `user` in hop `hop`: own transmit power times own-link
// gain over noise plus the other users' transmit power times cross-link
// gains into this user's receiver.
double compute_sinr(const NetworkConfig& cfg, const ChannelRealization& channels,
                    const RelayAssignment& assign, const PowerAllocation& powers,
                    int user, int hop);

// SINRs of all users in one hop for explicit transmitter/receiver node
// lists (tx_nodes[i], rx_nodes[i] index the hop's stage populations) and
// per-user transmit powers. Shared by the rate evaluator and the relay
// selection strategies, which probe candidate node sets.
Vector hop_sinrs(const NetworkConfig& cfg, const Matrix& hop_gains,
                 const std::vector<int>& tx_nodes, const std::vector<int>& rx_nodes,
                 const Vector& stage_powers);

// Full rate report: per-hop SINRs, per-user effective (bottleneck) SINR,
// per-user rate log2(1 + effective SINR), and the achievable sum-rate.
RateReport evaluate(const NetworkConfig& cfg, const ChannelRealization& channels,
                    const RelayAssignment& assign, const PowerAllocation& powers);

// min over all users and hops of the SINR; the max-min selection objective
double bottleneck_sinr(const NetworkConfig& cfg, const ChannelRealization& channels,
                       const RelayAssignment& assign, const PowerAllocation& powers);

} // namespace relaynet

#endif // RELAYNET_RATE_HPP
