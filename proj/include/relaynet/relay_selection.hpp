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

#ifndef RELAYNET_RELAY_SELECTION_HPP
#define RELAYNET_RELAY_SELECTION_HPP

#include "relaynet/rng.hpp"
#include "relaynet/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace relaynet {

// Ordered choice of n_users distinct relays for one stage; entry i serves
// user i.
struct StageAssignment {
    std::vector<int> relays;
};

// Block / window size; a size of 1 would leave the last hop without any
// sum-rate optimization, so sizes below 2 are rejected.
struct WindowParam {
    int w;
    explicit WindowParam(int w_);
};

enum class Strategy {
    HopByHop,
    AdHoc,
    BlockByBlock,
    SlidingWindow,
    MaxMin,
    Greedy,
    Random,
    Exhaustive,
};

Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);
bool strategy_uses_window(Strategy s);

// All ordered selections of n_users distinct relays out of {0..m_relays-1},
// in lexicographic order. Size m!/(m-n)!.
std::vector<StageAssignment> enumerate_stage_assignments(int m_relays, int n_users);

// The selectors below return a conflict-free assignment for the given
// channels and powers. Ties are always broken toward the lexicographically
// smallest relay index vectors, stage by stage, so results are reproducible.

// Each stage maximizes the sum-rate of its incoming hop given the previous
// stage; the final hop (fixed destinations) involves no choice.
RelayAssignment select_hop_by_hop(const NetworkConfig& cfg, const ChannelRealization& channels,
                                  const PowerAllocation& powers);

// Hop-by-hop for the first L-2 stages; the last relay stage maximizes the
// joint sum-rate of the final two hops.
RelayAssignment select_ad_hoc(const NetworkConfig& cfg, const ChannelRealization& channels,
                              const PowerAllocation& powers);

// Non-overlapping blocks of w hops, each block's stages chosen jointly to
// maximize the block's sum-rate. Requires l_hops divisible by w.
RelayAssignment select_block_by_block(const NetworkConfig& cfg, const ChannelRealization& channels,
                                      const PowerAllocation& powers, const WindowParam& wp);

// Sliding window of w hops: each position jointly optimizes the window but
// fixes only its first undecided stage; the final window fixes the rest.
// Requires w <= l_hops.
RelayAssignment select_sliding_window(const NetworkConfig& cfg, const ChannelRealization& channels,
                                      const PowerAllocation& powers, const WindowParam& wp);

// Maximizes the minimum SINR over all users and hops by dynamic programming
// over stage assignments (bottleneck Viterbi); linear in l_hops for fixed
// m_relays, n_users.
RelayAssignment select_max_min(const NetworkConfig& cfg, const ChannelRealization& channels,
                               const PowerAllocation& powers);

// Users in index order each take their interference-free bottleneck-optimal
// path over the relays not yet claimed in each stage.
RelayAssignment select_greedy_reference(const NetworkConfig& cfg,
                                        const ChannelRealization& channels,
                                        const PowerAllocation& powers);

// Uniformly random conflict-free assignment per stage, deterministic given
// the stream.
RelayAssignment select_random_reference(const NetworkConfig& cfg, StreamRng& stream);

// Enumerates every feasible assignment sequence and returns one maximizing
// the achievable sum-rate. Rejects instances whose enumeration exceeds
// `budget` sequences. `enumerated`, when non-null, receives the count of
// sequences visited.
RelayAssignment select_exhaustive_sumrate(const NetworkConfig& cfg,
                                          const ChannelRealization& channels,
                                          const PowerAllocation& powers,
                                          std::uint64_t budget = 20000000,
                                          std::uint64_t* enumerated = nullptr);

} // namespace relaynet

#endif // RELAYNET_RELAY_SELECTION_HPP
