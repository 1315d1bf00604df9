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

#ifndef RELAYNET_TWO_USER_HPP
#define RELAYNET_TWO_USER_HPP

#include "relaynet/types.hpp"

namespace relaynet {

// Power variables pinned to a binary value. In a two-user network the
// sum-rate optimum pins at least two transmit powers to 0 or p_max; the
// remaining powers follow from the per-user equal-SINR conditions.
struct BinaryPattern {
    struct Pin {
        int stage = 0;      // hop index of the transmission, 0-based
        int user = 0;       // 0 or 1
        double value = 0.0; // 0 or p_max
    };
    std::vector<Pin> pins; // size >= 2
};

struct EqualSinrSolution {
    PowerAllocation powers;
    Vector per_user_sinr; // equalized SINR per user; 0 for a silenced user
    bool feasible = false;
};

// Solves the equal-SINR chain conditions (each user's SINR identical in
// every hop) for the powers left free by `pattern`. A zero pin silences its
// user entirely, which is a valid degenerate solution; a solution whose
// free powers leave [0, p_max], or a chain the damped Newton iteration
// cannot close, is flagged infeasible.
EqualSinrSolution solve_equal_sinr_chain(const NetworkConfig& cfg,
                                         const ChannelRealization& channels,
                                         const RelayAssignment& assign,
                                         const BinaryPattern& pattern);

struct Theorem2Result {
    PowerAllocation powers;
    RateReport report;
    BinaryPattern best_pattern;       // empty pins when the fallback won
    int candidates_enumerated = 0;    // C(2L, 2) * 4
    int candidates_feasible = 0;
};

// Enumerates every pattern pinning exactly two of the 2L powers to 0 or
// p_max, solves each equal-SINR chain, and returns the feasible candidate
// with the best sum-rate. The maximal SINR-matched point is always included
// as a candidate, so the result is never empty.
Theorem2Result theorem2_power_solver(const NetworkConfig& cfg, const ChannelRealization& channels,
                                     const RelayAssignment& assign);

// True iff the best equal-SINR candidate reproduces powers_opt's sum-rate
// within slack_bits. Optimal vectors pass; vectors measurably below the
// equal-SINR optimum fail.
bool verify_lemma1(const NetworkConfig& cfg, const ChannelRealization& channels,
                   const RelayAssignment& assign, const PowerAllocation& powers_opt,
                   double slack_bits);

// Default slack: 1e-6 relative to powers_opt's sum-rate.
bool verify_lemma1(const NetworkConfig& cfg, const ChannelRealization& channels,
                   const RelayAssignment& assign, const PowerAllocation& powers_opt);

} // namespace relaynet

#endif // RELAYNET_TWO_USER_HPP
