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

#ifndef RELAYNET_JOINT_HPP
#define RELAYNET_JOINT_HPP

#include "relaynet/power_control.hpp"
#include "relaynet/types.hpp"

#include <vector>

namespace relaynet {

struct JointResult {
    RelayAssignment assignment;
    PowerAllocation powers;
    RateReport report;
    int outer_iters = 0;
    int inner_iters_total = 0; // power-control rounds across all outer passes
    double wall_time_s = 0.0;
    std::vector<double> trace; // accepted sum-rates, strictly improving
    bool capped = false;       // outer iteration limit hit
};

// Alternates max-min relay selection and successive-approximation power
// control, accepting a new assignment or power allocation only when it
// improves the sum-rate by more than e_th relative. Starts from full power;
// stops at the first pass whose power update no longer clears the
// threshold, or at `outer_cap` passes.
JointResult joint_optimize(const NetworkConfig& cfg, const ChannelRealization& channels,
                           const ScaSettings& settings, int outer_cap = 100);

} // namespace relaynet

#endif // RELAYNET_JOINT_HPP
