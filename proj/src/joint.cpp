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

#include "relaynet/joint.hpp"

#include "relaynet/rate.hpp"
#include "relaynet/relay_selection.hpp"

#include <chrono>

namespace relaynet {

JointResult joint_optimize(const NetworkConfig& cfg, const ChannelRealization& channels,
                           const ScaSettings& settings, int outer_cap) {
    cfg.validate();
    validate_channels(cfg, channels);
    const auto t0 = std::chrono::steady_clock::now();

    JointResult res;
    res.powers = PowerAllocation::full(cfg);
    double best_rate = 0.0;
    bool have_assign = false;

    // the power loop always runs against the log-power change criterion
    ScaSettings inner = settings;
    inner.stop_rule = ScaStopRule::LogPowerChange;

    for (int n = 1; n <= outer_cap; ++n) {
        res.outer_iters = n;

        // relay selection at the current powers; adopt only on a clear win
        const RelayAssignment cand = select_max_min(cfg, channels, res.powers);
        const double cand_rate = evaluate(cfg, channels, cand, res.powers).sum_rate;
        if (!have_assign) {
            res.assignment = cand;
            have_assign = true;
            best_rate = cand_rate;
            res.trace.push_back(best_rate);
        } else if (cand_rate > 0.0 && (cand_rate - best_rate) / cand_rate > settings.e_th) {
            res.assignment = cand;
            best_rate = cand_rate;
            res.trace.push_back(best_rate);
        }

        // power control on the accepted assignment
        const ScaResult sca =
            sca_power_control(cfg, channels, res.assignment, res.powers, inner);
        res.inner_iters_total += sca.outer_iters;

        const double new_rate = sca.report.sum_rate;
        if (new_rate > 0.0 && (new_rate - best_rate) / new_rate > settings.e_th) {
            res.powers = sca.powers;
            best_rate = new_rate;
            res.trace.push_back(best_rate);
        } else {
            break; // no measurable improvement left
        }
        if (n == outer_cap)
            res.capped = true;
    }

    res.report = evaluate(cfg, channels, res.assignment, res.powers);
    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace relaynet
