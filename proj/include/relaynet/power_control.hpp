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

#ifndef RELAYNET_POWER_CONTROL_HPP
#define RELAYNET_POWER_CONTROL_HPP

#include "relaynet/types.hpp"

#include <cstdint>
#include <vector>

namespace relaynet {

// Coefficients of the concave minorant a*log(z) + b <= log(1+z), tight at
// the per-user anchor SINR. Natural logarithms.
struct BoundCoefficients {
    Vector a;
    Vector b;
};

// (a, b) for the given anchors; every anchor must be strictly positive.
BoundCoefficients bound_coefficients(const Vector& anchor_sinr);

// First trial step of the inner solver's backtracking line search.
struct StepRule {
    double initial = 1.0;
};

enum class ScaStopRule {
    SumRateGain,    // stop when the relative sum-rate improvement < e_th
    LogPowerChange, // stop when the relative log-power vector change < e_th
};

struct ScaSettings {
    double e_th = 1e-3;       // relative convergence threshold
    int max_outer_iters = 60; // successive-approximation rounds
    int max_inner_iters = 1500; // ascent steps within one inner solve
    double power_floor = 0.0;   // <= 0 resolves to p_max * 1e-12
    StepRule step_rule{};
    ScaStopRule stop_rule = ScaStopRule::SumRateGain;

    double resolved_power_floor(const NetworkConfig& cfg) const;
};

// Log-domain power iterate. q = log(power); t[i] is the epigraph value of
// user i, set to the tight minimum over hops of the transformed SINR.
struct LogPowerVector {
    Matrix q;
    Vector t;
    double objective = 0.0; // sum_i a_i * t_i + b_i
    bool converged = false;
    int iterations = 0;
};

// Maximizes sum_i a_i t_i + b_i with t_i tied to the minimum transformed
// hop SINR of user i, over the box [log(power_floor), log(p_max)].
// Warm-started at q_start; the result never has a lower exact objective
// than the start.
LogPowerVector solve_inner_concave(const NetworkConfig& cfg, const ChannelRealization& channels,
                                   const RelayAssignment& assign, const BoundCoefficients& coeffs,
                                   const ScaSettings& settings, const Matrix& q_start);

// Overload starting from full power.
LogPowerVector solve_inner_concave(const NetworkConfig& cfg, const ChannelRealization& channels,
                                   const RelayAssignment& assign, const BoundCoefficients& coeffs,
                                   const ScaSettings& settings);

struct ScaResult {
    PowerAllocation powers;
    RateReport report;
    std::vector<double> outer_sum_rates; // exact sum-rate at start and after each round
    int outer_iters = 0;
    int inner_iters_total = 0;
    bool converged = false;
    int anchor_warnings = 0; // degenerate anchors perturbed to the floor
};

// Successive approximation: re-anchor the lower bound at the current
// effective SINRs, solve the concave inner problem, repeat until the stop
// rule fires. The exact sum-rate across rounds is non-decreasing.
ScaResult sca_power_control(const NetworkConfig& cfg, const ChannelRealization& channels,
                            const RelayAssignment& assign, const PowerAllocation& initial_powers,
                            const ScaSettings& settings);

struct SinrMatchResult {
    PowerAllocation powers;
    bool converged = false;
    int iterations = 0;
};

// Fixed-point power control equalizing each user's SINR across its hops at
// the maximal level supported by the box: at least one hop per user
// transmits at p_max. Damping kicks in when the sum-rate oscillates.
SinrMatchResult sinr_matching(const NetworkConfig& cfg, const ChannelRealization& channels,
                              const RelayAssignment& assign, const ScaSettings& settings);

struct GridOracleResult {
    PowerAllocation powers;
    RateReport report;
};

// Exhaustive search over the per-variable grid {0} union a fixed-ratio
// ladder below p_max (ratio 10^(-1/16) between adjacent points, so a finer
// grid is a superset of a coarser one). Guarded: at most 6 power variables
// and `budget` grid points.
GridOracleResult grid_power_oracle(const NetworkConfig& cfg, const ChannelRealization& channels,
                                   const RelayAssignment& assign, int grid_points_per_axis,
                                   std::uint64_t budget = 100000000);

// The grid for one variable, ascending, 0 first; exposed for tests.
std::vector<double> power_grid(double p_max, int points);

// Sum-rate loss bound, in bits, from snapping any box-feasible power vector
// onto the oracle grid: one grid-ratio SINR factor per user.
double grid_resolution_bits(int n_users);

} // namespace relaynet

#endif // RELAYNET_POWER_CONTROL_HPP
