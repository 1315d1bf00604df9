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

#ifndef RELAYNET_HARNESS_HPP
#define RELAYNET_HARNESS_HPP

#include "relaynet/relay_selection.hpp"
#include "relaynet/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace relaynet {

enum class ExperimentMode { Table1, SumRateVsP, SumRateVsL, TimingVsL, ItersVsL, Single };

ExperimentMode mode_from_name(const std::string& name);
std::string mode_name(ExperimentMode mode);

// One resolved experiment: the sweep grid, trial count, channel model
// flavor and output sink. Power points are P/sigma^2 in dB by default, or
// absolute dBm when p_is_dbm is set.
struct ExperimentSpec {
    ExperimentMode mode = ExperimentMode::Single;
    int n_users = 2;
    std::vector<int> m_list{6};
    std::vector<int> l_list{6};
    std::vector<int> w_list{2, 4};
    std::vector<double> p_db_list{10.0};
    bool p_is_dbm = false;
    int trials = 1000;
    bool fading_only = false; // unit-mean fading, no path loss, sigma^2 = 1
    std::uint64_t seed = 1;
    std::string out_path;
    std::vector<Strategy> strategies{Strategy::SlidingWindow, Strategy::BlockByBlock,
                                     Strategy::AdHoc, Strategy::MaxMin};
    int threads = 0; // 0 = hardware concurrency; RELAYNET_THREADS caps either way
    double temperature_k = 290.0;
    double bandwidth_hz = 2e5;
    double e_th = 1e-3;

    void validate() const;
    double noise_variance() const;
    double p_watts(double p_point) const;
    NetworkConfig base_config(int m, int l, double p_point) const;
};

struct StrategyStats {
    double mean = 0.0;
    double std_err = 0.0;
};

struct Table1Entry {
    std::string column; // "window_w2", "block_w4", "adhoc", "maxmin", ...
    bool present = false;
    StrategyStats stats;
    double gain_pct = 0.0; // vs hop-by-hop, same draws
};

struct Table1Row {
    int m = 0;
    int l = 0;
    StrategyStats hop;
    std::vector<Table1Entry> entries;
};

struct CsvTable {
    std::vector<std::string> comments; // emitted as "# ..." lines
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
    void write(const std::string& path) const;
};

struct Table1Result {
    std::vector<Table1Row> rows;
    CsvTable csv;
};

struct CurvePoint {
    double x = 0.0; // P point or L, depending on mode
    StrategyStats joint;
    StrategyStats greedy;
    StrategyStats random;
    double joint_time_s = 0.0;
    double greedy_time_s = 0.0;
    double random_time_s = 0.0;
    StrategyStats iters_total; // joint outer + power-control rounds
    double outer_mean = 0.0;
    double inner_mean = 0.0;
};

struct CurveResult {
    std::vector<CurvePoint> points;
    CsvTable csv;
};

// Sum-rate gains of the selection strategies against hop-by-hop at full
// power, paired over the same channel draws.
Table1Result run_table1(const ExperimentSpec& spec);

// Joint optimizer vs greedy + SINR matching vs random + SINR matching,
// swept over the power points.
CurveResult run_sumrate_vs_p(const ExperimentSpec& spec);

// Same pipelines swept over the hop counts at the first power point.
CurveResult run_sumrate_vs_l(const ExperimentSpec& spec);

// Wall time and iteration counts of the joint optimizer vs the hop counts;
// serves both the timing and the iteration modes.
CurveResult run_complexity(const ExperimentSpec& spec);

// One-draw joint optimization, human-readable summary.
std::string run_single(const ExperimentSpec& spec);

// Full command-line entry point; returns the process exit code.
int cli_main(int argc, const char* const* argv);

// deterministic helpers, exposed for tests
double pairwise_sum(const double* data, std::size_t count);
StrategyStats mean_and_stderr(const std::vector<double>& samples);
int resolve_thread_count(int requested);
void run_trials(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);
std::string format_double(double v);

} // namespace relaynet

#endif // RELAYNET_HARNESS_HPP
