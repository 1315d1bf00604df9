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

#include "relaynet/harness.hpp"

#include "relaynet/channel.hpp"
#include "relaynet/joint.hpp"
#include "relaynet/power_control.hpp"
#include "relaynet/rate.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace relaynet {

namespace {

// stream id convention: channel draw t uses 2t, selection noise uses 2t+1
constexpr std::uint64_t selection_stream(std::uint64_t trial) { return trial * 2 + 1; }

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(v[i]);
    }
    return s;
}

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += format_double(v[i]);
    }
    return s;
}

std::vector<std::string> spec_comments(const ExperimentSpec& spec) {
    std::vector<std::string> c;
    c.push_back("mode=" + mode_name(spec.mode));
    c.push_back("n=" + std::to_string(spec.n_users));
    c.push_back("m=" + join_ints(spec.m_list));
    c.push_back("l=" + join_ints(spec.l_list));
    c.push_back("w=" + join_ints(spec.w_list));
    c.push_back(std::string(spec.p_is_dbm ? "p_dbm=" : "p_db=") + join_doubles(spec.p_db_list));
    c.push_back("trials=" + std::to_string(spec.trials));
    c.push_back("fading_only=" + std::to_string(spec.fading_only ? 1 : 0));
    c.push_back("seed=" + std::to_string(spec.seed));
    std::string names;
    for (std::size_t i = 0; i < spec.strategies.size(); ++i) {
        if (i)
            names += ",";
        names += strategy_name(spec.strategies[i]);
    }
    c.push_back("strategies=" + names);
    c.push_back("noise_variance=" + format_double(spec.noise_variance()));
    c.push_back("e_th=" + format_double(spec.e_th));
    return c;
}

// table column = strategy plus window size where one applies
struct ColumnSpec {
    std::string name;
    Strategy strat;
    int w = 0;
};

std::vector<ColumnSpec> expand_columns(const ExperimentSpec& spec) {
    std::vector<ColumnSpec> cols;
    for (const Strategy s : spec.strategies) {
        if (s == Strategy::HopByHop)
            continue; // always the baseline
        if (strategy_uses_window(s)) {
            for (const int w : spec.w_list)
                cols.push_back({strategy_name(s) + "_w" + std::to_string(w), s, w});
        } else {
            cols.push_back({strategy_name(s), s, 0});
        }
    }
    return cols;
}

bool column_present(const ColumnSpec& col, int l) {
    if (col.strat == Strategy::BlockByBlock)
        return l % col.w == 0;
    if (col.strat == Strategy::SlidingWindow)
        return col.w <= l;
    return true;
}

double run_column_strategy(const ColumnSpec& col, const NetworkConfig& cfg,
                           const ChannelRealization& ch, const PowerAllocation& powers,
                           std::uint64_t seed, std::uint64_t trial) {
    RelayAssignment a;
    switch (col.strat) {
    case Strategy::AdHoc:
        a = select_ad_hoc(cfg, ch, powers);
        break;
    case Strategy::BlockByBlock:
        a = select_block_by_block(cfg, ch, powers, WindowParam(col.w));
        break;
    case Strategy::SlidingWindow:
        a = select_sliding_window(cfg, ch, powers, WindowParam(col.w));
        break;
    case Strategy::MaxMin:
        a = select_max_min(cfg, ch, powers);
        break;
    case Strategy::Greedy:
        a = select_greedy_reference(cfg, ch, powers);
        break;
    case Strategy::Random: {
        StreamRng stream(seed, selection_stream(trial));
        a = select_random_reference(cfg, stream);
        break;
    }
    case Strategy::Exhaustive:
        a = select_exhaustive_sumrate(cfg, ch, powers);
        break;
    case Strategy::HopByHop:
        a = select_hop_by_hop(cfg, ch, powers);
        break;
    }
    return evaluate(cfg, ch, a, powers).sum_rate;
}

struct ReferencePoint {
    double rate = 0.0;
    double time_s = 0.0;
};

ReferencePoint run_reference(const NetworkConfig& cfg, const ChannelRealization& ch,
                             const ScaSettings& settings, bool use_random, std::uint64_t seed,
                             std::uint64_t trial) {
    ReferencePoint out;
    const double t0 = now_seconds();
    RelayAssignment a;
    if (use_random) {
        StreamRng stream(seed, selection_stream(trial));
        a = select_random_reference(cfg, stream);
    } else {
        a = select_greedy_reference(cfg, ch, PowerAllocation::full(cfg));
    }
    const SinrMatchResult pw = sinr_matching(cfg, ch, a, settings);
    out.rate = evaluate(cfg, ch, a, pw.powers).sum_rate;
    out.time_s = now_seconds() - t0;
    return out;
}

CurvePoint measure_point(const ExperimentSpec& spec, int m, int l, double p_point, double x) {
    const NetworkConfig cfg = spec.base_config(m, l, p_point);
    const std::size_t trials = static_cast<std::size_t>(spec.trials);

    std::vector<double> joint(trials), greedy(trials), random(trials);
    std::vector<double> joint_time(trials), greedy_time(trials), random_time(trials);
    std::vector<double> iters(trials), outer(trials), inner(trials);

    ScaSettings settings;
    settings.e_th = spec.e_th;

    run_trials(trials, spec.threads, [&](std::size_t t) {
        const ChannelRealization ch = generate_channels(cfg, t);
        const JointResult jr = joint_optimize(cfg, ch, settings);
        joint[t] = jr.report.sum_rate;
        joint_time[t] = jr.wall_time_s;
        outer[t] = jr.outer_iters;
        inner[t] = jr.inner_iters_total;
        iters[t] = jr.outer_iters + jr.inner_iters_total;

        const ReferencePoint g = run_reference(cfg, ch, settings, false, spec.seed, t);
        greedy[t] = g.rate;
        greedy_time[t] = g.time_s;

        const ReferencePoint r = run_reference(cfg, ch, settings, true, spec.seed, t);
        random[t] = r.rate;
        random_time[t] = r.time_s;
    });

    CurvePoint p;
    p.x = x;
    p.joint = mean_and_stderr(joint);
    p.greedy = mean_and_stderr(greedy);
    p.random = mean_and_stderr(random);
    p.joint_time_s = mean_and_stderr(joint_time).mean;
    p.greedy_time_s = mean_and_stderr(greedy_time).mean;
    p.random_time_s = mean_and_stderr(random_time).mean;
    p.iters_total = mean_and_stderr(iters);
    p.outer_mean = mean_and_stderr(outer).mean;
    p.inner_mean = mean_and_stderr(inner).mean;
    return p;
}

} // namespace

ExperimentMode mode_from_name(const std::string& name) {
    if (name == "table1")
        return ExperimentMode::Table1;
    if (name == "sumrate_vs_p")
        return ExperimentMode::SumRateVsP;
    if (name == "sumrate_vs_l")
        return ExperimentMode::SumRateVsL;
    if (name == "timing_vs_l")
        return ExperimentMode::TimingVsL;
    if (name == "iters_vs_l")
        return ExperimentMode::ItersVsL;
    if (name == "single")
        return ExperimentMode::Single;
    throw std::invalid_argument("unknown mode: " + name);
}

std::string mode_name(ExperimentMode mode) {
    switch (mode) {
    case ExperimentMode::Table1:
        return "table1";
    case ExperimentMode::SumRateVsP:
        return "sumrate_vs_p";
    case ExperimentMode::SumRateVsL:
        return "sumrate_vs_l";
    case ExperimentMode::TimingVsL:
        return "timing_vs_l";
    case ExperimentMode::ItersVsL:
        return "iters_vs_l";
    case ExperimentMode::Single:
        return "single";
    }
    throw std::logic_error("mode_name: bad enum value");
}

void ExperimentSpec::validate() const {
    if (trials < 1)
        throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
    if (n_users < 1)
        throw std::invalid_argument("ExperimentSpec: n must be >= 1");
    if (m_list.empty() || l_list.empty() || p_db_list.empty())
        throw std::invalid_argument("ExperimentSpec: m, l and p sweeps must be non-empty");
    if (mode == ExperimentMode::Table1 && !fading_only)
        throw std::invalid_argument("ExperimentSpec: table1 mode runs fading-only");
    if (mode == ExperimentMode::Table1 && p_db_list.size() != 1)
        throw std::invalid_argument("ExperimentSpec: table1 mode takes a single power point");
    if (threads < 0)
        throw std::invalid_argument("ExperimentSpec: threads must be >= 0");
    for (const int w : w_list)
        if (w < 2)
            throw std::invalid_argument("ExperimentSpec: window sizes must be >= 2");
}

double ExperimentSpec::noise_variance() const {
    return fading_only ? 1.0 : noise_variance_ktb(temperature_k, bandwidth_hz);
}

double ExperimentSpec::p_watts(double p_point) const {
    if (p_is_dbm)
        return 1e-3 * std::pow(10.0, p_point / 10.0);
    // P relative to the noise floor, so "10 dB" fixes P / sigma^2 = 10
    return noise_variance() * std::pow(10.0, p_point / 10.0);
}

NetworkConfig ExperimentSpec::base_config(int m, int l, double p_point) const {
    NetworkConfig cfg;
    cfg.n_users = n_users;
    cfg.m_relays = m;
    cfg.l_hops = l;
    cfg.p_max = p_watts(p_point);
    cfg.total_distance_km = 2.0;
    cfg.path_loss_exponent = fading_only ? 0.0 : 3.6;
    cfg.noise_variance = noise_variance();
    cfg.rng_seed = seed;
    cfg.validate();
    return cfg;
}

double pairwise_sum(const double* data, std::size_t count) {
    if (count <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i)
            s += data[i];
        return s;
    }
    const std::size_t half = count / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

StrategyStats mean_and_stderr(const std::vector<double>& samples) {
    StrategyStats s;
    if (samples.empty())
        return s;
    const std::size_t n = samples.size();
    s.mean = pairwise_sum(samples.data(), n) / static_cast<double>(n);
    if (n > 1) {
        std::vector<double> sq(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = samples[i] - s.mean;
            sq[i] = d * d;
        }
        const double var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
        s.std_err = std::sqrt(var / static_cast<double>(n));
    }
    return s;
}

int resolve_thread_count(int requested) {
    int t = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (t < 1)
        t = 1;
    if (const char* env = std::getenv("RELAYNET_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0 && cap < t)
            t = cap;
    }
    return t;
}

void run_trials(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    const int workers = std::min<int>(resolve_thread_count(threads),
                                      static_cast<int>(std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t t = 0; t < count; ++t)
            fn(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t t = next.fetch_add(1);
                if (t >= count)
                    return;
                fn(t);
            }
        });
    }
    for (auto& th : pool)
        th.join();
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string CsvTable::to_string() const {
    std::string out;
    for (const auto& c : comments) {
        out += "# ";
        out += c;
        out += "\n";
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i)
            out += ",";
        out += header[i];
    }
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ",";
            out += row[i];
        }
        out += "\n";
    }
    return out;
}

void CsvTable::write(const std::string& path) const {
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot open output file: " + path);
    f << to_string();
    if (!f)
        throw std::runtime_error("failed writing output file: " + path);
}

Table1Result run_table1(const ExperimentSpec& spec) {
    spec.validate();
    if (spec.mode != ExperimentMode::Table1)
        throw std::invalid_argument("run_table1: spec.mode must be table1");

    const std::vector<ColumnSpec> cols = expand_columns(spec);
    const std::size_t trials = static_cast<std::size_t>(spec.trials);

    Table1Result res;
    res.csv.comments = spec_comments(spec);
    res.csv.header = {"m", "l", "mean_hop", "se_hop"};
    for (const auto& c : cols) {
        res.csv.header.push_back("gain_" + c.name);
        res.csv.header.push_back("mean_" + c.name);
        res.csv.header.push_back("se_" + c.name);
    }

    for (const int m : spec.m_list) {
        for (const int l : spec.l_list) {
            const NetworkConfig cfg = spec.base_config(m, l, spec.p_db_list.front());

            std::vector<double> hop_rates(trials);
            std::vector<std::vector<double>> col_rates(cols.size());
            std::vector<bool> present(cols.size());
            for (std::size_t c = 0; c < cols.size(); ++c) {
                present[c] = column_present(cols[c], l);
                if (present[c])
                    col_rates[c].resize(trials);
            }

            run_trials(trials, spec.threads, [&](std::size_t t) {
                const ChannelRealization ch = generate_channels(cfg, t);
                const PowerAllocation powers = PowerAllocation::full(cfg);
                hop_rates[t] = evaluate(cfg, ch, select_hop_by_hop(cfg, ch, powers), powers)
                                   .sum_rate;
                for (std::size_t c = 0; c < cols.size(); ++c)
                    if (present[c])
                        col_rates[c][t] =
                            run_column_strategy(cols[c], cfg, ch, powers, spec.seed, t);
            });

            Table1Row row;
            row.m = m;
            row.l = l;
            row.hop = mean_and_stderr(hop_rates);
            std::vector<std::string> cells = {std::to_string(m), std::to_string(l),
                                              format_double(row.hop.mean),
                                              format_double(row.hop.std_err)};
            for (std::size_t c = 0; c < cols.size(); ++c) {
                Table1Entry e;
                e.column = cols[c].name;
                e.present = present[c];
                if (e.present) {
                    e.stats = mean_and_stderr(col_rates[c]);
                    e.gain_pct = 100.0 * (e.stats.mean - row.hop.mean) / row.hop.mean;
                    cells.push_back(format_double(e.gain_pct));
                    cells.push_back(format_double(e.stats.mean));
                    cells.push_back(format_double(e.stats.std_err));
                } else {
                    cells.push_back("");
                    cells.push_back("");
                    cells.push_back("");
                }
                row.entries.push_back(std::move(e));
            }
            res.csv.rows.push_back(std::move(cells));
            res.rows.push_back(std::move(row));
        }
    }
    return res;
}

CurveResult run_sumrate_vs_p(const ExperimentSpec& spec) {
    spec.validate();
    CurveResult res;
    res.csv.comments = spec_comments(spec);
    res.csv.header = {spec.p_is_dbm ? "p_dbm" : "p_db",
                      "mean_joint",  "se_joint", "mean_greedy", "se_greedy",
                      "mean_random", "se_random"};
    for (const double p : spec.p_db_list) {
        const CurvePoint pt = measure_point(spec, spec.m_list.front(), spec.l_list.front(), p, p);
        res.csv.rows.push_back({format_double(pt.x), format_double(pt.joint.mean),
                                format_double(pt.joint.std_err), format_double(pt.greedy.mean),
                                format_double(pt.greedy.std_err), format_double(pt.random.mean),
                                format_double(pt.random.std_err)});
        res.points.push_back(pt);
    }
    return res;
}

CurveResult run_sumrate_vs_l(const ExperimentSpec& spec) {
    spec.validate();
    CurveResult res;
    res.csv.comments = spec_comments(spec);
    res.csv.header = {"l",         "mean_joint",  "se_joint", "mean_greedy", "se_greedy",
                      "mean_random", "se_random"};
    for (const int l : spec.l_list) {
        const CurvePoint pt = measure_point(spec, spec.m_list.front(), l,
                                            spec.p_db_list.front(), static_cast<double>(l));
        res.csv.rows.push_back({format_double(pt.x), format_double(pt.joint.mean),
                                format_double(pt.joint.std_err), format_double(pt.greedy.mean),
                                format_double(pt.greedy.std_err), format_double(pt.random.mean),
                                format_double(pt.random.std_err)});
        res.points.push_back(pt);
    }
    return res;
}

CurveResult run_complexity(const ExperimentSpec& spec) {
    spec.validate();
    const bool timing = spec.mode == ExperimentMode::TimingVsL;
    CurveResult res;
    res.csv.comments = spec_comments(spec);
    if (timing)
        res.csv.header = {"l",
                          "time_joint_s",
                          "time_greedy_s",
                          "time_random_s",
                          "iters_total_mean",
                          "iters_total_se",
                          "outer_mean",
                          "inner_mean"};
    else
        res.csv.header = {"l", "iters_total_mean", "iters_total_se", "outer_mean", "inner_mean"};
    for (const int l : spec.l_list) {
        const CurvePoint pt = measure_point(spec, spec.m_list.front(), l,
                                            spec.p_db_list.front(), static_cast<double>(l));
        std::vector<std::string> row = {format_double(pt.x)};
        if (timing) {
            row.push_back(format_double(pt.joint_time_s));
            row.push_back(format_double(pt.greedy_time_s));
            row.push_back(format_double(pt.random_time_s));
        }
        row.push_back(format_double(pt.iters_total.mean));
        row.push_back(format_double(pt.iters_total.std_err));
        row.push_back(format_double(pt.outer_mean));
        row.push_back(format_double(pt.inner_mean));
        res.csv.rows.push_back(std::move(row));
        res.points.push_back(pt);
    }
    return res;
}

std::string run_single(const ExperimentSpec& spec) {
    spec.validate();
    const NetworkConfig cfg =
        spec.base_config(spec.m_list.front(), spec.l_list.front(), spec.p_db_list.front());
    const ChannelRealization ch = generate_channels(cfg, 0);
    ScaSettings settings;
    settings.e_th = spec.e_th;
    const JointResult jr = joint_optimize(cfg, ch, settings);

    std::ostringstream os;
    os << "joint relay selection and power control, single draw\n";
    os << "n=" << cfg.n_users << " m=" << cfg.m_relays << " l=" << cfg.l_hops
       << " p_max_w=" << format_double(cfg.p_max)
       << " sigma2_w=" << format_double(cfg.noise_variance) << " seed=" << spec.seed << "\n";
    os << "sum_rate_bits=" << format_double(jr.report.sum_rate) << "\n";
    os << "per_user_rate_bits=";
    for (int i = 0; i < cfg.n_users; ++i)
        os << (i ? "," : "") << format_double(jr.report.per_user_rate(i));
    os << "\n";
    os << "assignment_stage_by_user=";
    for (int s = 0; s < jr.assignment.stages(); ++s) {
        os << (s ? ";" : "");
        for (int i = 0; i < cfg.n_users; ++i)
            os << (i ? "," : "") << jr.assignment.chosen(s, i);
    }
    os << "\n";
    os << "powers_hop_by_user=";
    for (int h = 0; h < cfg.l_hops; ++h) {
        os << (h ? ";" : "");
        for (int i = 0; i < cfg.n_users; ++i)
            os << (i ? "," : "") << format_double(jr.powers.power(h, i));
    }
    os << "\n";
    os << "outer_iters=" << jr.outer_iters << " inner_iters=" << jr.inner_iters_total
       << " wall_time_s=" << format_double(jr.wall_time_s) << "\n";
    return os.str();
}

int cli_main(int argc, const char* const* argv) {
    ExperimentSpec spec;
    std::string mode_str;
    std::vector<double> p_dbm;
    std::vector<std::string> strategy_names;

    CLI::App app{"multi-user multi-hop relay network simulator"};
    app.set_config("--config");
    app.add_option("--mode", mode_str,
                   "table1|sumrate_vs_p|sumrate_vs_l|timing_vs_l|iters_vs_l|single")
        ->required();
    app.add_option("--n", spec.n_users, "number of source-destination pairs");
    app.add_option("--m", spec.m_list, "relays per stage (list)")->delimiter(',');
    app.add_option("--l", spec.l_list, "hop counts (list)")->delimiter(',');
    app.add_option("--w", spec.w_list, "block/window sizes (list)")->delimiter(',');
    app.add_option("--p-db", spec.p_db_list, "P over noise floor, dB (list)")->delimiter(',');
    app.add_option("--p-dbm", p_dbm, "absolute transmit power, dBm (list)")->delimiter(',');
    app.add_option("--trials", spec.trials, "Monte Carlo trials per point");
    app.add_option("--seed", spec.seed, "base RNG seed");
    app.add_flag("--fading-only", spec.fading_only, "disable path loss, sigma^2 = 1");
    app.add_option("--out", spec.out_path, "output CSV path");
    app.add_option("--strategies", strategy_names,
                   "table1 strategies: hop,adhoc,block,window,maxmin,greedy,random,exhaustive")
        ->delimiter(',');
    app.add_option("--threads", spec.threads, "worker threads (0 = auto)");
    app.add_option("--temperature-k", spec.temperature_k, "ambient temperature, kelvin");
    app.add_option("--bandwidth-hz", spec.bandwidth_hz, "noise bandwidth, Hz");
    app.add_option("--e-th", spec.e_th, "relative convergence threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        spec.mode = mode_from_name(mode_str);
        if (!p_dbm.empty()) {
            if (app.count("--p-db") > 0)
                throw std::invalid_argument("--p-db and --p-dbm are mutually exclusive");
            spec.p_db_list = p_dbm;
            spec.p_is_dbm = true;
        }
        if (!strategy_names.empty()) {
            spec.strategies.clear();
            for (const auto& name : strategy_names)
                spec.strategies.push_back(strategy_from_name(name));
        }
        if (spec.mode == ExperimentMode::Table1)
            spec.fading_only = true; // the table is defined on pure fading

        if (spec.mode != ExperimentMode::Single && spec.out_path.empty()) {
            std::cerr << "error: --out is required for mode " << mode_name(spec.mode) << "\n";
            return 2;
        }
        spec.validate();

        CsvTable csv;
        switch (spec.mode) {
        case ExperimentMode::Table1:
            csv = run_table1(spec).csv;
            break;
        case ExperimentMode::SumRateVsP:
            csv = run_sumrate_vs_p(spec).csv;
            break;
        case ExperimentMode::SumRateVsL:
            csv = run_sumrate_vs_l(spec).csv;
            break;
        case ExperimentMode::TimingVsL:
        case ExperimentMode::ItersVsL:
            csv = run_complexity(spec).csv;
            break;
        case ExperimentMode::Single:
            std::cout << run_single(spec);
            return 0;
        }
        csv.write(spec.out_path);
        std::cout << "wrote " << spec.out_path << " (" << csv.rows.size() << " rows)\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace relaynet
