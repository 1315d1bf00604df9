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

#include "relaynet/relay_selection.hpp"

#include "relaynet/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace relaynet {

namespace {

constexpr double inv_ln2 = 1.0 / std::numbers::ln2;
constexpr double neg_inf = -std::numeric_limits<double>::infinity();

std::vector<int> identity_nodes(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = i;
    return v;
}

// Node occupied by each user at `stage` under the partially filled `chosen`.
std::vector<int> stage_nodes(const NetworkConfig& cfg, const IntMatrix& chosen, int stage) {
    if (stage == 0 || stage == cfg.l_hops)
        return identity_nodes(cfg.n_users);
    std::vector<int> v(cfg.n_users);
    for (int i = 0; i < cfg.n_users; ++i)
        v[i] = chosen(stage - 1, i);
    return v;
}

// Per-user rate table of one hop over candidate stage assignments.
// entry[user](prev_idx, next_idx) = log2(1 + sinr) when the previous stage
// uses candidate prev_idx and the next stage candidate next_idx; a fixed
// stage contributes a single pseudo-candidate at index 0.
struct HopRateTable {
    std::vector<Matrix> per_user;
};

HopRateTable build_rate_table(const NetworkConfig& cfg, const ChannelRealization& channels,
                              const PowerAllocation& powers,
                              const std::vector<std::vector<int>>& prev_nodes,
                              const std::vector<std::vector<int>>& next_nodes, int hop) {
    HopRateTable tab;
    tab.per_user.assign(cfg.n_users,
                        Matrix(static_cast<Eigen::Index>(prev_nodes.size()),
                               static_cast<Eigen::Index>(next_nodes.size())));
    const Vector stage_powers = powers.power.row(hop).transpose();
    for (std::size_t a = 0; a < prev_nodes.size(); ++a) {
        for (std::size_t b = 0; b < next_nodes.size(); ++b) {
            const Vector s =
                hop_sinrs(cfg, channels.gains[hop], prev_nodes[a], next_nodes[b], stage_powers);
            for (int i = 0; i < cfg.n_users; ++i)
                tab.per_user[i](static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                    std::log1p(s(i)) * inv_ln2;
        }
    }
    return tab;
}

// Jointly chooses the decision stages h_lo+1 .. min(h_hi+1, L-1) to maximize
// sum_i min over hops [h_lo, h_hi] of log2(1 + sinr(i, hop)), given the
// already-fixed stage h_lo. Writes the winners into `chosen`. Enumeration
// walks candidates in lexicographic order and keeps strictly better
// objectives only, so ties resolve to the smallest relay index vectors.
void optimize_span(const NetworkConfig& cfg, const ChannelRealization& channels,
                   const PowerAllocation& powers, IntMatrix& chosen,
                   const std::vector<StageAssignment>& cands, int h_lo, int h_hi) {
    const int l = cfg.l_hops;
    const int first_stage = h_lo + 1;
    const int last_stage = std::min(h_hi + 1, l - 1);
    const int n_dec = last_stage - first_stage + 1;
    if (n_dec <= 0)
        throw std::logic_error("optimize_span: no decision stage in span");

    std::vector<std::vector<int>> cand_nodes;
    cand_nodes.reserve(cands.size());
    for (const auto& c : cands)
        cand_nodes.push_back(c.relays);

    const int n_hops = h_hi - h_lo + 1;
    std::vector<HopRateTable> tables;
    tables.reserve(n_hops);
    for (int h = h_lo; h <= h_hi; ++h) {
        const std::vector<std::vector<int>> prev =
            (h == h_lo) ? std::vector<std::vector<int>>{stage_nodes(cfg, chosen, h)} : cand_nodes;
        const std::vector<std::vector<int>> next =
            (h + 1 > last_stage) ? std::vector<std::vector<int>>{stage_nodes(cfg, chosen, h + 1)}
                                 : cand_nodes;
        tables.push_back(build_rate_table(cfg, channels, powers, prev, next, h));
    }

    const std::size_t n_cand = cands.size();
    std::vector<std::size_t> digits(static_cast<std::size_t>(n_dec), 0);
    std::vector<std::size_t> best = digits;
    double best_obj = neg_inf;

    while (true) {
        double obj = 0.0;
        for (int i = 0; i < cfg.n_users; ++i) {
            double worst = std::numeric_limits<double>::infinity();
            for (int k = 0; k < n_hops; ++k) {
                const int h = h_lo + k;
                const std::size_t a = (h == h_lo) ? 0 : digits[static_cast<std::size_t>(h - first_stage)];
                const std::size_t b =
                    (h + 1 > last_stage) ? 0 : digits[static_cast<std::size_t>(h + 1 - first_stage)];
                worst = std::min(worst, tables[static_cast<std::size_t>(k)].per_user[i](
                                            static_cast<Eigen::Index>(a),
                                            static_cast<Eigen::Index>(b)));
            }
            obj += worst;
        }
        if (obj > best_obj) {
            best_obj = obj;
            best = digits;
        }
        // odometer, most significant digit first
        int pos = n_dec - 1;
        while (pos >= 0) {
            if (++digits[static_cast<std::size_t>(pos)] < n_cand)
                break;
            digits[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0)
            break;
    }

    for (int s = first_stage; s <= last_stage; ++s) {
        const auto& relays = cands[best[static_cast<std::size_t>(s - first_stage)]].relays;
        for (int i = 0; i < cfg.n_users; ++i)
            chosen(s - 1, i) = relays[static_cast<std::size_t>(i)];
    }
}

// min-over-users SINR of one hop for every (prev, next) candidate pair
Matrix build_bottleneck_table(const NetworkConfig& cfg, const ChannelRealization& channels,
                              const PowerAllocation& powers,
                              const std::vector<std::vector<int>>& prev_nodes,
                              const std::vector<std::vector<int>>& next_nodes, int hop) {
    Matrix tab(static_cast<Eigen::Index>(prev_nodes.size()),
               static_cast<Eigen::Index>(next_nodes.size()));
    const Vector stage_powers = powers.power.row(hop).transpose();
    for (std::size_t a = 0; a < prev_nodes.size(); ++a)
        for (std::size_t b = 0; b < next_nodes.size(); ++b)
            tab(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                hop_sinrs(cfg, channels.gains[hop], prev_nodes[a], next_nodes[b], stage_powers)
                    .minCoeff();
    return tab;
}

void check_common(const NetworkConfig& cfg, const ChannelRealization& channels,
                  const PowerAllocation& powers) {
    cfg.validate();
    validate_channels(cfg, channels);
    validate_powers(cfg, powers);
}

} // namespace

WindowParam::WindowParam(int w_) : w(w_) {
    if (w < 2)
        throw std::invalid_argument("WindowParam: window size must be >= 2");
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "hop")
        return Strategy::HopByHop;
    if (name == "adhoc")
        return Strategy::AdHoc;
    if (name == "block")
        return Strategy::BlockByBlock;
    if (name == "window")
        return Strategy::SlidingWindow;
    if (name == "maxmin")
        return Strategy::MaxMin;
    if (name == "greedy")
        return Strategy::Greedy;
    if (name == "random")
        return Strategy::Random;
    if (name == "exhaustive")
        return Strategy::Exhaustive;
    throw std::invalid_argument("unknown strategy name: " + name);
}

std::string strategy_name(Strategy s) {
    switch (s) {
    case Strategy::HopByHop:
        return "hop";
    case Strategy::AdHoc:
        return "adhoc";
    case Strategy::BlockByBlock:
        return "block";
    case Strategy::SlidingWindow:
        return "window";
    case Strategy::MaxMin:
        return "maxmin";
    case Strategy::Greedy:
        return "greedy";
    case Strategy::Random:
        return "random";
    case Strategy::Exhaustive:
        return "exhaustive";
    }
    throw std::logic_error("strategy_name: bad enum value");
}

bool strategy_uses_window(Strategy s) {
    return s == Strategy::BlockByBlock || s == Strategy::SlidingWindow;
}

std::vector<StageAssignment> enumerate_stage_assignments(int m_relays, int n_users) {
    if (n_users < 1 || m_relays < n_users)
        throw std::invalid_argument("enumerate_stage_assignments: need 1 <= n_users <= m_relays");
    std::vector<StageAssignment> out;
    std::vector<int> cur;
    std::vector<bool> used(static_cast<std::size_t>(m_relays), false);
    cur.reserve(static_cast<std::size_t>(n_users));

    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == n_users) {
            out.push_back(StageAssignment{cur});
            return;
        }
        for (int r = 0; r < m_relays; ++r) {
            if (used[static_cast<std::size_t>(r)])
                continue;
            used[static_cast<std::size_t>(r)] = true;
            cur.push_back(r);
            self(self);
            cur.pop_back();
            used[static_cast<std::size_t>(r)] = false;
        }
    };
    rec(rec);
    return out;
}

RelayAssignment select_hop_by_hop(const NetworkConfig& cfg, const ChannelRealization& channels,
                                  const PowerAllocation& powers) {
    check_common(cfg, channels, powers);
    const auto cands = enumerate_stage_assignments(cfg.m_relays, cfg.n_users);
    RelayAssignment assign;
    assign.chosen.resize(cfg.l_hops - 1, cfg.n_users);
    for (int s = 1; s <= cfg.l_hops - 1; ++s)
        optimize_span(cfg, channels, powers, assign.chosen, cands, s - 1, s - 1);
    return assign;
}

RelayAssignment select_ad_hoc(const NetworkConfig& cfg, const ChannelRealization& channels,
                              const PowerAllocation& powers) {
    check_common(cfg, channels, powers);
    const auto cands = enumerate_stage_assignments(cfg.m_relays, cfg.n_users);
    RelayAssignment assign;
    assign.chosen.resize(cfg.l_hops - 1, cfg.n_users);
    for (int s = 1; s <= cfg.l_hops - 2; ++s)
        optimize_span(cfg, channels, powers, assign.chosen, cands, s - 1, s - 1);
    // last relay stage jointly covers the final two hops
    optimize_span(cfg, channels, powers, assign.chosen, cands, cfg.l_hops - 2, cfg.l_hops - 1);
    return assign;
}

RelayAssignment select_block_by_block(const NetworkConfig& cfg, const ChannelRealization& channels,
                                      const PowerAllocation& powers, const WindowParam& wp) {
    check_common(cfg, channels, powers);
    if (cfg.l_hops % wp.w != 0)
        throw std::invalid_argument("select_block_by_block: l_hops must be divisible by w");
    const auto cands = enumerate_stage_assignments(cfg.m_relays, cfg.n_users);
    RelayAssignment assign;
    assign.chosen.resize(cfg.l_hops - 1, cfg.n_users);
    for (int b = 0; b < cfg.l_hops / wp.w; ++b)
        optimize_span(cfg, channels, powers, assign.chosen, cands, b * wp.w, (b + 1) * wp.w - 1);
    return assign;
}

RelayAssignment select_sliding_window(const NetworkConfig& cfg, const ChannelRealization& channels,
                                      const PowerAllocation& powers, const WindowParam& wp) {
    check_common(cfg, channels, powers);
    if (wp.w > cfg.l_hops)
        throw std::invalid_argument("select_sliding_window: w must not exceed l_hops");
    const auto cands = enumerate_stage_assignments(cfg.m_relays, cfg.n_users);
    RelayAssignment assign;
    assign.chosen.resize(cfg.l_hops - 1, cfg.n_users);
    IntMatrix scratch = assign.chosen;
    for (int t = 0; t + wp.w < cfg.l_hops; ++t) {
        scratch = assign.chosen;
        optimize_span(cfg, channels, powers, scratch, cands, t, t + wp.w - 1);
        assign.chosen.row(t) = scratch.row(t); // keep only the window's first stage
    }
    optimize_span(cfg, channels, powers, assign.chosen, cands, cfg.l_hops - wp.w, cfg.l_hops - 1);
    return assign;
}

RelayAssignment select_max_min(const NetworkConfig& cfg, const ChannelRealization& channels,
                               const PowerAllocation& powers) {
    check_common(cfg, channels, powers);
    const int l = cfg.l_hops;
    const auto cands = enumerate_stage_assignments(cfg.m_relays, cfg.n_users);
    const std::size_t n_cand = cands.size();

    std::vector<std::vector<int>> cand_nodes;
    cand_nodes.reserve(n_cand);
    for (const auto& c : cands)
        cand_nodes.push_back(c.relays);
    const std::vector<std::vector<int>> sources{identity_nodes(cfg.n_users)};
    const std::vector<std::vector<int>> dests{identity_nodes(cfg.n_users)};

    // trans[h](a, b): worst-user SINR of hop h between candidates a and b
    std::vector<Matrix> trans;
    trans.reserve(static_cast<std::size_t>(l));
    for (int h = 0; h < l; ++h) {
        const auto& prev = (h == 0) ? sources : cand_nodes;
        const auto& next = (h == l - 1) ? dests : cand_nodes;
        trans.push_back(build_bottleneck_table(cfg, channels, powers, prev, next, h));
    }

    // suffix[s][x]: best bottleneck over hops s..l-1 entering stage s at x
    std::vector<std::vector<double>> suffix(static_cast<std::size_t>(l));
    suffix[static_cast<std::size_t>(l - 1)].resize(n_cand);
    for (std::size_t x = 0; x < n_cand; ++x)
        suffix[static_cast<std::size_t>(l - 1)][x] =
            trans[static_cast<std::size_t>(l - 1)](static_cast<Eigen::Index>(x), 0);
    for (int s = l - 2; s >= 1; --s) {
        suffix[static_cast<std::size_t>(s)].resize(n_cand);
        for (std::size_t x = 0; x < n_cand; ++x) {
            double best = neg_inf;
            for (std::size_t y = 0; y < n_cand; ++y)
                best = std::max(best,
                                std::min(trans[static_cast<std::size_t>(s)](
                                             static_cast<Eigen::Index>(x),
                                             static_cast<Eigen::Index>(y)),
                                         suffix[static_cast<std::size_t>(s + 1)][y]));
            suffix[static_cast<std::size_t>(s)][x] = best;
        }
    }

    double opt = neg_inf;
    for (std::size_t x = 0; x < n_cand; ++x)
        opt = std::max(opt, std::min(trans[0](0, static_cast<Eigen::Index>(x)),
                                     suffix[1][x]));

    // greedy forward reconstruction of the lexicographically smallest
    // optimal state sequence; all values reuse the same tables, so the
    // equality test is exact
    RelayAssignment assign;
    assign.chosen.resize(l - 1, cfg.n_users);
    double running = std::numeric_limits<double>::infinity();
    std::size_t prev = 0;
    for (int s = 1; s <= l - 1; ++s) {
        for (std::size_t x = 0; x < n_cand; ++x) {
            const double through = std::min(
                {running,
                 trans[static_cast<std::size_t>(s - 1)](static_cast<Eigen::Index>(prev),
                                                        static_cast<Eigen::Index>(x)),
                 suffix[static_cast<std::size_t>(s)][x]});
            if (through == opt) {
                for (int i = 0; i < cfg.n_users; ++i)
                    assign.chosen(s - 1, i) = cands[x].relays[static_cast<std::size_t>(i)];
                running = std::min(running, trans[static_cast<std::size_t>(s - 1)](
                                                static_cast<Eigen::Index>(prev),
                                                static_cast<Eigen::Index>(x)));
                prev = x;
                break;
            }
        }
    }
    return assign;
}

RelayAssignment select_greedy_reference(const NetworkConfig& cfg,
                                        const ChannelRealization& channels,
                                        const PowerAllocation& powers) {
    check_common(cfg, channels, powers);
    const int l = cfg.l_hops;
    const int m = cfg.m_relays;
    std::vector<std::vector<bool>> available(
        static_cast<std::size_t>(l - 1), std::vector<bool>(static_cast<std::size_t>(m), true));

    RelayAssignment assign;
    assign.chosen.resize(l - 1, cfg.n_users);

    for (int u = 0; u < cfg.n_users; ++u) {
        // interference-free SNR of user u over (tx, rx) node pairs of hop h
        auto snr = [&](int h, int tx, int rx) {
            return powers.power(h, u) * channels.gains[h](tx, rx) / cfg.noise_variance;
        };

        // suffix[s][r]: best bottleneck from relay r at stage s to the destination
        std::vector<std::vector<double>> suffix(static_cast<std::size_t>(l));
        suffix[static_cast<std::size_t>(l - 1)].assign(static_cast<std::size_t>(m), neg_inf);
        for (int r = 0; r < m; ++r)
            if (available[static_cast<std::size_t>(l - 2)][static_cast<std::size_t>(r)])
                suffix[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(r)] =
                    snr(l - 1, r, u);
        for (int s = l - 2; s >= 1; --s) {
            suffix[static_cast<std::size_t>(s)].assign(static_cast<std::size_t>(m), neg_inf);
            for (int r = 0; r < m; ++r) {
                if (!available[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(r)])
                    continue;
                double best = neg_inf;
                for (int r2 = 0; r2 < m; ++r2) {
                    if (!available[static_cast<std::size_t>(s)][static_cast<std::size_t>(r2)])
                        continue;
                    best = std::max(best,
                                    std::min(snr(s, r, r2),
                                             suffix[static_cast<std::size_t>(s + 1)]
                                                   [static_cast<std::size_t>(r2)]));
                }
                suffix[static_cast<std::size_t>(s)][static_cast<std::size_t>(r)] = best;
            }
        }

        double opt = neg_inf;
        for (int r = 0; r < m; ++r)
            if (available[0][static_cast<std::size_t>(r)])
                opt = std::max(opt, std::min(snr(0, u, r),
                                             suffix[1][static_cast<std::size_t>(r)]));

        double running = std::numeric_limits<double>::infinity();
        int prev = u; // source node
        for (int s = 1; s <= l - 1; ++s) {
            for (int r = 0; r < m; ++r) {
                if (!available[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(r)])
                    continue;
                const double hop_val = (s == 1) ? snr(0, prev, r) : snr(s - 1, prev, r);
                const double through =
                    std::min({running, hop_val, suffix[static_cast<std::size_t>(s)]
                                                      [static_cast<std::size_t>(r)]});
                if (through == opt) {
                    assign.chosen(s - 1, u) = r;
                    available[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(r)] = false;
                    running = std::min(running, hop_val);
                    prev = r;
                    break;
                }
            }
        }
    }
    return assign;
}

RelayAssignment select_random_reference(const NetworkConfig& cfg, StreamRng& stream) {
    cfg.validate();
    RelayAssignment assign;
    assign.chosen.resize(cfg.l_hops - 1, cfg.n_users);
    std::vector<int> pool(static_cast<std::size_t>(cfg.m_relays));
    for (int s = 0; s < cfg.l_hops - 1; ++s) {
        for (int r = 0; r < cfg.m_relays; ++r)
            pool[static_cast<std::size_t>(r)] = r;
        // partial Fisher-Yates draws an ordered n-subset uniformly
        for (int k = 0; k < cfg.n_users; ++k) {
            const std::size_t j =
                static_cast<std::size_t>(k) +
                static_cast<std::size_t>(stream.next_below(
                    static_cast<std::uint64_t>(cfg.m_relays - k)));
            std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
            assign.chosen(s, k) = pool[static_cast<std::size_t>(k)];
        }
    }
    return assign;
}

RelayAssignment select_exhaustive_sumrate(const NetworkConfig& cfg,
                                          const ChannelRealization& channels,
                                          const PowerAllocation& powers, std::uint64_t budget,
                                          std::uint64_t* enumerated) {
    check_common(cfg, channels, powers);
    const auto cands = enumerate_stage_assignments(cfg.m_relays, cfg.n_users);
    const std::size_t n_cand = cands.size();
    const int n_stages = cfg.l_hops - 1;

    std::uint64_t total = 1;
    for (int s = 0; s < n_stages; ++s) {
        if (total > budget / n_cand + 1)
            throw std::invalid_argument("select_exhaustive_sumrate: enumeration exceeds budget");
        total *= n_cand;
    }
    if (total > budget)
        throw std::invalid_argument("select_exhaustive_sumrate: enumeration exceeds budget");

    RelayAssignment current;
    current.chosen.resize(n_stages, cfg.n_users);
    RelayAssignment best;
    double best_rate = neg_inf;
    std::uint64_t count = 0;

    std::vector<std::size_t> digits(static_cast<std::size_t>(n_stages), 0);
    while (true) {
        for (int s = 0; s < n_stages; ++s)
            for (int i = 0; i < cfg.n_users; ++i)
                current.chosen(s, i) =
                    cands[digits[static_cast<std::size_t>(s)]].relays[static_cast<std::size_t>(i)];
        ++count;
        const double rate = evaluate(cfg, channels, current, powers).sum_rate;
        if (rate > best_rate) {
            best_rate = rate;
            best = current;
        }
        int pos = n_stages - 1;
        while (pos >= 0) {
            if (++digits[static_cast<std::size_t>(pos)] < n_cand)
                break;
            digits[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0)
            break;
    }
    if (enumerated)
        *enumerated = count;
    return best;
}

} // namespace relaynet
