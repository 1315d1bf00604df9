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

#include "relaynet/power_control.hpp"

#include "relaynet/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace relaynet {

namespace {

constexpr double inv_ln2 = 1.0 / std::numbers::ln2;

// Link gains of a fixed assignment, reorganized per user.
// own(i, h): gain of user i's direct link in hop h.
// cross[h](j, i): gain from user j's transmitter into user i's receiver.
struct LinkModel {
    Matrix own;                // n x l
    Matrix ln_own;             // n x l
    std::vector<Matrix> cross; // per hop, n x n, diagonal unused
    double sigma2 = 0.0;
    int n = 0;
    int l = 0;
};

LinkModel build_link_model(const NetworkConfig& cfg, const ChannelRealization& channels,
                           const RelayAssignment& assign) {
    LinkModel m;
    m.n = cfg.n_users;
    m.l = cfg.l_hops;
    m.sigma2 = cfg.noise_variance;
    m.own.resize(m.n, m.l);
    m.ln_own.resize(m.n, m.l);
    m.cross.assign(static_cast<std::size_t>(m.l), Matrix::Zero(m.n, m.n));
    for (int h = 0; h < m.l; ++h) {
        const Matrix& g = channels.gains[h];
        for (int i = 0; i < m.n; ++i) {
            const int rx = assigned_node(assign, h + 1, i);
            for (int j = 0; j < m.n; ++j) {
                const double gain = g(assigned_node(assign, h, j), rx);
                if (j == i) {
                    m.own(i, h) = gain;
                    m.ln_own(i, h) = std::log(std::max(gain, 1e-300));
                } else {
                    m.cross[static_cast<std::size_t>(h)](j, i) = gain;
                }
            }
        }
    }
    return m;
}

// f(i, h) = log SINR of user i in hop h at powers e^q
void transformed_sinrs(const LinkModel& m, const Matrix& q, Matrix& f, Matrix& den) {
    const Matrix p = q.array().exp().matrix(); // l x n
    f.resize(m.n, m.l);
    den.resize(m.n, m.l);
    for (int h = 0; h < m.l; ++h) {
        for (int i = 0; i < m.n; ++i) {
            double interference = 0.0;
            for (int j = 0; j < m.n; ++j)
                if (j != i)
                    interference += p(h, j) * m.cross[static_cast<std::size_t>(h)](j, i);
            den(i, h) = m.sigma2 + interference;
            f(i, h) = q(h, i) + m.ln_own(i, h) - std::log(den(i, h));
        }
    }
}

struct Objectives {
    double exact = 0.0;    // sum_i a_i min_h f(i,h) + b_i
    double smoothed = 0.0; // same with the min replaced by a soft minimum
};

Objectives objectives_at(const LinkModel& m, const BoundCoefficients& coeffs, const Matrix& f,
                         double mu) {
    Objectives o;
    for (int i = 0; i < m.n; ++i) {
        const double mn = f.row(i).minCoeff();
        double acc = 0.0;
        for (int h = 0; h < m.l; ++h)
            acc += std::exp(-(f(i, h) - mn) / mu);
        o.exact += coeffs.a(i) * mn + coeffs.b(i);
        o.smoothed += coeffs.a(i) * (mn - mu * std::log(acc)) + coeffs.b(i);
    }
    return o;
}

// gradient of the smoothed objective with respect to q
Matrix smoothed_gradient(const LinkModel& m, const BoundCoefficients& coeffs, const Matrix& q,
                         const Matrix& f, const Matrix& den, double mu) {
    const Matrix p = q.array().exp().matrix();
    Matrix grad = Matrix::Zero(m.l, m.n);
    for (int i = 0; i < m.n; ++i) {
        const double mn = f.row(i).minCoeff();
        double wsum = 0.0;
        for (int h = 0; h < m.l; ++h)
            wsum += std::exp(-(f(i, h) - mn) / mu);
        for (int h = 0; h < m.l; ++h) {
            const double w = std::exp(-(f(i, h) - mn) / mu) / wsum;
            const double scale = coeffs.a(i) * w;
            grad(h, i) += scale;
            for (int j = 0; j < m.n; ++j)
                if (j != i)
                    grad(h, j) -=
                        scale * p(h, j) * m.cross[static_cast<std::size_t>(h)](j, i) / den(i, h);
        }
    }
    return grad;
}

Matrix clamp_box(const Matrix& q, double lo, double hi) {
    return q.array().max(lo).min(hi).matrix();
}

PowerAllocation powers_from_log(const NetworkConfig& cfg, const Matrix& q) {
    PowerAllocation p;
    p.power = q.array().exp().min(cfg.p_max).max(0.0).matrix();
    return p;
}

} // namespace

double ScaSettings::resolved_power_floor(const NetworkConfig& cfg) const {
    return power_floor > 0.0 ? power_floor : cfg.p_max * 1e-12;
}

BoundCoefficients bound_coefficients(const Vector& anchor_sinr) {
    BoundCoefficients c;
    c.a.resize(anchor_sinr.size());
    c.b.resize(anchor_sinr.size());
    for (Eigen::Index i = 0; i < anchor_sinr.size(); ++i) {
        const double z = anchor_sinr(i);
        if (!(z > 0.0) || !std::isfinite(z))
            throw std::invalid_argument("bound_coefficients: anchors must be positive and finite");
        c.a(i) = z / (1.0 + z);
        c.b(i) = std::log1p(z) - c.a(i) * std::log(z);
    }
    return c;
}

LogPowerVector solve_inner_concave(const NetworkConfig& cfg, const ChannelRealization& channels,
                                   const RelayAssignment& assign, const BoundCoefficients& coeffs,
                                   const ScaSettings& settings, const Matrix& q_start) {
    cfg.validate();
    validate_channels(cfg, channels);
    validate_assignment(cfg, assign);
    if (coeffs.a.size() != cfg.n_users || coeffs.b.size() != cfg.n_users)
        throw std::invalid_argument("solve_inner_concave: coefficient size mismatch");

    const LinkModel model = build_link_model(cfg, channels, assign);
    const double lo = std::log(settings.resolved_power_floor(cfg));
    const double hi = std::log(cfg.p_max);

    Matrix q = clamp_box(q_start, lo, hi);
    Matrix f, den;
    transformed_sinrs(model, q, f, den);

    Matrix best_q = q;
    double best_exact = objectives_at(model, coeffs, f, 1.0).exact;

    // The exact objective's min over hops is non-smooth exactly where the
    // optimum tends to sit (all hops of a user tied), so the ascent runs on
    // a soft minimum whose temperature is annealed. Every evaluated point
    // is also scored exactly and the best exact iterate is returned, which
    // keeps the result no worse than the warm start.
    constexpr double mus[] = {1e-1, 1e-2, 1e-3, 1e-4};
    int iters = 0;
    bool capped = false;
    for (const double mu : mus) {
        transformed_sinrs(model, q, f, den);
        Objectives cur = objectives_at(model, coeffs, f, mu);
        if (cur.exact > best_exact) {
            best_exact = cur.exact;
            best_q = q;
        }
        while (true) {
            if (iters >= settings.max_inner_iters) {
                capped = true;
                break;
            }
            ++iters;
            const Matrix grad = smoothed_gradient(model, coeffs, q, f, den, mu);
            double alpha = settings.step_rule.initial;
            bool moved = false;
            for (int bt = 0; bt < 40; ++bt) {
                const Matrix q_try = clamp_box(q + alpha * grad, lo, hi);
                if ((q_try - q).lpNorm<Eigen::Infinity>() == 0.0)
                    break;
                Matrix f_try, den_try;
                transformed_sinrs(model, q_try, f_try, den_try);
                const Objectives o_try = objectives_at(model, coeffs, f_try, mu);
                if (o_try.exact > best_exact) {
                    best_exact = o_try.exact;
                    best_q = q_try;
                }
                if (o_try.smoothed > cur.smoothed) {
                    const double gain = o_try.smoothed - cur.smoothed;
                    q = q_try;
                    f = f_try;
                    den = den_try;
                    cur = o_try;
                    moved = true;
                    if (gain < 1e-12 * std::max(1.0, std::abs(cur.smoothed)))
                        moved = false; // converged at this temperature
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved)
                break;
        }
        if (capped)
            break;
    }

    LogPowerVector out;
    out.q = best_q;
    transformed_sinrs(model, best_q, f, den);
    out.t = f.rowwise().minCoeff();
    out.objective = (coeffs.a.array() * out.t.array()).sum() + coeffs.b.sum();
    out.converged = !capped;
    out.iterations = iters;
    return out;
}

LogPowerVector solve_inner_concave(const NetworkConfig& cfg, const ChannelRealization& channels,
                                   const RelayAssignment& assign, const BoundCoefficients& coeffs,
                                   const ScaSettings& settings) {
    const Matrix q0 = Matrix::Constant(cfg.l_hops, cfg.n_users, std::log(cfg.p_max));
    return solve_inner_concave(cfg, channels, assign, coeffs, settings, q0);
}

ScaResult sca_power_control(const NetworkConfig& cfg, const ChannelRealization& channels,
                            const RelayAssignment& assign, const PowerAllocation& initial_powers,
                            const ScaSettings& settings) {
    cfg.validate();
    validate_channels(cfg, channels);
    validate_assignment(cfg, assign);
    validate_powers(cfg, initial_powers);

    const double floor = settings.resolved_power_floor(cfg);
    Matrix q = initial_powers.power.array().max(floor).min(cfg.p_max).log().matrix();

    ScaResult res;
    PowerAllocation powers = powers_from_log(cfg, q);
    RateReport report = evaluate(cfg, channels, assign, powers);
    res.outer_sum_rates.push_back(report.sum_rate);

    for (int m = 1; m <= settings.max_outer_iters; ++m) {
        res.outer_iters = m;
        Vector anchors = report.effective_sinr;
        for (Eigen::Index i = 0; i < anchors.size(); ++i) {
            if (!(anchors(i) > 0.0)) {
                anchors(i) = floor;
                ++res.anchor_warnings;
            }
        }
        const BoundCoefficients coeffs = bound_coefficients(anchors);
        const LogPowerVector sol =
            solve_inner_concave(cfg, channels, assign, coeffs, settings, q);
        res.inner_iters_total += sol.iterations;

        const double dq = (sol.q - q).norm();
        const double qn = std::max(sol.q.norm(), 1e-300);
        q = sol.q;

        powers = powers_from_log(cfg, q);
        const RateReport next = evaluate(cfg, channels, assign, powers);
        const double gain = (next.sum_rate - report.sum_rate) / std::max(next.sum_rate, 1e-300);
        report = next;
        res.outer_sum_rates.push_back(report.sum_rate);

        const bool stop = (settings.stop_rule == ScaStopRule::LogPowerChange)
                              ? (dq / qn < settings.e_th)
                              : (gain < settings.e_th);
        if (stop) {
            res.converged = true;
            break;
        }
    }

    // snap floor-level powers to exact zeros when that costs no measurable rate
    bool any_snapped = false;
    PowerAllocation snapped = powers;
    for (Eigen::Index h = 0; h < snapped.power.rows(); ++h)
        for (Eigen::Index i = 0; i < snapped.power.cols(); ++i)
            if (snapped.power(h, i) < 2.0 * floor) {
                snapped.power(h, i) = 0.0;
                any_snapped = true;
            }
    if (any_snapped) {
        const RateReport snapped_report = evaluate(cfg, channels, assign, snapped);
        if (snapped_report.sum_rate >= report.sum_rate * (1.0 - settings.e_th)) {
            powers = snapped;
            report = snapped_report;
        }
    }

    res.powers = powers;
    res.report = report;
    return res;
}

SinrMatchResult sinr_matching(const NetworkConfig& cfg, const ChannelRealization& channels,
                              const RelayAssignment& assign, const ScaSettings& settings) {
    cfg.validate();
    validate_channels(cfg, channels);
    validate_assignment(cfg, assign);

    const LinkModel model = build_link_model(cfg, channels, assign);
    const int n = model.n;
    const int l = model.l;

    Matrix p = Matrix::Constant(l, n, cfg.p_max);
    double damping = 1.0;
    int flips = 0;
    int last_sign = 0;
    double prev_rate = -1.0;

    SinrMatchResult res;
    for (int it = 1; it <= settings.max_inner_iters; ++it) {
        res.iterations = it;

        Matrix target(l, n);
        for (int i = 0; i < n; ++i) {
            // highest equalized SINR this user can hold under the current
            // interference: the worst hop runs at p_max
            double level = std::numeric_limits<double>::infinity();
            Vector den(l);
            for (int h = 0; h < l; ++h) {
                double interference = 0.0;
                for (int j = 0; j < n; ++j)
                    if (j != i)
                        interference += p(h, j) * model.cross[static_cast<std::size_t>(h)](j, i);
                den(h) = model.sigma2 + interference;
                const double cap = cfg.p_max * model.own(i, h) / den(h);
                level = std::min(level, cap);
            }
            for (int h = 0; h < l; ++h)
                target(h, i) = model.own(i, h) > 0.0
                                   ? std::min(level * den(h) / model.own(i, h), cfg.p_max)
                                   : 0.0;
        }

        const Matrix p_new = damping * target + (1.0 - damping) * p;
        const double change = (p_new - p).lpNorm<Eigen::Infinity>() / cfg.p_max;
        p = p_new;

        PowerAllocation pa;
        pa.power = p;
        const double rate = evaluate(cfg, channels, assign, pa).sum_rate;
        if (prev_rate >= 0.0) {
            const double delta = rate - prev_rate;
            const int sign = (delta > 0.0) - (delta < 0.0);
            if (sign != 0 && last_sign != 0 && sign != last_sign)
                ++flips;
            else if (sign != 0 && sign == last_sign)
                flips = 0;
            if (sign != 0)
                last_sign = sign;
            if (flips >= 3)
                damping = 0.5;
        }
        prev_rate = rate;

        if (change < 1e-13) {
            res.converged = true;
            break;
        }
    }

    res.powers.power = p;

    // equalization achieved iff every user's hop SINRs agree to 1e-6 relative
    if (res.converged) {
        PowerAllocation pa;
        pa.power = p;
        const RateReport rep = evaluate(cfg, channels, assign, pa);
        for (int i = 0; i < n; ++i) {
            const double hi_s = rep.sinr.row(i).maxCoeff();
            const double lo_s = rep.sinr.row(i).minCoeff();
            if (hi_s > 0.0 && (hi_s - lo_s) / hi_s > 1e-6)
                res.converged = false;
        }
    }
    return res;
}

std::vector<double> power_grid(double p_max, int points) {
    if (points < 2)
        throw std::invalid_argument("power_grid: need at least 2 points per axis");
    std::vector<double> g(static_cast<std::size_t>(points));
    g[0] = 0.0;
    for (int k = 1; k < points; ++k)
        g[static_cast<std::size_t>(k)] = p_max * std::pow(10.0, -(points - 1 - k) / 16.0);
    return g;
}

double grid_resolution_bits(int n_users) {
    return n_users * std::log2(10.0) / 16.0;
}

GridOracleResult grid_power_oracle(const NetworkConfig& cfg, const ChannelRealization& channels,
                                   const RelayAssignment& assign, int grid_points_per_axis,
                                   std::uint64_t budget) {
    cfg.validate();
    validate_channels(cfg, channels);
    validate_assignment(cfg, assign);

    const int n = cfg.n_users;
    const int l = cfg.l_hops;
    if (n * l > 6)
        throw std::invalid_argument("grid_power_oracle: more than 6 power variables");

    const std::vector<double> grid = power_grid(cfg.p_max, grid_points_per_axis);
    const std::uint64_t g_sz = static_cast<std::uint64_t>(grid.size());

    std::uint64_t combos_per_hop = 1;
    for (int j = 0; j < n; ++j)
        combos_per_hop *= g_sz;
    std::uint64_t total = 1;
    for (int h = 0; h < l; ++h) {
        if (total > budget / combos_per_hop + 1)
            throw std::invalid_argument("grid_power_oracle: grid exceeds budget");
        total *= combos_per_hop;
    }
    if (total > budget)
        throw std::invalid_argument("grid_power_oracle: grid exceeds budget");

    // per-hop rate tables over that hop's power combinations
    std::vector<int> tx(static_cast<std::size_t>(n)), rx(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> rate(static_cast<std::size_t>(l));
    for (int h = 0; h < l; ++h) {
        for (int i = 0; i < n; ++i) {
            tx[static_cast<std::size_t>(i)] = assigned_node(assign, h, i);
            rx[static_cast<std::size_t>(i)] = assigned_node(assign, h + 1, i);
        }
        auto& tab = rate[static_cast<std::size_t>(h)];
        tab.resize(combos_per_hop * static_cast<std::uint64_t>(n));
        Vector stage_powers(n);
        for (std::uint64_t combo = 0; combo < combos_per_hop; ++combo) {
            std::uint64_t rem = combo;
            for (int j = 0; j < n; ++j) {
                stage_powers(j) = grid[static_cast<std::size_t>(rem % g_sz)];
                rem /= g_sz;
            }
            const Vector s = hop_sinrs(cfg, channels.gains[h], tx, rx, stage_powers);
            for (int i = 0; i < n; ++i)
                tab[combo * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(i)] =
                    std::log1p(s(i)) * inv_ln2;
        }
    }

    std::vector<std::uint64_t> digits(static_cast<std::size_t>(l), 0);
    std::vector<std::uint64_t> best = digits;
    double best_rate = -std::numeric_limits<double>::infinity();
    while (true) {
        double obj = 0.0;
        for (int i = 0; i < n; ++i) {
            double worst = std::numeric_limits<double>::infinity();
            for (int h = 0; h < l; ++h)
                worst = std::min(worst, rate[static_cast<std::size_t>(h)]
                                            [digits[static_cast<std::size_t>(h)] *
                                                 static_cast<std::uint64_t>(n) +
                                             static_cast<std::uint64_t>(i)]);
            obj += worst;
        }
        if (obj > best_rate) {
            best_rate = obj;
            best = digits;
        }
        int pos = l - 1;
        while (pos >= 0) {
            if (++digits[static_cast<std::size_t>(pos)] < combos_per_hop)
                break;
            digits[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0)
            break;
    }

    GridOracleResult res;
    res.powers.power.resize(l, n);
    for (int h = 0; h < l; ++h) {
        std::uint64_t rem = best[static_cast<std::size_t>(h)];
        for (int j = 0; j < n; ++j) {
            res.powers.power(h, j) = grid[static_cast<std::size_t>(rem % g_sz)];
            rem /= g_sz;
        }
    }
    res.report = evaluate(cfg, channels, assign, res.powers);
    return res;
}

} // namespace relaynet
