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

#include "relaynet/two_user.hpp"

#include "relaynet/power_control.hpp"
#include "relaynet/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace relaynet {

namespace {

struct TwoUserGains {
    Matrix own;   // 2 x l
    Matrix cross; // 2 x l; cross(i, h) = gain from the other user's tx into i's rx
};

TwoUserGains collect_gains(const NetworkConfig& cfg, const ChannelRealization& channels,
                           const RelayAssignment& assign) {
    TwoUserGains g;
    g.own.resize(2, cfg.l_hops);
    g.cross.resize(2, cfg.l_hops);
    for (int h = 0; h < cfg.l_hops; ++h) {
        for (int i = 0; i < 2; ++i) {
            const int rx = assigned_node(assign, h + 1, i);
            g.own(i, h) = channels.gains[h](assigned_node(assign, h, i), rx);
            g.cross(i, h) = channels.gains[h](assigned_node(assign, h, 1 - i), rx);
        }
    }
    return g;
}

// SINRs of both users in every hop for explicit powers (l x 2)
Matrix chain_sinrs(const NetworkConfig& cfg, const TwoUserGains& g, const Matrix& p) {
    Matrix s(2, cfg.l_hops);
    for (int h = 0; h < cfg.l_hops; ++h)
        for (int i = 0; i < 2; ++i)
            s(i, h) = p(h, i) * g.own(i, h) /
                      (cfg.noise_variance + p(h, 1 - i) * g.cross(i, h));
    return s;
}

// interference-free chain for one surviving user: equal SNR in every hop,
// level either forced by a p_max pin or pushed to the box maximum
EqualSinrSolution solve_single_user_chain(const NetworkConfig& cfg, const TwoUserGains& g,
                                          int user, const std::vector<BinaryPattern::Pin>& pins) {
    const int l = cfg.l_hops;
    EqualSinrSolution sol;
    sol.powers.power = Matrix::Zero(l, 2);
    sol.per_user_sinr = Vector::Zero(2);

    const double min_gain = g.own.row(user).minCoeff();
    if (min_gain <= 0.0) {
        // a dead hop forces the equalized level to zero
        for (const auto& pin : pins)
            if (pin.user == user && pin.value > 0.0)
                return sol; // conflicts with the pinned positive power
        sol.feasible = true;
        return sol;
    }

    // the equalized level fixes the product p(h) * own(h) = c
    std::optional<double> c;
    for (const auto& pin : pins) {
        if (pin.user != user)
            continue;
        const double pc = pin.value * g.own(user, pin.stage);
        if (c && std::abs(*c - pc) > 1e-9 * std::max(*c, pc))
            return sol; // two pins demand different levels
        c = pc;
    }
    if (!c)
        c = cfg.p_max * min_gain; // unpinned: maximal level, worst hop at p_max

    for (int h = 0; h < l; ++h) {
        const double p = *c / g.own(user, h);
        if (p > cfg.p_max * (1.0 + 1e-9))
            return sol;
        sol.powers.power(h, user) = std::min(p, cfg.p_max);
    }
    sol.per_user_sinr(user) = *c / cfg.noise_variance;
    sol.feasible = true;
    return sol;
}

} // namespace

EqualSinrSolution solve_equal_sinr_chain(const NetworkConfig& cfg,
                                         const ChannelRealization& channels,
                                         const RelayAssignment& assign,
                                         const BinaryPattern& pattern) {
    cfg.validate();
    if (cfg.n_users != 2)
        throw std::invalid_argument("solve_equal_sinr_chain: requires exactly two users");
    validate_channels(cfg, channels);
    validate_assignment(cfg, assign);
    if (pattern.pins.size() < 2)
        throw std::invalid_argument("solve_equal_sinr_chain: pattern must pin at least two powers");

    const int l = cfg.l_hops;
    EqualSinrSolution infeasible;
    infeasible.powers.power = Matrix::Zero(l, 2);
    infeasible.per_user_sinr = Vector::Zero(2);

    // normalize pins; contradictory duplicates are infeasible, not an error
    Matrix pinned = Matrix::Constant(l, 2, -1.0);
    for (const auto& pin : pattern.pins) {
        if (pin.stage < 0 || pin.stage >= l || pin.user < 0 || pin.user > 1)
            throw std::invalid_argument("solve_equal_sinr_chain: pin index out of range");
        if (pin.value != 0.0 && pin.value != cfg.p_max)
            throw std::invalid_argument("solve_equal_sinr_chain: pin value must be 0 or p_max");
        const double prev = pinned(pin.stage, pin.user);
        if (prev >= 0.0 && prev != pin.value)
            return infeasible;
        pinned(pin.stage, pin.user) = pin.value;
    }

    const TwoUserGains gains = collect_gains(cfg, channels, assign);

    bool silenced[2] = {false, false};
    for (int h = 0; h < l; ++h)
        for (int u = 0; u < 2; ++u)
            if (pinned(h, u) == 0.0)
                silenced[u] = true;
    for (int h = 0; h < l; ++h)
        for (int u = 0; u < 2; ++u)
            if (silenced[u] && pinned(h, u) > 0.0)
                return infeasible; // cannot be both silent and transmitting

    if (silenced[0] && silenced[1]) {
        EqualSinrSolution sol = infeasible;
        sol.feasible = true;
        return sol;
    }
    if (silenced[0] || silenced[1]) {
        const int survivor = silenced[0] ? 1 : 0;
        return solve_single_user_chain(cfg, gains, survivor, pattern.pins);
    }

    // both users active: damped Gauss-Newton on the log of the free powers
    std::vector<std::pair<int, int>> unknowns; // (stage, user)
    for (int h = 0; h < l; ++h)
        for (int u = 0; u < 2; ++u)
            if (pinned(h, u) < 0.0)
                unknowns.emplace_back(h, u);

    auto assemble = [&](const Vector& x) {
        Matrix p(l, 2);
        for (int h = 0; h < l; ++h)
            for (int u = 0; u < 2; ++u)
                p(h, u) = pinned(h, u) >= 0.0 ? pinned(h, u) : 0.0;
        for (std::size_t k = 0; k < unknowns.size(); ++k)
            p(unknowns[k].first, unknowns[k].second) = std::exp(x(static_cast<Eigen::Index>(k)));
        return p;
    };
    auto residuals = [&](const Vector& x) {
        const Matrix s = chain_sinrs(cfg, gains, assemble(x));
        Vector r(2 * (l - 1));
        Eigen::Index k = 0;
        for (int u = 0; u < 2; ++u)
            for (int h = 1; h < l; ++h)
                r(k++) = s(u, h) - s(u, 0);
        return r;
    };

    const Eigen::Index nx = static_cast<Eigen::Index>(unknowns.size());
    Vector x = Vector::Constant(nx, std::log(cfg.p_max));
    Vector resid = residuals(x);

    bool converged = false;
    for (int it = 0; it < 100 && nx > 0; ++it) {
        const Matrix s = chain_sinrs(cfg, gains, assemble(x));
        double worst = 0.0;
        for (int u = 0; u < 2; ++u)
            for (int h = 1; h < l; ++h)
                worst = std::max(worst, std::abs(s(u, h) - s(u, 0)) /
                                            std::max(std::abs(s(u, 0)), 1e-30));
        if (worst < 1e-10) {
            converged = true;
            break;
        }

        Matrix jac(resid.size(), nx);
        const double eps = 1e-7;
        for (Eigen::Index k = 0; k < nx; ++k) {
            Vector xp = x;
            xp(k) += eps;
            jac.col(k) = (residuals(xp) - resid) / eps;
        }
        Vector step = jac.colPivHouseholderQr().solve(-resid);
        if (!step.allFinite())
            return infeasible;

        double scale = 1.0;
        bool improved = false;
        const double norm0 = resid.norm();
        for (int bt = 0; bt < 40; ++bt) {
            const Vector x_try = x + scale * step;
            const Vector r_try = residuals(x_try);
            if (r_try.norm() < norm0) {
                x = x_try;
                resid = r_try;
                improved = true;
                break;
            }
            scale *= 0.5;
        }
        if (!improved)
            break;
    }
    if (nx == 0) {
        const Matrix s = chain_sinrs(cfg, gains, assemble(x));
        converged = true;
        for (int u = 0; u < 2; ++u)
            for (int h = 1; h < l; ++h)
                if (std::abs(s(u, h) - s(u, 0)) > 1e-8 * std::max(std::abs(s(u, 0)), 1e-30))
                    converged = false;
    }
    if (!converged)
        return infeasible;

    Matrix p = assemble(x);
    for (int h = 0; h < l; ++h)
        for (int u = 0; u < 2; ++u) {
            if (p(h, u) > cfg.p_max * (1.0 + 1e-8))
                return infeasible;
            p(h, u) = std::min(p(h, u), cfg.p_max);
        }

    EqualSinrSolution sol;
    sol.powers.power = p;
    const Matrix s = chain_sinrs(cfg, gains, p);
    sol.per_user_sinr = s.col(0);
    sol.feasible = true;
    return sol;
}

Theorem2Result theorem2_power_solver(const NetworkConfig& cfg, const ChannelRealization& channels,
                                     const RelayAssignment& assign) {
    cfg.validate();
    if (cfg.n_users != 2)
        throw std::invalid_argument("theorem2_power_solver: requires exactly two users");
    validate_channels(cfg, channels);
    validate_assignment(cfg, assign);

    const int l = cfg.l_hops;
    const int n_slots = 2 * l;
    const double values[2] = {0.0, cfg.p_max};

    Theorem2Result res;
    double best_rate = -std::numeric_limits<double>::infinity();

    for (int a = 0; a < n_slots; ++a) {
        for (int b = a + 1; b < n_slots; ++b) {
            for (int va = 0; va < 2; ++va) {
                for (int vb = 0; vb < 2; ++vb) {
                    BinaryPattern pattern;
                    pattern.pins.push_back({a / 2, a % 2, values[va]});
                    pattern.pins.push_back({b / 2, b % 2, values[vb]});
                    ++res.candidates_enumerated;
                    const EqualSinrSolution sol =
                        solve_equal_sinr_chain(cfg, channels, assign, pattern);
                    if (!sol.feasible)
                        continue;
                    ++res.candidates_feasible;
                    const RateReport rep = evaluate(cfg, channels, assign, sol.powers);
                    if (rep.sum_rate > best_rate) {
                        best_rate = rep.sum_rate;
                        res.powers = sol.powers;
                        res.report = rep;
                        res.best_pattern = pattern;
                    }
                }
            }
        }
    }

    // the maximal SINR-matched point is itself an equal-SINR candidate and
    // guarantees a feasible result
    const SinrMatchResult matched = sinr_matching(cfg, channels, assign, ScaSettings{});
    const RateReport matched_rep = evaluate(cfg, channels, assign, matched.powers);
    if (matched_rep.sum_rate > best_rate) {
        res.powers = matched.powers;
        res.report = matched_rep;
        res.best_pattern = BinaryPattern{};
    }
    return res;
}

bool verify_lemma1(const NetworkConfig& cfg, const ChannelRealization& channels,
                   const RelayAssignment& assign, const PowerAllocation& powers_opt,
                   double slack_bits) {
    validate_powers(cfg, powers_opt);
    const double r_opt = evaluate(cfg, channels, assign, powers_opt).sum_rate;
    const Theorem2Result best = theorem2_power_solver(cfg, channels, assign);
    return std::abs(best.report.sum_rate - r_opt) <= slack_bits;
}

bool verify_lemma1(const NetworkConfig& cfg, const ChannelRealization& channels,
                   const RelayAssignment& assign, const PowerAllocation& powers_opt) {
    const double r_opt = evaluate(cfg, channels, assign, powers_opt).sum_rate;
    return verify_lemma1(cfg, channels, assign, powers_opt, 1e-6 * std::max(r_opt, 1e-12));
}

} // namespace relaynet
