// SPDX-License-Identifier: Apache-2.0
//
// riscap - dimensioning toolkit for RIS-assisted multi-user MISO downlinks
// Copyright (C) 2026 The riscap authors
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

#include "riscap/rates.hpp"
#include "riscap/error.hpp"
#include "riscap/stats.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace riscap
{
namespace
{

constexpr int max_redraws = 16;

bool channel_is_silent(const RisPanel &panel, const GainProfile &gains)
{
    if (panel.reflection_amplitude == 0.0)
        return true;
    for (double g : gains.per_user_aggregate)
        if (g > 0.0)
            return false;
    return true;
}

TrialOutcome run_trial(const Scenario &scenario, const RisPanel &panel, const GainProfile &gains,
                       const LinkBudget &budget, const MonteCarloOptions &options,
                       std::uint64_t trial)
{
    for (int attempt = 0;; ++attempt)
    {
        auto rng = RngStream::derive(options.root_seed, options.grid_index, trial,
                                     static_cast<std::uint64_t>(attempt));
        const auto realization =
            options.synthesis.mode == SynthesisMode::clt_shortcut
                ? synthesize_clt(scenario, panel, gains, rng)
                : synthesize_exact(scenario, panel, gains, options.synthesis.fading, rng,
                                   options.synthesis.exact);
        try
        {
            require_full_row_rank(realization.G);
            auto outcome = evaluate_channel(realization.G, budget);
            outcome.redraws = attempt;
            return outcome;
        }
        catch (const Error &e)
        {
            const bool degenerate = e.kind() == ErrorKind::rank_deficient ||
                                    e.kind() == ErrorKind::singular_matrix;
            if (!degenerate || attempt + 1 >= max_redraws)
                throw;
        }
    }
}

double log2_1p(double x) { return std::log1p(x) / std::log(2.0); }

} // namespace

TrialOutcome evaluate_channel(const CMatrix &G, const LinkBudget &budget)
{
    const auto K = static_cast<std::size_t>(G.rows());
    TrialOutcome out;
    out.snr = snr_closed(G, budget);
    const double scale = budget.transmit_power / (static_cast<double>(K) * budget.noise_power);
    for (std::size_t k = 0; k < K; ++k)
    {
        out.zf_rate.push_back(log2_1p(out.snr[k]));
        const double gram_kk = G.row(static_cast<Eigen::Index>(k)).squaredNorm();
        out.dpc_rate.push_back(log2_1p(scale * budget.allocation[k] * gram_kk));
    }
    return out;
}

RateReport monte_carlo_rates(const Scenario &scenario, const RisPanel &panel,
                             const GainProfile &gains, const LinkBudget &budget,
                             const MonteCarloOptions &options)
{
    scenario.validate();
    panel.validate();
    budget.validate(scenario.num_users);
    if (options.trials < 1)
        throw Error(ErrorKind::invalid_argument, "monte carlo: trials must be at least 1");

    const auto K = static_cast<std::size_t>(scenario.num_users);
    const auto trials = static_cast<std::size_t>(options.trials);
    RateReport report;
    report.trials = options.trials;
    report.per_user_rate.assign(K, 0.0);

    std::vector<TrialOutcome> outcomes(trials);
    if (channel_is_silent(panel, gains))
    {
        // G is identically zero: no user receives anything.
        for (auto &o : outcomes)
        {
            o.snr.assign(K, 0.0);
            o.zf_rate.assign(K, 0.0);
            o.dpc_rate.assign(K, 0.0);
        }
    }
    else
    {
        parallel_for(trials, options.workers, [&](std::size_t t) {
            outcomes[t] = run_trial(scenario, panel, gains, budget, options, t);
        });
    }

    std::vector<double> sum_rate(trials);
    std::vector<double> dpc(trials);
    for (std::size_t t = 0; t < trials; ++t)
    {
        const auto &o = outcomes[t];
        report.discarded += o.redraws;
        for (std::size_t k = 0; k < K; ++k)
        {
            report.per_user_rate[k] += o.zf_rate[k];
            sum_rate[t] += o.zf_rate[k];
            dpc[t] += o.dpc_rate[k];
        }
    }
    if (report.discarded > 0 && 100 * report.discarded >= options.trials)
        throw Error(ErrorKind::rank_deficient,
                    "monte carlo: " + std::to_string(report.discarded) + " of " +
                        std::to_string(options.trials) +
                        " trials drew rank-deficient channels (limit is below 1%)");

    for (auto &r : report.per_user_rate)
        r /= static_cast<double>(trials);
    if (trials >= 2)
    {
        const auto rate_ci = confidence_interval(sum_rate);
        const auto dpc_ci = confidence_interval(dpc);
        report.sum_rate = rate_ci.mean;
        report.sum_rate_ci = rate_ci.halfwidth;
        report.dpc_capacity = dpc_ci.mean;
        report.dpc_capacity_ci = dpc_ci.halfwidth;
    }
    else
    {
        report.sum_rate = sum_rate[0];
        report.dpc_capacity = dpc[0];
        report.sum_rate_ci = std::numeric_limits<double>::quiet_NaN();
        report.dpc_capacity_ci = std::numeric_limits<double>::quiet_NaN();
    }
    if (options.keep_trials)
        report.trial_outcomes = std::move(outcomes);
    return report;
}

RateReport sum_rate_mc(const Scenario &scenario, const RisPanel &panel, const GainProfile &gains,
                       const LinkBudget &budget, const MonteCarloOptions &options)
{
    return monte_carlo_rates(scenario, panel, gains, budget, options);
}

double dpc_capacity_mc(const Scenario &scenario, const RisPanel &panel, const GainProfile &gains,
                       const LinkBudget &budget, const MonteCarloOptions &options)
{
    return monte_carlo_rates(scenario, panel, gains, budget, options).dpc_capacity;
}

double capacity_upper_bound(const GainProfile &gains, const LinkBudget &budget, int num_antennas,
                            int num_users, double reflection_amplitude)
{
    budget.validate(num_users);
    if (gains.per_user_aggregate.size() != static_cast<std::size_t>(num_users))
        throw Error(ErrorKind::invalid_argument, "upper bound: gain profile does not match K");
    const double scale = budget.transmit_power / (num_users * budget.noise_power);
    const double g2 = reflection_amplitude * reflection_amplitude;
    double total = 0.0;
    for (std::size_t k = 0; k < gains.per_user_aggregate.size(); ++k)
    {
        const double aggregate = gains.per_user_aggregate[k];
        if (!std::isfinite(aggregate))
            throw Error(ErrorKind::invalid_argument, "upper bound: non-finite gain");
        total += log2_1p(scale * budget.allocation[k] * aggregate * g2 * num_antennas);
    }
    return total;
}

std::vector<double> asymptotic_limits(const Scenario &scenario)
{
    std::vector<double> out;
    const double z0 = scenario.bs_plane_distance();
    for (int k = 0; k < scenario.num_users; ++k)
    {
        const double zk = scenario.user_plane_distance(k);
        if (!(z0 > 0.0) || !(zk > 0.0))
            throw Error(ErrorKind::infeasible_geometry,
                        "capacity limit: BS and users must be in front of the RIS plane");
        out.push_back(asymptotic_gain(z0, zk, scenario.wavelength, scenario.antenna_gain));
    }
    return out;
}

double capacity_limit(const Scenario &scenario, const LinkBudget &budget, int num_antennas,
                      int num_users, double reflection_amplitude)
{
    budget.validate(num_users);
    const auto limits = asymptotic_limits(scenario);
    const double scale = budget.transmit_power * reflection_amplitude * reflection_amplitude *
                         num_antennas / (num_users * budget.noise_power);
    double total = 0.0;
    for (std::size_t k = 0; k < limits.size(); ++k)
        total += log2_1p(scale * budget.allocation[k] * limits[k]);
    return total;
}

double epsilon_hat_ratio(const std::vector<double> &aggregates, const std::vector<double> &limits,
                         const LinkBudget &budget, double mu, double reflection_amplitude)
{
    if (aggregates.size() != limits.size() || aggregates.size() != budget.allocation.size())
        throw Error(ErrorKind::invalid_argument, "epsilon hat: per-user vectors differ in length");
    const double snr = budget.transmit_power / budget.noise_power;
    const double g2 = reflection_amplitude * reflection_amplitude;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < aggregates.size(); ++k)
    {
        const double c = snr * budget.allocation[k] * g2;
        num += log2_1p(c * aggregates[k] * (mu - 1.0));
        den += log2_1p(c * mu * limits[k]);
    }
    return den > 0.0 ? num / den : 0.0;
}

double epsilon_hat(const Scenario &scenario, const LinkBudget &budget, int num_antennas,
                   int num_users, double reflection_amplitude, const std::vector<double> &aggregates)
{
    if (num_antennas < num_users)
        throw Error(ErrorKind::domain, "epsilon hat: M must not be below K");
    budget.validate(num_users);
    const double mu = static_cast<double>(num_antennas) / num_users;
    return epsilon_hat_ratio(aggregates, asymptotic_limits(scenario), budget, mu,
                             reflection_amplitude);
}

} // namespace riscap
