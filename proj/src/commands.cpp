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

#include "riscap/commands.hpp"
#include "riscap/error.hpp"

#include <cmath>
#include <cstdio>

namespace riscap
{
namespace
{

std::string format_count(std::uint64_t n) { return std::to_string(n); }

std::string format_bool(bool b) { return b ? "true" : "false"; }

std::vector<std::uint64_t> element_grid(const RunConfig &config)
{
    std::vector<std::uint64_t> out;
    for (double n : config.num_elements.values)
        out.push_back(static_cast<std::uint64_t>(n));
    return out;
}

void require_sweep(const RunConfig &config, const std::string &command)
{
    if (config.sweep != "none" && config.sweep != "N")
        throw Error(ErrorKind::config, command + ": experiment.sweep must be \"none\" or \"N\", got \"" +
                                           config.sweep + "\"");
}

int antennas_for(double mu, int num_users)
{
    const double m = mu * num_users;
    if (!(mu >= 1.0) || std::abs(m - std::round(m)) > 1e-9 * std::max(1.0, m))
        throw Error(ErrorKind::config, "mu = " + format_number(mu) + " gives M = mu*K = " +
                                           format_number(m) + ", which is not an integer >= K");
    return static_cast<int>(std::round(m));
}

std::string mu_label(double mu)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", mu);
    return buf;
}

} // namespace

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

std::string Table::to_csv() const
{
    std::string out;
    auto line = [&out](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            if (i)
                out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header);
    for (const auto &row : rows)
        line(row);
    return out;
}

Table cmd_simulate(const RunConfig &config)
{
    require_sweep(config, "simulate");
    const Scenario scenario = config.scenario();
    const SweepResult result = run_experiment(config.experiment(), scenario,
                                              config.panel(config.first_num_elements()),
                                              config.budget());
    Table t;
    t.header = {"N", "C_mc", "C_ci", "upper_bound", "C_limit", "R_mc", "R_ci", "epsilon"};
    for (const auto &row : result.rows)
    {
        const auto &r = row.report;
        t.rows.push_back({format_count(row.num_elements), format_number(r.dpc_capacity),
                          format_number(r.dpc_capacity_ci), format_number(r.upper_bound),
                          format_number(r.capacity_limit), format_number(r.sum_rate),
                          format_number(r.sum_rate_ci), format_number(r.epsilon)});
    }
    return t;
}

Table cmd_bounds(const RunConfig &config)
{
    require_sweep(config, "bounds");
    const Scenario scenario = config.scenario();
    const int K = scenario.num_users;
    const int M = scenario.num_antennas;
    const std::vector<double> limits = asymptotic_limits(scenario);
    const ExperimentConfig experiment = config.experiment();

    Table t;
    t.header = {"N",         "k",          "z0_m",           "zk_m",      "beta_bar_N",
                "beta_tilde", "snr_upper", "upper_bound_term", "snr_limit", "limit_term"};
    for (std::uint64_t n : element_grid(config))
    {
        const RisPanel panel = config.panel(n);
        const GainProfile gains = aggregate_gain(scenario, panel, experiment.aggregate);
        LinkBudget budget = config.budget();
        budget.allocation = allocation_for(experiment.allocation, gains.per_user_aggregate,
                                           panel.reflection_amplitude, M, K,
                                           budget.transmit_power, budget.noise_power);
        const double gamma2 = panel.reflection_amplitude * panel.reflection_amplitude;
        double upper_total = 0.0;
        double limit_total = 0.0;
        for (int k = 0; k < K; ++k)
        {
            const double c = budget.transmit_power * budget.allocation[k] /
                             (K * budget.noise_power) * gamma2 * M;
            const double snr_upper = c * gains.per_user_aggregate[k];
            const double snr_limit = c * limits[k];
            const double upper_term = std::log2(1.0 + snr_upper);
            const double limit_term = std::log2(1.0 + snr_limit);
            upper_total += upper_term;
            limit_total += limit_term;
            t.rows.push_back({format_count(n), std::to_string(k + 1),
                              format_number(scenario.bs_plane_distance()),
                              format_number(scenario.user_plane_distance(k)),
                              format_number(gains.per_user_aggregate[k]), format_number(limits[k]),
                              format_number(snr_upper), format_number(upper_term),
                              format_number(snr_limit), format_number(limit_term)});
        }
        t.rows.push_back({format_count(n), "total", "", "", "", "", "",
                          format_number(upper_total), "", format_number(limit_total)});
    }
    return t;
}

Table cmd_plan(const RunConfig &config, const PlanOptions &options)
{
    double eta = 0.0;
    if (options.eta)
        eta = *options.eta;
    else if (config.has_plan && !config.eta.listed)
        eta = config.eta.values.front();
    else
        throw Error(ErrorKind::config, "plan: no target ratio (set plan.eta or pass --eta)");
    if (!(eta > 0.0 && eta < 1.0))
        throw Error(ErrorKind::invalid_argument, "plan: eta must lie in (0, 1), got " +
                                                     format_number(eta));
    const std::string method = options.method.value_or(config.plan_method);
    if (method != "search" && method != "closed-form")
        throw Error(ErrorKind::invalid_argument,
                    "plan: method must be \"search\" or \"closed-form\", got \"" + method + "\"");

    const int K = config.layout.num_users;
    const int M = options.mu ? antennas_for(*options.mu, K) : config.first_num_antennas();
    PlanRequest request;
    request.target_ratio = eta;
    request.scenario = config.scenario(M);
    request.panel = config.panel(1);
    request.budget = config.budget();
    request.search_cap = static_cast<std::uint64_t>(config.search_cap);
    request.budget.allocation =
        allocation_for(config.experiment().allocation, asymptotic_limits(request.scenario),
                       request.panel.reflection_amplitude, M, K, request.budget.transmit_power,
                       request.budget.noise_power);

    const PlanResult plan = method == "search" ? min_elements_search(request)
                                               : min_elements_closed_form_consistent(request);
    Table t;
    t.header = {"eta",          "mu",     "N_required",     "side_length_m",
                "epsilon_at_N", "method", "high_snr_valid", "feasible"};
    const bool has_n = plan.n_required.has_value();
    t.rows.push_back({format_number(eta), format_number(request.mu()),
                      has_n ? format_count(*plan.n_required) : "",
                      has_n ? format_number(plan.side_length) : "",
                      has_n ? format_number(plan.epsilon_at_n) : "", to_string(plan.method),
                      format_bool(plan.high_snr_valid), format_bool(plan.feasible)});
    return t;
}

Table cmd_sweep_ratio(const RunConfig &config, const std::vector<double> &mu_list)
{
    if (mu_list.empty())
        throw Error(ErrorKind::config, "sweep-ratio: empty mu list (set ratio.mu_list or pass --mu-list)");
    const int K = config.layout.num_users;
    std::vector<int> antennas;
    for (double mu : mu_list)
        antennas.push_back(antennas_for(mu, K));

    const ExperimentConfig experiment = config.experiment();
    const Scenario base = config.scenario(antennas.front());
    Table t;
    t.header = {"N"};
    for (double mu : mu_list)
        t.header.push_back("eps_mu_" + mu_label(mu));

    for (std::uint64_t n : element_grid(config))
    {
        const RisPanel panel = config.panel(n);
        const GainProfile gains = aggregate_gain(base, panel, experiment.aggregate);
        std::vector<std::string> row = {format_count(n)};
        for (int M : antennas)
        {
            const Scenario scenario = config.scenario(M);
            LinkBudget budget = config.budget();
            budget.allocation = allocation_for(experiment.allocation, gains.per_user_aggregate,
                                               panel.reflection_amplitude, M, K,
                                               budget.transmit_power, budget.noise_power);
            row.push_back(format_number(epsilon_hat(scenario, budget, M, K,
                                                    panel.reflection_amplitude,
                                                    gains.per_user_aggregate)));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

} // namespace riscap
