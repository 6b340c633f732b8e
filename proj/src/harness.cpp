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

#include "riscap/harness.hpp"
#include "riscap/error.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace riscap
{
namespace
{

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

std::string describe(const ExperimentConfig &c)
{
    std::ostringstream out;
    out.precision(17);
    out << "trials=" << c.trials << " root_seed=" << c.root_seed
        << " sweep=" << to_string(c.sweep_variable) << " grid=[";
    for (std::size_t i = 0; i < c.sweep_grid.size(); ++i)
        out << (i ? "," : "") << c.sweep_grid[i];
    out << "] synthesis=" << (c.synthesis.mode == SynthesisMode::clt_shortcut ? "clt" : "exact")
        << " allocation=" << (c.allocation == AllocationMode::uniform ? "uniform" : "waterfill");
    return out.str();
}

} // namespace

std::string to_string(SweepVariable variable)
{
    switch (variable)
    {
    case SweepVariable::none:
        return "none";
    case SweepVariable::num_elements:
        return "N";
    case SweepVariable::power_dbm:
        return "P";
    case SweepVariable::num_antennas:
        return "M";
    case SweepVariable::target_ratio:
        return "eta";
    }
    return "none";
}

void ExperimentConfig::validate(const Scenario &scenario) const
{
    if (trials < 1)
        throw Error(ErrorKind::invalid_argument, "experiment: trials must be at least 1");
    if (sweep_variable == SweepVariable::none)
        return;
    if (sweep_grid.empty())
        throw Error(ErrorKind::invalid_argument, "experiment: sweep grid is empty");
    for (double v : sweep_grid)
    {
        bool ok = true;
        switch (sweep_variable)
        {
        case SweepVariable::num_elements:
            ok = is_integer(v) && v >= 1.0 && v < 1e15;
            break;
        case SweepVariable::power_dbm:
            ok = std::isfinite(v);
            break;
        case SweepVariable::num_antennas:
            ok = is_integer(v) && v >= scenario.num_users;
            break;
        case SweepVariable::target_ratio:
            ok = v > 0.0 && v < 1.0;
            break;
        case SweepVariable::none:
            break;
        }
        if (!ok)
        {
            std::ostringstream msg;
            msg.precision(17);
            msg << "experiment: grid value " << v << " is not valid for sweep variable "
                << to_string(sweep_variable);
            throw Error(ErrorKind::invalid_argument, msg.str());
        }
    }
}

std::vector<double> allocation_for(AllocationMode mode, const std::vector<double> &aggregates,
                                   double reflection_amplitude, int num_antennas, int num_users,
                                   double transmit_power, double noise_power)
{
    if (mode == AllocationMode::uniform)
        return uniform_power(num_users);
    const double dof = std::max(num_antennas - num_users, 1);
    std::vector<double> effective;
    for (double a : aggregates)
        effective.push_back(a * reflection_amplitude * reflection_amplitude * dof);
    return waterfill(effective, transmit_power, noise_power);
}

SweepResult run_experiment(const ExperimentConfig &config, const Scenario &scenario,
                           const RisPanel &panel, const LinkBudget &budget)
{
    const auto started = std::chrono::steady_clock::now();
    scenario.validate();
    panel.validate();
    config.validate(scenario);

    const std::size_t points =
        config.sweep_variable == SweepVariable::none ? 1 : config.sweep_grid.size();
    SweepResult result;
    result.metadata.config_echo = describe(config);

    for (std::size_t g = 0; g < points; ++g)
    {
        Scenario sc = scenario;
        RisPanel pn = panel;
        LinkBudget lb = budget;
        SweepRow row;
        row.value = config.sweep_variable == SweepVariable::none
                        ? std::numeric_limits<double>::quiet_NaN()
                        : config.sweep_grid[g];
        switch (config.sweep_variable)
        {
        case SweepVariable::num_elements:
            pn.num_elements = static_cast<std::uint64_t>(row.value);
            if (std::holds_alternative<PhaseExplicit>(pn.phases))
                throw Error(ErrorKind::invalid_argument,
                            "experiment: explicit phases cannot be combined with an N sweep");
            break;
        case SweepVariable::power_dbm:
            lb.transmit_power = dbm_to_watts(row.value);
            break;
        case SweepVariable::num_antennas:
            sc.num_antennas = static_cast<int>(row.value);
            break;
        default:
            break;
        }

        row.gains = aggregate_gain(sc, pn, config.aggregate);
        lb.allocation = allocation_for(config.allocation, row.gains.per_user_aggregate,
                                       pn.reflection_amplitude, sc.num_antennas, sc.num_users,
                                       lb.transmit_power, lb.noise_power);

        if (config.monte_carlo)
        {
            MonteCarloOptions mc;
            mc.trials = config.trials;
            mc.root_seed = config.root_seed;
            mc.grid_index = g;
            mc.workers = config.workers;
            mc.synthesis = config.synthesis;
            row.report = monte_carlo_rates(sc, pn, row.gains, lb, mc);
            result.metadata.discarded_trials += row.report.discarded;
        }
        auto &rep = row.report;
        rep.upper_bound = capacity_upper_bound(row.gains, lb, sc.num_antennas, sc.num_users,
                                               pn.reflection_amplitude);
        rep.capacity_limit = capacity_limit(sc, lb, sc.num_antennas, sc.num_users,
                                            pn.reflection_amplitude);
        rep.epsilon = rep.capacity_limit > 0.0 ? rep.sum_rate / rep.capacity_limit : 0.0;
        rep.epsilon_hat = epsilon_hat(sc, lb, sc.num_antennas, sc.num_users,
                                      pn.reflection_amplitude, row.gains.per_user_aggregate);

        if (config.sweep_variable == SweepVariable::target_ratio)
        {
            PlanRequest request;
            request.target_ratio = row.value;
            request.scenario = sc;
            request.panel = pn;
            request.budget = lb;
            request.aggregate = config.aggregate;
            row.plan = min_elements_search(request);
        }
        row.num_elements = pn.num_elements;
        row.num_antennas = sc.num_antennas;
        row.budget = lb;
        result.rows.push_back(std::move(row));
    }
    result.metadata.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

} // namespace riscap
