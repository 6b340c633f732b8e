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

#include <doctest.h>

#include "riscap/channel.hpp"
#include "riscap/error.hpp"
#include "riscap/harness.hpp"
#include "riscap/stats.hpp"

#include <atomic>
#include <cmath>

using namespace riscap;

namespace
{

struct Inputs
{
    Scenario scenario = build_layout(LayoutParams{}, 5.9e9, 1.0, 10, 5);
    RisPanel panel;
    LinkBudget budget;

    Inputs()
    {
        panel.num_elements = 10000;
        budget.transmit_power = dbm_to_watts(46.0);
        budget.noise_power = dbm_to_watts(-96.0);
        budget.allocation = uniform_power(5);
    }
};

bool same(const SweepResult &a, const SweepResult &b)
{
    if (a.rows.size() != b.rows.size())
        return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
    {
        const auto &x = a.rows[i].report, &y = b.rows[i].report;
        if (x.sum_rate != y.sum_rate || x.dpc_capacity != y.dpc_capacity ||
            x.per_user_rate != y.per_user_rate || x.upper_bound != y.upper_bound ||
            x.epsilon_hat != y.epsilon_hat || x.discarded != y.discarded)
            return false;
        if (!(x.sum_rate_ci == y.sum_rate_ci || (std::isnan(x.sum_rate_ci) && std::isnan(y.sum_rate_ci))))
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("confidence intervals")
{
    const std::vector<double> constant(10, 3.5);
    auto ci = confidence_interval(constant);
    CHECK(ci.mean == 3.5);
    CHECK(ci.halfwidth == 0.0);

    const std::vector<double> pair = {0.0, 2.0};
    ci = confidence_interval(pair);
    CHECK(ci.mean == 1.0);
    CHECK(ci.halfwidth == doctest::Approx(1.96));

    RngStream rng(99);
    std::vector<double> draws(10000);
    for (auto &d : draws)
        d = rng.normal();
    ci = confidence_interval(draws);
    CHECK(std::abs(ci.mean) < 0.05);
    CHECK(ci.halfwidth == doctest::Approx(0.0196).epsilon(0.05));

    const std::vector<double> single = {1.0};
    try
    {
        confidence_interval(single);
        FAIL("expected degenerate interval");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::degenerate);
    }
}

TEST_CASE("parallel_for visits every index once")
{
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (const auto &h : hits)
        CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i) {
                                     if (i == 7)
                                         throw Error(ErrorKind::degenerate, "boom");
                                 }),
                    Error);
}

TEST_CASE("kolmogorov-smirnov distances")
{
    RngStream rng(5);
    std::vector<double> a(4000), b(4000), shifted(4000);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        a[i] = rng.normal();
        b[i] = rng.normal();
        shifted[i] = rng.normal() + 1.0;
    }
    CHECK(ks_distance_normal(a, 0.0, 1.0) < 0.03);
    CHECK(ks_distance_normal(shifted, 0.0, 1.0) > 0.3);
    CHECK(ks_distance_two_sample(a, b) < 0.04);
    CHECK(ks_distance_two_sample(a, shifted) > 0.3);
    const std::vector<double> tiny = {0.0};
    CHECK(ks_distance_normal(tiny, 0.0, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("substreams of different grid points are uncorrelated")
{
    const int trials = 10000;
    std::vector<double> x(trials), y(trials);
    for (int t = 0; t < trials; ++t)
    {
        x[t] = RngStream::derive(7, 0, t, 0).normal();
        y[t] = RngStream::derive(7, 1, t, 0).normal();
    }
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int t = 0; t < trials; ++t)
    {
        sx += x[t];
        sy += y[t];
        sxx += x[t] * x[t];
        syy += y[t] * y[t];
        sxy += x[t] * y[t];
    }
    const double n = trials;
    const double corr = (sxy / n - sx / n * sy / n) /
                        std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
    CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("single run is reproducible")
{
    Inputs in;
    ExperimentConfig c;
    c.trials = 1;
    c.root_seed = 3;
    const auto a = run_experiment(c, in.scenario, in.panel, in.budget);
    const auto b = run_experiment(c, in.scenario, in.panel, in.budget);
    REQUIRE(a.rows.size() == 1);
    CHECK(std::isnan(a.rows[0].value));
    CHECK(same(a, b));
    CHECK(a.rows[0].report.trials == 1);
}

TEST_CASE("N sweep rows follow the grid and capacity grows")
{
    Inputs in;
    ExperimentConfig c;
    c.trials = 30;
    c.root_seed = 11;
    c.sweep_variable = SweepVariable::num_elements;
    c.sweep_grid = {1e2, 1e4, 1e6};
    const auto r = run_experiment(c, in.scenario, in.panel, in.budget);
    REQUIRE(r.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(r.rows[i].value == c.sweep_grid[i]);
        CHECK(r.rows[i].num_elements == static_cast<std::uint64_t>(c.sweep_grid[i]));
    }
    CHECK(r.rows[1].report.dpc_capacity >= r.rows[0].report.dpc_capacity);
    CHECK(r.rows[2].report.dpc_capacity >= r.rows[1].report.dpc_capacity);
    CHECK(r.metadata.wall_seconds >= 0.0);
    CHECK(r.metadata.discarded_trials == 0);
    CHECK(!r.metadata.config_echo.empty());
}

TEST_CASE("worker count does not change results")
{
    Inputs in;
    ExperimentConfig c;
    c.trials = 40;
    c.root_seed = 19;
    c.sweep_variable = SweepVariable::power_dbm;
    c.sweep_grid = {30.0, 46.0};
    c.workers = 1;
    const auto a = run_experiment(c, in.scenario, in.panel, in.budget);
    c.workers = 8;
    const auto b = run_experiment(c, in.scenario, in.panel, in.budget);
    CHECK(same(a, b));
    CHECK(a.rows[1].report.sum_rate > a.rows[0].report.sum_rate);
    CHECK(a.rows[0].budget.transmit_power == doctest::Approx(1.0));
}

TEST_CASE("antenna and target sweeps")
{
    Inputs in;
    ExperimentConfig c;
    c.trials = 10;
    c.sweep_variable = SweepVariable::num_antennas;
    c.sweep_grid = {5, 10, 20};
    const auto r = run_experiment(c, in.scenario, in.panel, in.budget);
    CHECK(r.rows[0].report.epsilon_hat == 0.0);
    CHECK(r.rows[2].report.epsilon_hat > r.rows[1].report.epsilon_hat);

    c.sweep_variable = SweepVariable::target_ratio;
    c.sweep_grid = {0.1, 0.2};
    c.monte_carlo = false;
    const auto p = run_experiment(c, in.scenario, in.panel, in.budget);
    REQUIRE(p.rows[0].plan.has_value());
    REQUIRE(p.rows[0].plan->n_required.has_value());
    CHECK(*p.rows[1].plan->n_required > *p.rows[0].plan->n_required);
}

TEST_CASE("invalid grids are rejected before running")
{
    Inputs in;
    ExperimentConfig c;
    c.sweep_variable = SweepVariable::num_elements;
    CHECK_THROWS_AS(run_experiment(c, in.scenario, in.panel, in.budget), Error); // empty
    c.sweep_grid = {100.5};
    CHECK_THROWS_AS(run_experiment(c, in.scenario, in.panel, in.budget), Error);
    c.sweep_variable = SweepVariable::num_antennas;
    c.sweep_grid = {4};
    CHECK_THROWS_AS(run_experiment(c, in.scenario, in.panel, in.budget), Error);
    c.sweep_variable = SweepVariable::target_ratio;
    c.sweep_grid = {1.0};
    CHECK_THROWS_AS(run_experiment(c, in.scenario, in.panel, in.budget), Error);
    c.sweep_variable = SweepVariable::none;
    c.trials = 0;
    CHECK_THROWS_AS(run_experiment(c, in.scenario, in.panel, in.budget), Error);
}

TEST_CASE("water-filled runs use a valid allocation")
{
    Inputs in;
    const auto a = allocation_for(AllocationMode::waterfill, {1e-9, 1e-10, 1e-11, 1e-12, 1e-13},
                                  1.0, 10, 5, in.budget.transmit_power, in.budget.noise_power);
    double total = 0.0;
    for (double v : a)
        total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a[0] >= a[4]);
    CHECK(allocation_for(AllocationMode::uniform, {1, 2}, 1.0, 2, 2, 1.0, 1.0) ==
          uniform_power(2));
    CHECK(to_string(SweepVariable::target_ratio) == "eta");
}
