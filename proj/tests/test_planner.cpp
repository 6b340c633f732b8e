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

#include "oracles.hpp"
#include "riscap/error.hpp"
#include "riscap/planner.hpp"
#include "riscap/rates.hpp"

#include <cmath>

using namespace riscap;

namespace
{

PlanRequest reference_request(int M, double eta)
{
    PlanRequest r;
    r.target_ratio = eta;
    r.scenario = build_layout(LayoutParams{}, 5.9e9, 1.0, M, 5);
    r.budget.transmit_power = dbm_to_watts(46.0);
    r.budget.noise_power = dbm_to_watts(-96.0);
    r.budget.allocation = uniform_power(5);
    return r;
}

} // namespace

TEST_CASE("high-snr count arithmetic")
{
    const double raw = required_elements_high_snr({std::ldexp(1.0, 20)}, {1.0}, 0.75);
    CHECK(raw == doctest::Approx(32768.0).epsilon(1e-12));
    CHECK(round_up_count(raw) == 32768);
    CHECK(round_up_count(32768.4) == 32769);
    CHECK(round_up_count(0.3) == 1);
    CHECK(round_up_count(1e-9) == 1);
    CHECK(round_up_count(required_elements_high_snr({1e6}, {2.0}, 1e-9)) == 1);
    CHECK(std::isinf(required_elements_high_snr({1e6}, {0.0}, 0.5)));
    CHECK_THROWS_AS(required_elements_high_snr({1.0, 2.0}, {1.0}, 0.5), Error);
}

TEST_CASE("closed form with explicit per-element gains")
{
    PlanRequest r = reference_request(100, 0.75);
    const auto limits = asymptotic_limits(r.scenario);
    std::vector<double> per_element;
    for (double l : limits)
        per_element.push_back(l / 5e7);
    const auto plan = min_elements_closed_form(r, per_element);
    REQUIRE(plan.n_required);
    CHECK(plan.method == PlanMethod::closed_form);
    // independent product form
    const double snr = r.budget.transmit_power / r.budget.noise_power;
    double log_n = 0.0;
    for (int k = 0; k < 5; ++k)
    {
        const double c = snr * 0.2;
        log_n += 0.75 * std::log(c * 20.0 * limits[k]) - std::log(c * per_element[k] * 19.0);
    }
    CHECK(static_cast<double>(*plan.n_required) ==
          doctest::Approx(std::ceil(std::exp(log_n / 5.0))).epsilon(1e-9));
}

TEST_CASE("closed form at the reference operating point")
{
    const auto plan = min_elements_closed_form_consistent(reference_request(100, 0.75));
    REQUIRE(plan.n_required);
    CHECK(*plan.n_required >= 800'000);
    CHECK(*plan.n_required <= 80'000'000);
    CHECK(plan.high_snr_valid);
}

TEST_CASE("search certificate")
{
    PlanRequest r = reference_request(100, 0.75);
    const auto plan = min_elements_search(r);
    REQUIRE(plan.n_required);
    const std::uint64_t n = *plan.n_required;
    CHECK(n >= 1'000'000);
    CHECK(n <= 100'000'000);
    CHECK(epsilon_hat_at(r, n) >= 0.75);
    CHECK(epsilon_hat_at(r, n - 1) < 0.75);
    CHECK(plan.epsilon_at_n == epsilon_hat_at(r, n));
    CHECK(plan.side_length >= 20.0);
    CHECK(plan.side_length <= 200.0);
    CHECK(plan.feasible);
    CHECK(plan.epsilon_limit > 0.75);

    // more antennas need fewer elements
    const auto fewer = min_elements_search(reference_request(25, 0.75));
    REQUIRE(fewer.n_required);
    CHECK(*fewer.n_required > n);
}

TEST_CASE("infeasible targets")
{
    auto plan = min_elements_search(reference_request(5, 0.75));
    CHECK_FALSE(plan.feasible);
    CHECK_FALSE(plan.n_required);
    CHECK(plan.epsilon_limit == 0.0);

    PlanRequest r = reference_request(10, 0.999);
    plan = min_elements_search(r);
    CHECK_FALSE(plan.feasible);
    CHECK(plan.epsilon_limit < 0.999);
    CHECK(plan.epsilon_limit > 0.0);
    CHECK(plan.epsilon_limit_closed_form > 0.0);

    r = reference_request(100, 0.75);
    r.search_cap = 1000;
    plan = min_elements_search(r);
    CHECK(plan.capped);
    CHECK_FALSE(plan.n_required);

    CHECK_THROWS_AS(min_elements_search(reference_request(10, 1.5)), Error);
    CHECK_THROWS_AS(min_elements_search(reference_request(10, 0.0)), Error);
}

TEST_CASE("panel shape")
{
    CHECK(panel_from_count(8'000'000, 0.02, 0.02).side_length ==
          doctest::Approx(56.5685).epsilon(1e-5));
    CHECK(panel_from_count(1, 0.02, 0.02).side_length == doctest::Approx(0.02));
    const auto s = panel_from_count(10'000, 0.02, 0.02);
    CHECK(s.side_length == doctest::Approx(2.0));
    CHECK(s.rows == 100);
    CHECK(s.cols == 100);
    CHECK(s.width == doctest::Approx(2.0));
    CHECK_THROWS_AS(panel_from_count(0, 0.02, 0.02), Error);
    CHECK(to_string(PlanMethod::closed_form) == "closed-form");
}
