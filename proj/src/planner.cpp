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

#include "riscap/planner.hpp"
#include "riscap/error.hpp"
#include "riscap/rates.hpp"

#include <cmath>
#include <limits>

namespace riscap
{
namespace
{

std::vector<double> aggregates_at(const PlanRequest &request, std::uint64_t n)
{
    RisPanel panel = request.panel;
    panel.num_elements = n;
    panel.phases = PhaseAllZero{};
    return aggregate_gain(request.scenario, panel, request.aggregate).per_user_aggregate;
}

void fill_high_snr(const PlanRequest &request, const std::vector<double> &aggregates,
                   PlanResult &result)
{
    const auto limits = asymptotic_limits(request.scenario);
    const double mu = request.mu();
    const double K = request.scenario.num_users;
    const double g2 = request.panel.reflection_amplitude * request.panel.reflection_amplitude;
    const double snr = request.budget.transmit_power / request.budget.noise_power;
    result.high_snr_valid_per_user.clear();
    result.high_snr_valid = true;
    for (std::size_t k = 0; k < aggregates.size(); ++k)
    {
        const double c = snr * request.budget.allocation[k] * g2;
        const bool ok = c * aggregates[k] * (mu - 1.0) > 10.0 * K && c * mu * limits[k] > 10.0 * K;
        result.high_snr_valid_per_user.push_back(ok);
        result.high_snr_valid = result.high_snr_valid && ok;
    }
}

void finish(const PlanRequest &request, std::uint64_t n, PlanResult &result)
{
    const auto aggregates = aggregates_at(request, n);
    result.n_required = n;
    result.feasible = true;
    result.epsilon_at_n = epsilon_hat_ratio(aggregates, asymptotic_limits(request.scenario),
                                            request.budget, request.mu(),
                                            request.panel.reflection_amplitude);
    result.side_length =
        panel_from_count(n, request.panel.element_width, request.panel.element_height).side_length;
    fill_high_snr(request, aggregates, result);
}

void fill_limits(const PlanRequest &request, PlanResult &result, bool with_plane_limit)
{
    const auto limits = asymptotic_limits(request.scenario);
    const double mu = request.mu();
    if (mu <= 1.0)
        return; // both limits are zero
    result.epsilon_limit_closed_form = epsilon_hat_ratio(limits, limits, request.budget, mu,
                                                         request.panel.reflection_amplitude);
    if (with_plane_limit)
        result.epsilon_limit = epsilon_hat_ratio(plane_limit_gain(request.scenario), limits,
                                                 request.budget, mu,
                                                 request.panel.reflection_amplitude);
}

} // namespace

void PlanRequest::validate() const
{
    if (!(target_ratio > 0.0 && target_ratio < 1.0))
        throw Error(ErrorKind::invalid_argument, "plan: target ratio must lie in (0, 1)");
    if (search_cap < 1)
        throw Error(ErrorKind::invalid_argument, "plan: search cap must be at least 1");
    scenario.validate();
    RisPanel probe = panel;
    probe.num_elements = 1;
    probe.phases = PhaseAllZero{};
    probe.validate();
    budget.validate(scenario.num_users);
}

double PlanRequest::mu() const
{
    return static_cast<double>(scenario.num_antennas) / scenario.num_users;
}

double epsilon_hat_at(const PlanRequest &request, std::uint64_t n)
{
    return epsilon_hat_ratio(aggregates_at(request, n), asymptotic_limits(request.scenario),
                             request.budget, request.mu(), request.panel.reflection_amplitude);
}

double required_elements_high_snr(const std::vector<double> &numerator_terms,
                                  const std::vector<double> &denominator_coeffs, double eta)
{
    if (numerator_terms.size() != denominator_coeffs.size() || numerator_terms.empty())
        throw Error(ErrorKind::invalid_argument, "closed form: per-user vectors differ in length");
    double log_n = 0.0;
    for (std::size_t k = 0; k < numerator_terms.size(); ++k)
    {
        if (!(numerator_terms[k] > 0.0) || !(denominator_coeffs[k] > 0.0))
            return std::numeric_limits<double>::infinity();
        log_n += eta * std::log(numerator_terms[k]) - std::log(denominator_coeffs[k]);
    }
    return std::exp(log_n / static_cast<double>(numerator_terms.size()));
}

std::uint64_t round_up_count(double raw)
{
    if (!(raw <= 1.0))
    {
        // exp/log round-off must not push an exact integer to the next count
        const double nearest = std::round(raw);
        const double n = std::abs(raw - nearest) <= 1e-9 * nearest ? nearest : std::ceil(raw);
        return static_cast<std::uint64_t>(n);
    }
    return 1;
}

PlanResult min_elements_closed_form(const PlanRequest &request,
                                    const std::vector<double> &per_element_gain)
{
    request.validate();
    PlanResult result;
    result.method = PlanMethod::closed_form;
    fill_limits(request, result, false);
    const double mu = request.mu();
    if (mu <= 1.0)
        return result;
    const auto K = static_cast<std::size_t>(request.scenario.num_users);
    if (per_element_gain.size() != K)
        throw Error(ErrorKind::invalid_argument, "closed form: one per-element gain per user");

    const auto limits = asymptotic_limits(request.scenario);
    const double g2 = request.panel.reflection_amplitude * request.panel.reflection_amplitude;
    const double snr = request.budget.transmit_power / request.budget.noise_power;
    std::vector<double> numerator(K);
    std::vector<double> denominator(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        const double c = snr * request.budget.allocation[k] * g2;
        numerator[k] = c * mu * limits[k];
        denominator[k] = c * per_element_gain[k] * (mu - 1.0);
    }
    const double raw = required_elements_high_snr(numerator, denominator, request.target_ratio);
    if (!std::isfinite(raw) || raw > static_cast<double>(request.search_cap))
    {
        result.capped = std::isfinite(raw);
        return result;
    }
    finish(request, round_up_count(raw), result);
    return result;
}

PlanResult min_elements_closed_form_consistent(const PlanRequest &request, std::uint64_t start)
{
    request.validate();
    if (request.mu() <= 1.0)
        return min_elements_closed_form(request,
                                        std::vector<double>(request.scenario.num_users, 1.0));
    // Closed form evaluated with the per-element gain of an n-element panel.
    auto closed_at = [&request](std::uint64_t n) {
        std::vector<double> per_element = aggregates_at(request, n);
        for (double &g : per_element)
            g /= static_cast<double>(n);
        return min_elements_closed_form(request, per_element);
    };
    // The proposed count over n shrinks as n grows, so the smallest
    // self-consistent n is found by doubling then bisection.
    auto settles = [&](std::uint64_t n) {
        const PlanResult r = closed_at(n);
        return r.n_required && *r.n_required <= n;
    };
    std::uint64_t lo = 0;
    std::uint64_t hi = std::max<std::uint64_t>(start, 1);
    while (!settles(hi))
    {
        lo = hi;
        if (hi >= request.search_cap)
        {
            PlanResult capped = closed_at(hi);
            capped.n_required.reset();
            capped.capped = true;
            return capped;
        }
        hi = hi > request.search_cap / 2 ? request.search_cap : 2 * hi;
    }
    if (lo == 0)
    {
        lo = hi / 2;
        while (lo > 0 && settles(lo))
        {
            hi = lo;
            lo /= 2;
        }
    }
    while (hi - lo > 1)
    {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        (settles(mid) ? hi : lo) = mid;
    }
    return closed_at(hi);
}

PlanResult min_elements_search(const PlanRequest &request)
{
    request.validate();
    PlanResult result;
    result.method = PlanMethod::search;
    if (request.mu() <= 1.0)
        return result; // epsilon_hat is identically zero
    fill_limits(request, result, true);
    if (request.target_ratio >= result.epsilon_limit)
        return result;

    const double eta = request.target_ratio;
    std::uint64_t lo = 0; // epsilon_hat(0) = 0 < eta
    std::uint64_t hi = 1;
    while (epsilon_hat_at(request, hi) < eta)
    {
        lo = hi;
        if (hi >= request.search_cap)
        {
            result.capped = true;
            return result;
        }
        hi = hi > request.search_cap / 2 ? request.search_cap : 2 * hi;
    }
    while (hi - lo > 1)
    {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (epsilon_hat_at(request, mid) >= eta)
            hi = mid;
        else
            lo = mid;
    }
    finish(request, hi, result);
    return result;
}

PanelShape panel_from_count(std::uint64_t n, double element_width, double element_height)
{
    if (n < 1)
        throw Error(ErrorKind::invalid_argument, "panel shape: N must be at least 1");
    const auto grid = PanelGrid::for_count(n, element_width, element_height);
    PanelShape shape;
    shape.side_length = std::sqrt(static_cast<double>(n) * element_width * element_height);
    shape.cols = grid.cols;
    shape.rows = grid.rows();
    shape.width = static_cast<double>(grid.cols) * element_width;
    shape.height = static_cast<double>(grid.rows()) * element_height;
    return shape;
}

std::string to_string(PlanMethod method)
{
    return method == PlanMethod::closed_form ? "closed-form" : "search";
}

} // namespace riscap
