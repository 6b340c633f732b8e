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

#pragma once

#include "riscap/geometry.hpp"
#include "riscap/precoding.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace riscap
{

enum class PlanMethod
{
    closed_form,
    search
};

struct PlanRequest
{
    double target_ratio = 0.75; // eta
    Scenario scenario;
    RisPanel panel; // element size and amplitude; the count is the unknown
    LinkBudget budget;
    std::uint64_t search_cap = 10'000'000'000ULL;
    AggregateOptions aggregate;

    void validate() const;
    double mu() const;
};

struct PanelShape
{
    double side_length = 0.0; // side of the square with the same area
    double width = 0.0;
    double height = 0.0;
    std::uint64_t rows = 0;
    std::uint64_t cols = 0;
};

struct PlanResult
{
    std::optional<std::uint64_t> n_required;
    PlanMethod method = PlanMethod::search;
    double epsilon_at_n = 0.0;
    std::vector<bool> high_snr_valid_per_user;
    bool high_snr_valid = false;
    double side_length = 0.0;
    bool feasible = false;
    bool capped = false;
    double epsilon_limit = 0.0;             // sup of epsilon_hat over N on the exact layout
    double epsilon_limit_closed_form = 0.0; // with the closed-form aggregate limits
};

// N from the high-SNR product form, given a per-element gain for every user.
PlanResult min_elements_closed_form(const PlanRequest &request,
                                    const std::vector<double> &per_element_gain);

// Closed form with the per-element gain taken at the count it returns: the
// smallest n whose closed-form count is at most n, bracketed upward from `start`.
PlanResult min_elements_closed_form_consistent(const PlanRequest &request,
                                               std::uint64_t start = 1'000'000);

// Smallest N with epsilon_hat(N) >= eta, by doubling then bisection on the
// exact-layout aggregate.
PlanResult min_elements_search(const PlanRequest &request);

// Raw high-SNR count (Prod_k X_k^eta / Y_k)^{1/K} before rounding, with
// X_k = (P/sigma^2) Lambda_k Gamma^2 mu limit_k and Y_k = (P/sigma^2) Lambda_k Gamma^2 gain_k (mu - 1).
double required_elements_high_snr(const std::vector<double> &numerator_terms,
                                  const std::vector<double> &denominator_coeffs, double eta);

// Ceiling of a raw count, at least one; values within round-off of an integer map to it.
std::uint64_t round_up_count(double raw);

// epsilon_hat for a panel of `n` elements.
double epsilon_hat_at(const PlanRequest &request, std::uint64_t n);

PanelShape panel_from_count(std::uint64_t n, double element_width, double element_height);

std::string to_string(PlanMethod method);

} // namespace riscap
