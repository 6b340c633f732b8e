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

#include "riscap/config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace riscap
{

// Fixed-schema result table. Cells are already formatted.
struct Table
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const;
};

// Nine significant digits.
std::string format_number(double value);

// N, C_mc, C_ci, upper_bound, C_limit, R_mc, R_ci, epsilon
Table cmd_simulate(const RunConfig &config);

// N, k, z0_m, zk_m, beta_bar_N, beta_tilde, snr_upper, upper_bound_term,
// snr_limit, limit_term; one row per user plus a "total" row per N.
Table cmd_bounds(const RunConfig &config);

struct PlanOptions
{
    std::optional<double> eta;
    std::optional<std::string> method;
    std::optional<double> mu;
};

// eta, mu, N_required, side_length_m, epsilon_at_N, method, high_snr_valid, feasible
Table cmd_plan(const RunConfig &config, const PlanOptions &options = {});

// N, eps_mu_<mu>...
Table cmd_sweep_ratio(const RunConfig &config, const std::vector<double> &mu_list);

} // namespace riscap
