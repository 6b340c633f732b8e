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

#include "riscap/channel.hpp"
#include "riscap/geometry.hpp"
#include "riscap/precoding.hpp"

#include <cstdint>
#include <vector>

namespace riscap
{

struct ChannelSynthesis
{
    SynthesisMode mode = SynthesisMode::clt_shortcut;
    FadingModel fading;
    ExactSynthesisOptions exact;
};

struct MonteCarloOptions
{
    int trials = 100;
    std::uint64_t root_seed = 0;
    std::uint64_t grid_index = 0;
    int workers = 1;
    ChannelSynthesis synthesis;
    bool keep_trials = false;
};

// Outcome of one channel draw. Rates in bits/s/Hz.
struct TrialOutcome
{
    std::vector<double> snr;      // ZF SNR per user
    std::vector<double> zf_rate;  // log2(1 + snr)
    std::vector<double> dpc_rate; // log2(1 + P Lambda_k [G G^H]_kk / (K sigma^2))
    int redraws = 0;
};

struct RateReport
{
    std::vector<double> per_user_rate;
    double sum_rate = 0.0;
    double sum_rate_ci = 0.0;
    double dpc_capacity = 0.0;
    double dpc_capacity_ci = 0.0;
    double upper_bound = 0.0;
    double capacity_limit = 0.0;
    double epsilon = 0.0;     // sum_rate / capacity_limit
    double epsilon_hat = 0.0; // closed-form lower bound of epsilon
    int trials = 0;
    int discarded = 0;
    std::vector<TrialOutcome> trial_outcomes; // filled when keep_trials is set
};

// Evaluates both rate expressions on one channel matrix.
TrialOutcome evaluate_channel(const CMatrix &G, const LinkBudget &budget);

// Monte Carlo over fresh channel realizations; fills per-user rates, sum rate
// and DPC capacity (with 95% half-widths) from the same draws. Trials whose
// channel is rank deficient are redrawn from a fresh substream and counted.
RateReport monte_carlo_rates(const Scenario &scenario, const RisPanel &panel,
                             const GainProfile &gains, const LinkBudget &budget,
                             const MonteCarloOptions &options);

RateReport sum_rate_mc(const Scenario &scenario, const RisPanel &panel, const GainProfile &gains,
                       const LinkBudget &budget, const MonteCarloOptions &options);
double dpc_capacity_mc(const Scenario &scenario, const RisPanel &panel, const GainProfile &gains,
                       const LinkBudget &budget, const MonteCarloOptions &options);

// Jensen bound: sum_k log2(1 + P Lambda_k / (K sigma^2) * aggregate_k * Gamma^2 * M).
double capacity_upper_bound(const GainProfile &gains, const LinkBudget &budget, int num_antennas,
                            int num_users, double reflection_amplitude);

// Per-user closed-form limits of the aggregate for every user of the scenario.
std::vector<double> asymptotic_limits(const Scenario &scenario);

// Capacity cap for an unbounded panel, using the closed-form aggregate limit.
double capacity_limit(const Scenario &scenario, const LinkBudget &budget, int num_antennas,
                      int num_users, double reflection_amplitude);

// Lower bound of the sum-rate to capacity-cap ratio with mu = M / K. The
// numerator takes the aggregate gains for the panel at hand.
double epsilon_hat(const Scenario &scenario, const LinkBudget &budget, int num_antennas,
                   int num_users, double reflection_amplitude,
                   const std::vector<double> &aggregates);

// Same ratio with explicit per-user limits in the denominator.
double epsilon_hat_ratio(const std::vector<double> &aggregates, const std::vector<double> &limits,
                         const LinkBudget &budget, double mu, double reflection_amplitude);

} // namespace riscap
