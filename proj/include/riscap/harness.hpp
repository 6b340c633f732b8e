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

#include "riscap/planner.hpp"
#include "riscap/rates.hpp"

#include <optional>
#include <string>
#include <vector>

namespace riscap
{

enum class SweepVariable
{
    none,
    num_elements, // N
    power_dbm,    // P in dBm
    num_antennas, // M
    target_ratio  // eta
};

enum class AllocationMode
{
    uniform,
    waterfill
};

struct ExperimentConfig
{
    int trials = 100;
    std::uint64_t root_seed = 0;
    SweepVariable sweep_variable = SweepVariable::none;
    std::vector<double> sweep_grid;
    int workers = 1;
    ChannelSynthesis synthesis;
    AllocationMode allocation = AllocationMode::uniform;
    bool monte_carlo = true; // false: closed-form columns only
    AggregateOptions aggregate;

    // Rejects bad grids before any trial runs.
    void validate(const Scenario &scenario) const;
};

struct SweepRow
{
    double value = 0.0; // grid value, NaN when nothing is swept
    std::uint64_t num_elements = 0;
    int num_antennas = 0;
    LinkBudget budget;
    GainProfile gains;
    RateReport report;
    std::optional<PlanResult> plan; // eta sweeps only
};

struct SweepMetadata
{
    std::string config_echo;
    double wall_seconds = 0.0;
    int discarded_trials = 0;
};

struct SweepResult
{
    std::vector<SweepRow> rows;
    SweepMetadata metadata;
};

// Effective per-user gains used to water-fill a whole run: the expected ZF
// gain aggregate * Gamma^2 * max(M - K, 1).
std::vector<double> allocation_for(AllocationMode mode, const std::vector<double> &aggregates,
                                   double reflection_amplitude, int num_antennas, int num_users,
                                   double transmit_power, double noise_power);

SweepResult run_experiment(const ExperimentConfig &config, const Scenario &scenario,
                           const RisPanel &panel, const LinkBudget &budget);

std::string to_string(SweepVariable variable);

} // namespace riscap
