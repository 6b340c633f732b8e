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

#include "riscap/harness.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace riscap
{

// A key that may hold a list of values when it is the swept one.
struct GridValue
{
    std::vector<double> values;
    bool listed = false;

    bool operator==(const GridValue &) const = default;
};

struct RunConfig
{
    LayoutParams layout;

    GridValue num_elements;
    double element_width = 0.02;
    double element_height = 0.02;
    double reflection_amplitude = 1.0;
    std::string phase_mode = "zero"; // zero | random | explicit
    std::uint64_t phase_seed = 0;
    std::vector<double> phases;

    GridValue power_dbm;
    double noise_dbm = -96.0;
    std::string allocation = "uniform"; // uniform | waterfill

    GridValue num_antennas;
    double frequency_ghz = 5.9;
    double antenna_gain_db = 0.0;

    int trials = 100;
    std::uint64_t root_seed = 0;
    std::string sweep = "none"; // none | N | P | M | eta
    std::string synthesis = "clt";   // clt | exact
    std::string fading = "gaussian"; // gaussian | uniform_phase | bernoulli
    int workers = 1;

    bool has_plan = false;
    GridValue eta;
    std::string plan_method = "search"; // search | closed-form
    double search_cap = 1e10;

    std::vector<double> mu_list;

    bool operator==(const RunConfig &) const = default;

    Scenario scenario() const;
    // Scenario with M replaced.
    Scenario scenario(int num_antennas) const;
    RisPanel panel(std::uint64_t num_elements) const;
    LinkBudget budget() const;
    ExperimentConfig experiment() const;
    SweepVariable sweep_variable() const;
    // First value of a possibly listed key.
    std::uint64_t first_num_elements() const;
    int first_num_antennas() const;
};

RunConfig parse_config(const std::string &text, const std::string &source_name = "config");
RunConfig load_config(const std::string &path);
// TOML text that parses back to an equal RunConfig.
std::string echo_config(const RunConfig &config);

} // namespace riscap
