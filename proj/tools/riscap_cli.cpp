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

#include "riscap/riscap.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <string>
#include <vector>

namespace
{

int exit_code(riscap_status status)
{
    switch (status)
    {
    case RISCAP_OK:
        return 0;
    case RISCAP_VALIDATION_FAILED:
        return 1;
    case RISCAP_CONFIG_ERROR:
    case RISCAP_INVALID_ARGUMENT:
    case RISCAP_IO_ERROR:
        return 2;
    default:
        return 3;
    }
}

int report(riscap_status status)
{
    if (status != RISCAP_OK)
        std::cerr << "riscap: " << riscap_last_error() << "\n";
    return exit_code(status);
}

struct Options
{
    std::string config;
    std::string out;
    double eta = NAN;
    std::string method;
    std::vector<double> mu_list;
    int trials = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 0;
};

int emit(riscap_table *table, const std::string &out)
{
    riscap_status status = RISCAP_OK;
    if (out.empty())
    {
        char *csv = nullptr;
        status = riscap_table_to_csv(table, &csv);
        if (status == RISCAP_OK)
        {
            std::fwrite(csv, 1, std::strlen(csv), stdout);
            std::fflush(stdout);
        }
        riscap_string_free(csv);
    }
    else
    {
        status = riscap_table_write(table, out.c_str());
    }
    riscap_table_free(table);
    return report(status);
}

int run(const std::string &command, const Options &o)
{
    if (command == "validate")
    {
        char *text = nullptr;
        const riscap_status status = riscap_validate(&text);
        if (text)
            std::cout << text;
        riscap_string_free(text);
        return report(status);
    }

    riscap_config *config = nullptr;
    riscap_status status = riscap_config_load(o.config.c_str(), &config);
    if (status != RISCAP_OK)
        return report(status);
    if (o.trials > 0)
        status = riscap_config_set_trials(config, o.trials);
    if (status == RISCAP_OK && o.seed_set)
        status = riscap_config_set_seed(config, o.seed);
    if (status == RISCAP_OK && o.workers > 0)
        status = riscap_config_set_workers(config, o.workers);

    riscap_table *table = nullptr;
    if (status == RISCAP_OK)
    {
        if (command == "simulate")
            status = riscap_simulate(config, &table);
        else if (command == "bounds")
            status = riscap_bounds(config, &table);
        else if (command == "plan")
        {
            const double mu = o.mu_list.size() == 1 ? o.mu_list.front() : 0.0;
            status = riscap_plan(config, o.eta, o.method.empty() ? nullptr : o.method.c_str(), mu,
                                 &table);
        }
        else
            status = riscap_sweep_ratio(config, o.mu_list.data(), o.mu_list.size(), &table);
    }
    riscap_config_free(config);
    if (status != RISCAP_OK)
        return report(status);
    return emit(table, o.out);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"riscap: dimensioning toolkit for RIS-assisted multi-user MISO downlinks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(riscap_version()));
    Options o;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", o.config, "configuration file")->required();
        sub->add_option("--out", o.out, "write CSV here instead of standard output");
        sub->add_option("--trials", o.trials, "override experiment.trials")
            ->check(CLI::PositiveNumber);
        sub->add_option_function<std::uint64_t>(
            "--seed",
            [&](const std::uint64_t &s) {
                o.seed = s;
                o.seed_set = true;
            },
            "override experiment.root_seed");
        sub->add_option("--workers", o.workers, "override experiment.workers")
            ->check(CLI::PositiveNumber);
    };

    CLI::App *simulate = app.add_subcommand("simulate", "Monte Carlo capacity and ZF sum rate per N");
    add_common(simulate);
    CLI::App *bounds = app.add_subcommand("bounds", "closed-form bound terms per user");
    add_common(bounds);
    CLI::App *plan = app.add_subcommand("plan", "minimum element count for a target ratio");
    add_common(plan);
    plan->add_option("--eta", o.eta, "target ratio in (0, 1)");
    plan->add_option("--method", o.method, "search or closed-form")
        ->check(CLI::IsMember({"search", "closed-form"}));
    plan->add_option("--mu-list", o.mu_list, "single mu = M/K overriding system.M")
        ->delimiter(',')
        ->expected(1);
    CLI::App *ratio = app.add_subcommand("sweep-ratio", "epsilon_hat versus N for several mu");
    add_common(ratio);
    ratio->add_option("--mu-list", o.mu_list, "comma-separated mu values")->delimiter(',');
    app.add_subcommand("validate", "run the self-check suite");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return run(app.get_subcommands().front()->get_name(), o);
}
