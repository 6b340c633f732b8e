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
#include "riscap/commands.hpp"
#include "riscap/error.hpp"
#include "riscap/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>

struct riscap_config
{
    riscap::RunConfig value;
};

struct riscap_table
{
    riscap::Table value;
};

namespace
{

thread_local std::string last_error;

riscap_status fail(riscap_status status, const std::string &message)
{
    last_error = message;
    return status;
}

riscap_status status_of(const riscap::Error &e)
{
    using riscap::ErrorKind;
    if (e.numerical())
        return RISCAP_NUMERICAL_ERROR;
    switch (e.kind())
    {
    case ErrorKind::invalid_argument:
        return RISCAP_INVALID_ARGUMENT;
    default:
        return RISCAP_CONFIG_ERROR;
    }
}

template <class F> riscap_status guard(F &&body)
{
    try
    {
        last_error.clear();
        return body();
    }
    catch (const riscap::Error &e)
    {
        return fail(status_of(e), e.what());
    }
    catch (const std::bad_alloc &)
    {
        return fail(RISCAP_INTERNAL_ERROR, "out of memory");
    }
    catch (const std::exception &e)
    {
        return fail(RISCAP_INTERNAL_ERROR, e.what());
    }
    catch (...)
    {
        return fail(RISCAP_INTERNAL_ERROR, "unknown failure");
    }
}

char *copy_string(const std::string &s)
{
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

riscap::Vec3 vec(const double *p) { return riscap::Vec3(p[0], p[1], p[2]); }

template <class Command>
riscap_status run_table(const riscap_config *config, riscap_table **out, Command &&command)
{
    if (!config || !out)
        return fail(RISCAP_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        *out = new riscap_table{command(config->value)};
        return RISCAP_OK;
    });
}

} // namespace

extern "C" {

const char *riscap_last_error(void) { return last_error.c_str(); }

const char *riscap_version(void) { return "1.0.0"; }

void riscap_string_free(char *text) { std::free(text); }

riscap_status riscap_config_load(const char *path, riscap_config **out)
{
    if (!path || !out)
        return fail(RISCAP_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        *out = new riscap_config{riscap::load_config(path)};
        return RISCAP_OK;
    });
}

riscap_status riscap_config_parse(const char *text, riscap_config **out)
{
    if (!text || !out)
        return fail(RISCAP_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        *out = new riscap_config{riscap::parse_config(text)};
        return RISCAP_OK;
    });
}

void riscap_config_free(riscap_config *config) { delete config; }

riscap_status riscap_config_set_trials(riscap_config *config, int trials)
{
    if (!config || trials < 1)
        return fail(RISCAP_INVALID_ARGUMENT, "trials must be at least 1");
    config->value.trials = trials;
    return RISCAP_OK;
}

riscap_status riscap_config_set_seed(riscap_config *config, uint64_t seed)
{
    if (!config)
        return fail(RISCAP_INVALID_ARGUMENT, "null argument");
    config->value.root_seed = seed;
    return RISCAP_OK;
}

riscap_status riscap_config_set_workers(riscap_config *config, int workers)
{
    if (!config || workers < 1)
        return fail(RISCAP_INVALID_ARGUMENT, "workers must be at least 1");
    config->value.workers = workers;
    return RISCAP_OK;
}

riscap_status riscap_config_echo(const riscap_config *config, char **text)
{
    if (!config || !text)
        return fail(RISCAP_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        *text = copy_string(riscap::echo_config(config->value));
        return RISCAP_OK;
    });
}

riscap_status riscap_simulate(const riscap_config *config, riscap_table **out)
{
    return run_table(config, out, riscap::cmd_simulate);
}

riscap_status riscap_bounds(const riscap_config *config, riscap_table **out)
{
    return run_table(config, out, riscap::cmd_bounds);
}

riscap_status riscap_plan(const riscap_config *config, double eta, const char *method, double mu,
                          riscap_table **out)
{
    riscap::PlanOptions options;
    if (!std::isnan(eta))
        options.eta = eta;
    if (method)
        options.method = std::string(method);
    if (mu > 0.0)
        options.mu = mu;
    return run_table(config, out,
                     [&](const riscap::RunConfig &c) { return riscap::cmd_plan(c, options); });
}

riscap_status riscap_sweep_ratio(const riscap_config *config, const double *mu, size_t mu_count,
                                 riscap_table **out)
{
    if (mu_count > 0 && !mu)
        return fail(RISCAP_INVALID_ARGUMENT, "null mu list");
    return run_table(config, out, [&](const riscap::RunConfig &c) {
        const std::vector<double> list =
            mu_count > 0 ? std::vector<double>(mu, mu + mu_count) : c.mu_list;
        return riscap::cmd_sweep_ratio(c, list);
    });
}

riscap_status riscap_validate(char **report)
{
    if (!report)
        return fail(RISCAP_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        const auto checks = riscap::run_validation_suite();
        *report = copy_string(riscap::format_validation_report(checks));
        if (!riscap::all_passed(checks))
            return fail(RISCAP_VALIDATION_FAILED, "validation suite reported failures");
        return RISCAP_OK;
    });
}

size_t riscap_table_rows(const riscap_table *table) { return table ? table->value.rows.size() : 0; }

size_t riscap_table_cols(const riscap_table *table)
{
    return table ? table->value.header.size() : 0;
}

const char *riscap_table_header(const riscap_table *table, size_t col)
{
    if (!table || col >= table->value.header.size())
        return nullptr;
    return table->value.header[col].c_str();
}

const char *riscap_table_cell(const riscap_table *table, size_t row, size_t col)
{
    if (!table || row >= table->value.rows.size() || col >= table->value.rows[row].size())
        return nullptr;
    return table->value.rows[row][col].c_str();
}

riscap_status riscap_table_to_csv(const riscap_table *table, char **csv)
{
    if (!table || !csv)
        return fail(RISCAP_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        *csv = copy_string(table->value.to_csv());
        return RISCAP_OK;
    });
}

riscap_status riscap_table_write(const riscap_table *table, const char *path)
{
    if (!table || !path)
        return fail(RISCAP_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        const std::string csv = table->value.to_csv();
        out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
        if (!out)
            return fail(RISCAP_IO_ERROR, std::string("cannot write ") + path);
        return RISCAP_OK;
    });
}

void riscap_table_free(riscap_table *table) { delete table; }

double riscap_dbm_to_watts(double dbm) { return riscap::dbm_to_watts(dbm); }

riscap_status riscap_asymptotic_gain(double z0, double zk, double wavelength, double antenna_gain,
                                     double *out)
{
    if (!out)
        return fail(RISCAP_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        *out = riscap::asymptotic_gain(z0, zk, wavelength, antenna_gain);
        return RISCAP_OK;
    });
}

riscap_status riscap_path_gain(const double element[3], const double bs[3], const double user[3],
                               const double normal[3], double element_width,
                               double element_height, double wavelength, double antenna_gain,
                               double *out)
{
    if (!element || !bs || !user || !normal || !out)
        return fail(RISCAP_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        *out = riscap::path_gain(vec(element), vec(bs), vec(user), vec(normal), element_width,
                                 element_height, wavelength, antenna_gain);
        return RISCAP_OK;
    });
}

riscap_status riscap_panel_side_length(uint64_t num_elements, double element_width,
                                       double element_height, double *out)
{
    if (!out)
        return fail(RISCAP_INVALID_ARGUMENT, "null argument");
    return guard([&] {
        *out = riscap::panel_from_count(num_elements, element_width, element_height).side_length;
        return RISCAP_OK;
    });
}

riscap_status riscap_zf_snr(const double *g_interleaved, int num_users, int num_antennas,
                            double transmit_power, double noise_power, const double *allocation,
                            double *snr_out)
{
    if (!g_interleaved || !allocation || !snr_out || num_users < 1 || num_antennas < 1)
        return fail(RISCAP_INVALID_ARGUMENT, "invalid argument");
    return guard([&] {
        riscap::CMatrix G(num_users, num_antennas);
        for (int k = 0; k < num_users; ++k)
            for (int m = 0; m < num_antennas; ++m)
            {
                const std::size_t i = 2 * (static_cast<std::size_t>(k) * num_antennas + m);
                G(k, m) = riscap::cplx(g_interleaved[i], g_interleaved[i + 1]);
            }
        riscap::LinkBudget budget;
        budget.transmit_power = transmit_power;
        budget.noise_power = noise_power;
        budget.allocation.assign(allocation, allocation + num_users);
        riscap::require_full_row_rank(G);
        const auto snr = riscap::snr_closed(G, budget);
        std::copy(snr.begin(), snr.end(), snr_out);
        return RISCAP_OK;
    });
}

riscap_status riscap_waterfill(const double *gains, size_t count, double transmit_power,
                               double noise_power, double *allocation_out)
{
    if (!gains || !allocation_out || count == 0)
        return fail(RISCAP_INVALID_ARGUMENT, "invalid argument");
    return guard([&] {
        const auto a =
            riscap::waterfill(std::vector<double>(gains, gains + count), transmit_power, noise_power);
        std::copy(a.begin(), a.end(), allocation_out);
        return RISCAP_OK;
    });
}

} // extern "C"
