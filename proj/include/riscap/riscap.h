/*
 * SPDX-License-Identifier: Apache-2.0
 *
 * riscap - dimensioning toolkit for RIS-assisted multi-user MISO downlinks
 * Copyright (C) 2026 The riscap authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RISCAP_H
#define RISCAP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(RISCAP_BUILDING)
#define RISCAP_API __declspec(dllexport)
#else
#define RISCAP_API __declspec(dllimport)
#endif
#else
#define RISCAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. The command-line tool maps them to exit codes 0/1/2/3. */
typedef enum riscap_status
{
    RISCAP_OK = 0,
    RISCAP_VALIDATION_FAILED = 1,
    RISCAP_CONFIG_ERROR = 2,
    RISCAP_NUMERICAL_ERROR = 3,
    RISCAP_INVALID_ARGUMENT = 4,
    RISCAP_IO_ERROR = 5,
    RISCAP_INTERNAL_ERROR = 6
} riscap_status;

typedef struct riscap_config riscap_config;
typedef struct riscap_table riscap_table;

/* Message of the last failing call on this thread; empty after success. */
RISCAP_API const char *riscap_last_error(void);
RISCAP_API const char *riscap_version(void);

/* Strings returned through char** are owned by the caller. */
RISCAP_API void riscap_string_free(char *text);

/* ---- configuration ---- */
RISCAP_API riscap_status riscap_config_load(const char *path, riscap_config **out);
RISCAP_API riscap_status riscap_config_parse(const char *text, riscap_config **out);
RISCAP_API void riscap_config_free(riscap_config *config);
RISCAP_API riscap_status riscap_config_set_trials(riscap_config *config, int trials);
RISCAP_API riscap_status riscap_config_set_seed(riscap_config *config, uint64_t seed);
RISCAP_API riscap_status riscap_config_set_workers(riscap_config *config, int workers);
RISCAP_API riscap_status riscap_config_echo(const riscap_config *config, char **text);

/* ---- commands; every one produces a table ---- */
RISCAP_API riscap_status riscap_simulate(const riscap_config *config, riscap_table **out);
RISCAP_API riscap_status riscap_bounds(const riscap_config *config, riscap_table **out);
/* eta: NAN takes the config value. method: NULL takes the config value.
   mu: values <= 0 keep the configured M. */
RISCAP_API riscap_status riscap_plan(const riscap_config *config, double eta,
                                     const char *method, double mu, riscap_table **out);
/* mu_count 0 takes the config list. */
RISCAP_API riscap_status riscap_sweep_ratio(const riscap_config *config, const double *mu,
                                            size_t mu_count, riscap_table **out);
/* Runs the self-check suite. Returns RISCAP_VALIDATION_FAILED when a check fails;
   the report is filled in both cases. */
RISCAP_API riscap_status riscap_validate(char **report);

/* ---- tables ---- */
RISCAP_API size_t riscap_table_rows(const riscap_table *table);
RISCAP_API size_t riscap_table_cols(const riscap_table *table);
RISCAP_API const char *riscap_table_header(const riscap_table *table, size_t col);
RISCAP_API const char *riscap_table_cell(const riscap_table *table, size_t row, size_t col);
RISCAP_API riscap_status riscap_table_to_csv(const riscap_table *table, char **csv);
RISCAP_API riscap_status riscap_table_write(const riscap_table *table, const char *path);
RISCAP_API void riscap_table_free(riscap_table *table);

/* ---- numeric primitives ---- */
RISCAP_API double riscap_dbm_to_watts(double dbm);
RISCAP_API riscap_status riscap_asymptotic_gain(double z0, double zk, double wavelength,
                                                double antenna_gain, double *out);
RISCAP_API riscap_status riscap_path_gain(const double element[3], const double bs[3],
                                          const double user[3], const double normal[3],
                                          double element_width, double element_height,
                                          double wavelength, double antenna_gain, double *out);
RISCAP_API riscap_status riscap_panel_side_length(uint64_t num_elements, double element_width,
                                                  double element_height, double *out);
/* G is K x M, row-major, interleaved real/imaginary parts (2*K*M doubles). */
RISCAP_API riscap_status riscap_zf_snr(const double *g_interleaved, int num_users,
                                       int num_antennas, double transmit_power,
                                       double noise_power, const double *allocation,
                                       double *snr_out);
RISCAP_API riscap_status riscap_waterfill(const double *gains, size_t count,
                                          double transmit_power, double noise_power,
                                          double *allocation_out);

#ifdef __cplusplus
}
#endif

#endif
