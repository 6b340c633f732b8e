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

#include "riscap/types.hpp"

#include <vector>

namespace riscap
{

inline constexpr double rank_tolerance = 1e-10;

struct LinkBudget
{
    double transmit_power = 1.0; // P, watts
    double noise_power = 1.0;    // sigma^2, watts
    std::vector<double> allocation; // Lambda_k, sums to one

    void validate(int num_users) const;
};

struct Precoder
{
    CMatrix W; // M x K, unit-norm columns
    CMatrix V; // M x K, G^H (G G^H)^{-1}
};

// Throws rank_deficient when the smallest singular value of G falls below
// rank_tolerance times the largest.
void require_full_row_rank(const CMatrix &G);

Precoder zf_precoder(const CMatrix &G);

// Per-user SNR from the precoded channel, |g_k w_k|^2 scaled by P Lambda_k / (K sigma^2).
std::vector<double> snr_direct(const CMatrix &G, const CMatrix &W, const LinkBudget &budget);

// Per-user SNR P Lambda_k / (K sigma^2 [(G G^H)^{-1}]_kk), solved against the K x K Gram matrix.
std::vector<double> snr_closed(const CMatrix &G, const LinkBudget &budget);

// Diagonal of (G G^H)^{-1}.
RVector gram_inverse_diagonal(const CMatrix &G);

// Water-filling over per-user effective gains, maximizing
// sum_k log2(1 + P Lambda_k g_k / (K sigma^2)) subject to sum Lambda_k = 1.
std::vector<double> waterfill(const std::vector<double> &effective_gains, double transmit_power,
                              double noise_power);

std::vector<double> uniform_power(int num_users);

} // namespace riscap
