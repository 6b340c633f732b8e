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

#include <cstddef>
#include <functional>
#include <span>

namespace riscap
{

struct ConfidenceInterval
{
    double mean = 0.0;
    double halfwidth = 0.0; // 95%, normal approximation
};

// mean +- 1.96 * standard error. Needs at least two samples.
ConfidenceInterval confidence_interval(std::span<const double> samples);

// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
// visited exactly once; callers write results by index.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)> &body);

// Kolmogorov-Smirnov distance of the samples against a normal law.
double ks_distance_normal(std::span<const double> samples, double mean, double stddev);

// Two-sample Kolmogorov-Smirnov distance.
double ks_distance_two_sample(std::span<const double> a, std::span<const double> b);

} // namespace riscap
