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

#include "riscap/stats.hpp"
#include "riscap/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace riscap
{

ConfidenceInterval confidence_interval(std::span<const double> samples)
{
    if (samples.size() < 2)
        throw Error(ErrorKind::degenerate, "confidence interval: needs at least two samples");
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double x : samples)
        mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : samples)
        ss += (x - mean) * (x - mean);
    const double stderr_ = std::sqrt(ss / (n - 1.0) / n);
    return {mean, 1.96 * stderr_};
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)> &body)
{
    const std::size_t threads =
        std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
    if (threads <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++)
        {
            try
            {
                body(i);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto &th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

double ks_distance_normal(std::span<const double> samples, double mean, double stddev)
{
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        const double cdf = 0.5 * std::erfc(-(x[i] - mean) / (stddev * std::sqrt(2.0)));
        d = std::max({d, cdf - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - cdf});
    }
    return d;
}

double ks_distance_two_sample(std::span<const double> a, std::span<const double> b)
{
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size())
    {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v)
            ++i;
        while (j < y.size() && y[j] <= v)
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / x.size() - static_cast<double>(j) / y.size()));
    }
    return d;
}

} // namespace riscap
