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

// Nested adaptive Gauss-Kronrod integration over rectangles, split at
// caller-supplied breakpoints so peaked integrands are resolved.

#include "riscap/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace riscap::detail
{

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0;
};

inline std::vector<double> split_points(double lo, double hi, std::vector<double> breaks)
{
    std::vector<double> pts{lo};
    std::sort(breaks.begin(), breaks.end());
    for (double b : breaks)
        if (b > lo && b < hi && std::isfinite(b) && b > pts.back())
            pts.push_back(b);
    pts.push_back(hi);
    return pts;
}

template <class F>
QuadratureResult integrate_segments(F &&f, double lo, double hi, const std::vector<double> &breaks,
                                    double tolerance, unsigned max_depth)
{
    using boost::math::quadrature::gauss_kronrod;
    QuadratureResult out;
    const auto pts = split_points(lo, hi, breaks);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    {
        double err = 0.0;
        out.value += gauss_kronrod<double, 31>::integrate(f, pts[i], pts[i + 1], max_depth,
                                                          tolerance, &err);
        out.error += err;
    }
    return out;
}

// Integral of f(s, t) over [s_lo, s_hi] x [t_lo, t_hi]; bounds may be infinite.
template <class F>
QuadratureResult integrate_rectangle(F &&f, double s_lo, double s_hi, double t_lo, double t_hi,
                                     const std::vector<double> &s_breaks,
                                     const std::vector<double> &t_breaks,
                                     double tolerance = 1e-10)
{
    if (!(s_hi > s_lo) || !(t_hi > t_lo))
        return {};
    auto inner = [&](double s) {
        auto g = [&](double t) { return f(s, t); };
        return integrate_segments(g, t_lo, t_hi, t_breaks, tolerance * 0.1, 18).value;
    };
    return integrate_segments(inner, s_lo, s_hi, s_breaks, tolerance, 18);
}

inline void require_converged(const QuadratureResult &r, double relative, const char *what)
{
    if (!std::isfinite(r.value) || r.error > relative * std::abs(r.value) + 1e-300)
        throw Error(ErrorKind::non_convergence,
                    std::string(what) + ": quadrature stalled (estimate " + std::to_string(r.value) +
                        ", error " + std::to_string(r.error) + ")");
}

} // namespace riscap::detail
