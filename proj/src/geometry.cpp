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

#include "riscap/geometry.hpp"
#include "riscap/channel.hpp"
#include "riscap/error.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace riscap
{
namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

// Constant of the per-element gain: 64 pi^3.
constexpr double gain_denominator = 64.0 * pi * pi * pi;

// Neumaier-compensated running sum; keeps billion-term panel sums deterministic and accurate.
struct CompensatedSum
{
    double sum = 0.0;
    double carry = 0.0;
    void add(double x)
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

std::uint64_t ceil_sqrt(std::uint64_t n)
{
    auto c = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (c * c < n)
        ++c;
    while (c > 1 && (c - 1) * (c - 1) >= n)
        --c;
    return std::max<std::uint64_t>(c, 1);
}

} // namespace

// ---------------------------------------------------------------- Scenario

double Scenario::bs_plane_distance() const { return ris_normal.dot(bs_position - ris_center); }

double Scenario::user_plane_distance(int k) const
{
    return ris_normal.dot(user_positions.at(static_cast<std::size_t>(k)) - ris_center);
}

void Scenario::validate() const
{
    if (num_users < 1)
        throw Error(ErrorKind::invalid_argument, "scenario: K must be at least 1");
    if (num_antennas < num_users)
        throw Error(ErrorKind::invalid_argument,
                    "scenario: M = " + std::to_string(num_antennas) + " is below K = " +
                        std::to_string(num_users));
    if (static_cast<int>(user_positions.size()) != num_users)
        throw Error(ErrorKind::invalid_argument, "scenario: user position count differs from K");
    if (!(wavelength > 0.0))
        throw Error(ErrorKind::invalid_argument, "scenario: wavelength must be positive");
    if (!(antenna_gain > 0.0))
        throw Error(ErrorKind::invalid_argument, "scenario: antenna gain must be positive");
    if (std::abs(ris_normal.norm() - 1.0) > 1e-9)
        throw Error(ErrorKind::invalid_argument, "scenario: RIS normal is not a unit vector");
    if (!(bs_plane_distance() > 0.0))
        throw Error(ErrorKind::infeasible_geometry, "scenario: BS is not in front of the RIS plane");
    for (int k = 0; k < num_users; ++k)
        if (!(user_plane_distance(k) > 0.0))
            throw Error(ErrorKind::infeasible_geometry,
                        "scenario: user " + std::to_string(k) + " is not in front of the RIS plane");
}

// ---------------------------------------------------------------- RisPanel

void RisPanel::validate() const
{
    if (num_elements < 1)
        throw Error(ErrorKind::invalid_argument, "panel: N must be at least 1");
    if (!(element_width > 0.0) || !(element_height > 0.0))
        throw Error(ErrorKind::invalid_argument, "panel: element size must be positive");
    if (!(reflection_amplitude >= 0.0 && reflection_amplitude <= 1.0))
        throw Error(ErrorKind::invalid_argument, "panel: reflection amplitude must lie in [0, 1]");
    if (const auto *ex = std::get_if<PhaseExplicit>(&phases); ex && ex->radians.size() != num_elements)
        throw Error(ErrorKind::invalid_argument,
                    "panel: explicit phase list has " + std::to_string(ex->radians.size()) +
                        " entries, expected " + std::to_string(num_elements));
}

std::vector<double> RisPanel::phase_shifts() const
{
    if (const auto *ex = std::get_if<PhaseExplicit>(&phases))
        return ex->radians;
    std::vector<double> theta(num_elements, 0.0);
    if (const auto *rnd = std::get_if<PhaseUniformRandom>(&phases))
    {
        RngStream rng(rnd->seed);
        for (auto &t : theta)
            t = 2.0 * pi * rng.uniform();
    }
    return theta;
}

std::vector<cplx> RisPanel::reflection_factors() const
{
    const auto theta = phase_shifts();
    std::vector<cplx> out(theta.size());
    for (std::size_t n = 0; n < theta.size(); ++n)
        out[n] = std::polar(reflection_amplitude, -theta[n]);
    return out;
}

// ---------------------------------------------------------------- lattice

PanelGrid PanelGrid::for_count(std::uint64_t n, double pitch_u, double pitch_v)
{
    if (n < 1)
        throw Error(ErrorKind::invalid_argument, "panel grid: N must be at least 1");
    PanelGrid g;
    g.cols = ceil_sqrt(n);
    g.full_rows = n / g.cols;
    g.remainder = n % g.cols;
    g.pitch_u = pitch_u;
    g.pitch_v = pitch_v;
    // Sum of row indices over all elements, divided by N, is the centroid row.
    const double full = static_cast<double>(g.full_rows);
    const double row_index_sum = static_cast<double>(g.cols) * full * (full - 1.0) / 2.0 +
                                 static_cast<double>(g.remainder) * full;
    g.row_offset = -pitch_v * row_index_sum / static_cast<double>(n);
    return g;
}

Eigen::Vector2d PanelGrid::local_position(std::uint64_t index) const
{
    const std::uint64_t row = index / cols;
    const std::uint64_t col = index % cols;
    const double width = row < full_rows ? static_cast<double>(cols) : static_cast<double>(remainder);
    const double s = (static_cast<double>(col) - (width - 1.0) / 2.0) * pitch_u;
    const double t = row_offset + static_cast<double>(row) * pitch_v;
    return {s, t};
}

PlaneFrame PlaneFrame::from(const Vec3 &origin, const Vec3 &normal)
{
    PlaneFrame f;
    f.origin = origin;
    f.normal = normal.normalized();
    Vec3 u = Vec3::UnitZ().cross(f.normal);
    if (u.norm() < 1e-12)
        u = f.normal.cross(Vec3::UnitY()); // horizontal panel
    f.u = u.normalized();
    f.v = f.normal.cross(f.u).normalized();
    return f;
}

// ---------------------------------------------------------------- layout

Scenario build_layout(const LayoutParams &p, double frequency_hz, double antenna_gain,
                      int num_antennas, int num_users)
{
    if (!(p.bs_ris_distance > 0.0) || !(p.bs_area_distance > 0.0) || !(p.ris_area_gap > 0.0) ||
        !(p.area_side > 0.0))
        throw Error(ErrorKind::infeasible_geometry, "layout: all distances must be positive");
    if (!(frequency_hz > 0.0))
        throw Error(ErrorKind::invalid_argument, "layout: frequency must be positive");
    if (num_users != p.num_users)
        throw Error(ErrorKind::invalid_argument, "layout: user count mismatch");

    // Square area centered on the horizontal origin, RIS on the -x side facing it.
    const double ris_x = -(p.area_side / 2.0 + p.ris_area_gap);
    // BS on both horizontal circles |BS - RIS| = D_B and |BS| = D.
    const double bs_x = (p.bs_area_distance * p.bs_area_distance -
                         p.bs_ris_distance * p.bs_ris_distance + ris_x * ris_x) /
                        (2.0 * ris_x);
    const double y2 = p.bs_area_distance * p.bs_area_distance - bs_x * bs_x;
    if (y2 < 0.0)
        throw Error(ErrorKind::infeasible_geometry,
                    "layout: no BS position satisfies both D_B and D (circles do not intersect)");
    if (!(bs_x > ris_x))
        throw Error(ErrorKind::infeasible_geometry, "layout: BS would sit behind the RIS plane");

    Scenario s;
    s.ris_center = Vec3(ris_x, 0.0, p.ris_height);
    s.ris_normal = Vec3::UnitX();
    s.bs_position = Vec3(bs_x, std::sqrt(y2), p.bs_height);
    s.wavelength = speed_of_light / frequency_hz;
    s.antenna_gain = antenna_gain;
    s.num_antennas = num_antennas;
    s.num_users = num_users;

    std::mt19937_64 engine(p.user_seed);
    std::uniform_real_distribution<double> coord(-p.area_side / 2.0, p.area_side / 2.0);
    for (int k = 0; k < num_users; ++k)
    {
        const double x = coord(engine);
        const double y = coord(engine);
        s.user_positions.emplace_back(x, y, 0.0);
    }
    s.validate();
    return s;
}

std::vector<Vec3> element_positions(const RisPanel &panel, const Vec3 &center, const Vec3 &normal)
{
    const auto grid = PanelGrid::for_count(panel.num_elements, panel.element_width,
                                           panel.element_height);
    const auto frame = PlaneFrame::from(center, normal);
    std::vector<Vec3> out;
    out.reserve(panel.num_elements);
    for (std::uint64_t i = 0; i < panel.num_elements; ++i)
    {
        const auto st = grid.local_position(i);
        out.push_back(frame.point(st.x(), st.y()));
    }
    return out;
}

// ---------------------------------------------------------------- gains

double gain_density(const Vec3 &point, const Vec3 &bs, const Vec3 &user, const Vec3 &normal,
                    double wavelength, double antenna_gain)
{
    const Vec3 to_bs = bs - point;
    const Vec3 to_user = user - point;
    const double l2 = to_bs.squaredNorm();
    const double d2 = to_user.squaredNorm();
    if (l2 == 0.0 || d2 == 0.0)
        throw Error(ErrorKind::domain, "path gain: element coincides with the BS or a user");
    const double cos_alpha = normal.dot(to_bs) / std::sqrt(l2);
    if (!(cos_alpha > 0.0))
        throw Error(ErrorKind::domain, "path gain: BS is behind the RIS plane");
    if (!(normal.dot(to_user) > 0.0))
        throw Error(ErrorKind::domain, "path gain: user is behind the RIS plane");
    return antenna_gain * wavelength * wavelength * cos_alpha * cos_alpha * cos_alpha /
           (gain_denominator * l2 * d2);
}

double path_gain(const Vec3 &element, const Vec3 &bs, const Vec3 &user, const Vec3 &normal,
                 double element_width, double element_height, double wavelength,
                 double antenna_gain)
{
    return element_width * element_height *
           gain_density(element, bs, user, normal, wavelength, antenna_gain);
}

namespace
{

std::vector<double> exact_sum(const Scenario &sc, const PanelGrid &grid)
{
    const auto frame = PlaneFrame::from(sc.ris_center, sc.ris_normal);
    const auto K = static_cast<std::size_t>(sc.num_users);
    std::vector<CompensatedSum> totals(K);
    std::vector<double> row_sum(K);
    const double z0 = sc.bs_plane_distance();

    for (std::uint64_t row = 0; row < grid.rows(); ++row)
    {
        std::fill(row_sum.begin(), row_sum.end(), 0.0);
        const bool partial = row >= grid.full_rows;
        const std::uint64_t width = partial ? grid.remainder : grid.cols;
        const double t = grid.row_offset + static_cast<double>(row) * grid.pitch_v;
        const double s0 = -(static_cast<double>(width) - 1.0) / 2.0 * grid.pitch_u;
        const Vec3 row_origin = frame.point(s0, t);
        for (std::uint64_t col = 0; col < width; ++col)
        {
            const Vec3 p = row_origin + (static_cast<double>(col) * grid.pitch_u) * frame.u;
            const double l2 = (sc.bs_position - p).squaredNorm();
            // cos(alpha) = z0 / l for every point of the plane
            const double cos_alpha = z0 / std::sqrt(l2);
            const double base = cos_alpha * cos_alpha * cos_alpha / l2;
            for (std::size_t k = 0; k < K; ++k)
                row_sum[k] += base / (sc.user_positions[k] - p).squaredNorm();
        }
        for (std::size_t k = 0; k < K; ++k)
            totals[k].add(row_sum[k]);
    }
    const double scale = sc.antenna_gain * sc.wavelength * sc.wavelength * grid.pitch_u *
                         grid.pitch_v / gain_denominator;
    std::vector<double> out(K);
    for (std::size_t k = 0; k < K; ++k)
        out[k] = scale * totals[k].value();
    return out;
}

struct PlaneIntegrand
{
    PlaneFrame frame;
    Vec3 bs;
    Vec3 user;
    double wavelength;
    double antenna_gain;
    std::vector<double> s_breaks;
    std::vector<double> t_breaks;

    PlaneIntegrand(const Scenario &sc, int k)
        : frame(PlaneFrame::from(sc.ris_center, sc.ris_normal)), bs(sc.bs_position),
          user(sc.user_positions[static_cast<std::size_t>(k)]), wavelength(sc.wavelength),
          antenna_gain(sc.antenna_gain)
    {
        for (const Vec3 &q : {bs, user})
        {
            const Vec3 rel = q - frame.origin;
            s_breaks.push_back(rel.dot(frame.u));
            t_breaks.push_back(rel.dot(frame.v));
        }
    }

    double operator()(double s, double t) const
    {
        return gain_density(frame.point(s, t), bs, user, frame.normal, wavelength, antenna_gain);
    }

    double over(double s_lo, double s_hi, double t_lo, double t_hi) const
    {
        const auto r = detail::integrate_rectangle(*this, s_lo, s_hi, t_lo, t_hi, s_breaks, t_breaks);
        detail::require_converged(r, 1e-6, "aggregate gain");
        return r.value;
    }
};

std::vector<double> footprint_integral(const Scenario &sc, const PanelGrid &grid)
{
    std::vector<double> out;
    const double half_cols = static_cast<double>(grid.cols) * grid.pitch_u / 2.0;
    const double t_lo = grid.row_offset - grid.pitch_v / 2.0;
    const double t_mid = t_lo + static_cast<double>(grid.full_rows) * grid.pitch_v;
    const double half_rem = static_cast<double>(grid.remainder) * grid.pitch_u / 2.0;
    for (int k = 0; k < sc.num_users; ++k)
    {
        const PlaneIntegrand f(sc, k);
        double total = f.over(-half_cols, half_cols, t_lo, t_mid);
        if (grid.remainder > 0)
            total += f.over(-half_rem, half_rem, t_mid, t_mid + grid.pitch_v);
        out.push_back(total);
    }
    return out;
}

} // namespace

GainProfile aggregate_gain(const Scenario &scenario, const RisPanel &panel,
                           const AggregateOptions &options)
{
    scenario.validate();
    panel.validate();
    const auto grid = PanelGrid::for_count(panel.num_elements, panel.element_width,
                                           panel.element_height);
    const bool exact = options.mode == AggregateMode::exact_sum ||
                       (options.mode == AggregateMode::automatic &&
                        panel.num_elements <= options.exact_limit);

    GainProfile g;
    g.num_elements = panel.num_elements;
    g.per_user_aggregate = exact ? exact_sum(scenario, grid) : footprint_integral(scenario, grid);
    const double n = static_cast<double>(panel.num_elements);
    for (int k = 0; k < scenario.num_users; ++k)
    {
        g.per_user_average.push_back(g.per_user_aggregate[static_cast<std::size_t>(k)] / n);
        g.asymptotic_limit.push_back(asymptotic_gain(scenario.bs_plane_distance(),
                                                     scenario.user_plane_distance(k),
                                                     scenario.wavelength, scenario.antenna_gain));
    }
    return g;
}

std::vector<double> plane_limit_gain(const Scenario &scenario)
{
    scenario.validate();
    std::vector<double> out;
    for (int k = 0; k < scenario.num_users; ++k)
        out.push_back(PlaneIntegrand(scenario, k).over(-inf, inf, -inf, inf));
    return out;
}

double asymptotic_gain(double z0, double zk, double wavelength, double antenna_gain)
{
    if (!(z0 > 0.0) || !(zk > 0.0))
        throw Error(ErrorKind::domain, "asymptotic gain: plane distances must be positive");
    return 2.0 * antenna_gain * z0 * z0 * z0 * wavelength * wavelength /
           (5.0 * pi * pi * std::pow(z0 + zk, 5));
}

double quadrature_gain(double z0, double zk, double x0, double wavelength, double antenna_gain,
                       double halfwidth, bool use_midpoint_approx)
{
    if (!(z0 > 0.0) || !(zk > 0.0))
        throw Error(ErrorKind::domain, "quadrature gain: plane distances must be positive");
    if (!(halfwidth >= 0.0))
        throw Error(ErrorKind::invalid_argument, "quadrature gain: negative half-width");
    if (halfwidth == 0.0)
        return 0.0;

    const double scale = antenna_gain * wavelength * wavelength * z0 * z0 * z0 / gain_denominator;
    const double mid2 = (z0 + zk) * (z0 + zk) / 4.0;
    auto density = [&](double x, double y) {
        if (use_midpoint_approx)
            return scale / std::pow(x * x + y * y + mid2, 3.5);
        const double l2 = (x + x0) * (x + x0) + y * y + z0 * z0;
        const double d2 = (x - x0) * (x - x0) + y * y + zk * zk;
        return scale / (d2 * l2 * l2 * std::sqrt(l2));
    };
    const auto r = detail::integrate_rectangle(density, -halfwidth, halfwidth, -halfwidth,
                                               halfwidth, {-x0, 0.0, x0}, {0.0});
    detail::require_converged(r, 1e-6, "quadrature gain");
    return r.value;
}

} // namespace riscap
