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

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace riscap
{

// Deployment geometry. Distances in meters, the RIS plane normal is a unit
// vector and every user and the BS must sit strictly in front of the plane.
struct Scenario
{
    Vec3 bs_position = Vec3::Zero();
    std::vector<Vec3> user_positions;
    Vec3 ris_center = Vec3::Zero();
    Vec3 ris_normal = Vec3::UnitZ();
    double wavelength = 0.0;
    double antenna_gain = 1.0;
    int num_antennas = 1;
    int num_users = 1;

    // Throws Error(invalid_argument / infeasible_geometry) when an invariant is broken.
    void validate() const;

    // Perpendicular distance of the BS (z0) and of user k (zk) from the RIS plane.
    double bs_plane_distance() const;
    double user_plane_distance(int k) const;
};

struct LayoutParams
{
    double bs_ris_distance = 100.0;  // D_B, horizontal
    double bs_area_distance = 100.0; // D, horizontal, BS to square-area center
    double ris_area_gap = 10.0;      // D_u, RIS to the closest side of the square
    double area_side = 100.0;        // L
    double bs_height = 25.0;
    double ris_height = 25.0;
    int num_users = 5;
    std::uint64_t user_seed = 1;

    bool operator==(const LayoutParams &) const = default;
};

struct PhaseAllZero
{
};
struct PhaseUniformRandom
{
    std::uint64_t seed = 0;
};
struct PhaseExplicit
{
    std::vector<double> radians;
};
using PhaseConfig = std::variant<PhaseAllZero, PhaseUniformRandom, PhaseExplicit>;

struct RisPanel
{
    std::uint64_t num_elements = 1;
    double element_width = 0.02;  // a
    double element_height = 0.02; // b
    double reflection_amplitude = 1.0;
    PhaseConfig phases = PhaseAllZero{};

    void validate() const;

    // Per-element phase shifts theta_n. Materializes N values.
    std::vector<double> phase_shifts() const;
    // Per-element reflection factors Gamma * exp(-j theta_n).
    std::vector<cplx> reflection_factors() const;
};

// Near-square lattice: `cols` columns, `full_rows` complete rows and one
// centered partial row of `remainder` elements on top, shifted so the
// centroid sits exactly on the panel center.
struct PanelGrid
{
    std::uint64_t cols = 1;
    std::uint64_t full_rows = 1;
    std::uint64_t remainder = 0;
    double pitch_u = 0.02;
    double pitch_v = 0.02;
    double row_offset = 0.0; // v-coordinate of the first row center

    static PanelGrid for_count(std::uint64_t n, double pitch_u, double pitch_v);
    std::uint64_t count() const { return cols * full_rows + remainder; }
    std::uint64_t rows() const { return full_rows + (remainder > 0 ? 1 : 0); }
    // In-plane (u, v) coordinates of element `index` in row-major order.
    Eigen::Vector2d local_position(std::uint64_t index) const;
};

// Orthonormal in-plane axes (u, v) completing the RIS normal. u is horizontal
// when the normal is not vertical.
struct PlaneFrame
{
    Vec3 origin = Vec3::Zero();
    Vec3 normal = Vec3::UnitZ();
    Vec3 u = Vec3::UnitX();
    Vec3 v = Vec3::UnitY();

    static PlaneFrame from(const Vec3 &origin, const Vec3 &normal);
    Vec3 point(double s, double t) const { return origin + s * u + t * v; }
};

struct GainProfile
{
    std::uint64_t num_elements = 0;
    std::vector<double> per_user_aggregate; // sum of per-element power gains
    std::vector<double> per_user_average;   // aggregate / N
    std::vector<double> asymptotic_limit;   // closed-form N -> infinity value
};

enum class AggregateMode
{
    automatic,    // exact below `exact_limit` elements, footprint integral above
    exact_sum,    // always sum every element
    footprint_integral
};

struct AggregateOptions
{
    AggregateMode mode = AggregateMode::automatic;
    std::uint64_t exact_limit = std::uint64_t{1} << 22;
};

Scenario build_layout(const LayoutParams &params, double frequency_hz, double antenna_gain,
                      int num_antennas, int num_users);

std::vector<Vec3> element_positions(const RisPanel &panel, const Vec3 &center, const Vec3 &normal);

// Power gain through one element (reciprocal of the element path loss):
//   A a b lambda^2 cos^3(alpha) / (64 pi^3 l^2 d^2)
double path_gain(const Vec3 &element, const Vec3 &bs, const Vec3 &user, const Vec3 &normal,
                 double element_width, double element_height, double wavelength,
                 double antenna_gain);

// Same quantity per unit panel area, i.e. path_gain / (a b).
double gain_density(const Vec3 &point, const Vec3 &bs, const Vec3 &user, const Vec3 &normal,
                    double wavelength, double antenna_gain);

GainProfile aggregate_gain(const Scenario &scenario, const RisPanel &panel,
                           const AggregateOptions &options = {});

// Per-user limit of the aggregate for a panel covering the whole plane,
// integrated numerically over the exact layout.
std::vector<double> plane_limit_gain(const Scenario &scenario);

// Closed form 2 A z0^3 lambda^2 / (5 pi^2 (z0 + zk)^5) for the aggregate as N -> infinity.
double asymptotic_gain(double z0, double zk, double wavelength, double antenna_gain);

// Numerical integral of the per-area gain over [-w, w]^2 in the frame where
// the RIS is the plane z = 0, BS at (-x0, 0, z0) and user at (x0, 0, zk).
// `use_midpoint_approx` selects the equal-distance approximation of the density.
// `halfwidth` may be +infinity.
double quadrature_gain(double z0, double zk, double x0, double wavelength, double antenna_gain,
                       double halfwidth, bool use_midpoint_approx);

} // namespace riscap
