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

#include "riscap/channel.hpp"
#include "riscap/error.hpp"

#include <cmath>
#include <string>

namespace riscap
{
namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void check_gains(const Scenario &scenario, const GainProfile &gains)
{
    if (gains.per_user_average.size() != static_cast<std::size_t>(scenario.num_users))
        throw Error(ErrorKind::invalid_argument, "channel: gain profile does not match K");
}

} // namespace

std::uint64_t RngStream::mix(std::uint64_t root, std::uint64_t a, std::uint64_t b, std::uint64_t c)
{
    std::uint64_t h = splitmix64(root);
    h = splitmix64(h ^ splitmix64(a + 0x632be59bd9b4e019ULL));
    h = splitmix64(h ^ splitmix64(b + 0x85157af5ULL));
    h = splitmix64(h ^ splitmix64(c + 0x2545f4914f6cdd1dULL));
    return h;
}

cplx RngStream::circular_normal(double variance)
{
    const double sd = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {sd * re, sd * im};
}

cplx FadingModel::draw(RngStream &rng) const
{
    switch (kind)
    {
    case FadingKind::complex_gaussian:
        return rng.circular_normal(1.0);
    case FadingKind::uniform_phase:
        return std::polar(1.0, 2.0 * pi * rng.uniform());
    case FadingKind::real_bernoulli:
        return {rng.uniform() < 0.5 ? -1.0 : 1.0, 0.0};
    }
    return {};
}

CMatrix assemble_channel(const CMatrix &H, const GainProfile &gains)
{
    CMatrix G = H;
    for (Eigen::Index k = 0; k < H.rows(); ++k)
        G.row(k) *= std::sqrt(gains.per_user_average.at(static_cast<std::size_t>(k)));
    return G;
}

ChannelRealization synthesize_exact(const Scenario &scenario, const RisPanel &panel,
                                    const GainProfile &gains, const FadingModel &fading,
                                    RngStream &rng, const ExactSynthesisOptions &options)
{
    check_gains(scenario, gains);
    panel.validate();
    const auto K = scenario.num_users;
    const auto M = scenario.num_antennas;
    const double draws = static_cast<double>(panel.num_elements) * K * M;
    if (draws > options.draw_budget)
        throw Error(ErrorKind::budget_exceeded,
                    "exact synthesis needs " + std::to_string(draws) +
                        " fading draws, above the budget; use the CLT shortcut");

    const auto gamma_n = panel.reflection_factors();
    ChannelRealization out;
    out.mode = SynthesisMode::exact_sum;
    out.gains = gains;
    out.H = CMatrix::Zero(K, M);

    if (options.weighting == ElementWeighting::common_gain)
    {
        for (int k = 0; k < K; ++k)
            for (int m = 0; m < M; ++m)
            {
                cplx acc{0.0, 0.0};
                for (const cplx &g : gamma_n)
                    acc += fading.draw(rng) * g;
                out.H(k, m) = acc;
            }
        out.G = assemble_channel(out.H, gains);
        return out;
    }

    // Per-element weighting: every path carries its own sqrt(gain); H is then
    // recovered as G scaled back by the average gain.
    const auto positions = element_positions(panel, scenario.ris_center, scenario.ris_normal);
    out.G = CMatrix::Zero(K, M);
    for (int k = 0; k < K; ++k)
    {
        std::vector<double> amp(positions.size());
        for (std::size_t n = 0; n < positions.size(); ++n)
            amp[n] = std::sqrt(path_gain(positions[n], scenario.bs_position,
                                         scenario.user_positions[static_cast<std::size_t>(k)],
                                         scenario.ris_normal, panel.element_width,
                                         panel.element_height, scenario.wavelength,
                                         scenario.antenna_gain));
        const double avg = gains.per_user_average[static_cast<std::size_t>(k)];
        for (int m = 0; m < M; ++m)
        {
            cplx acc{0.0, 0.0};
            for (std::size_t n = 0; n < positions.size(); ++n)
                acc += amp[n] * fading.draw(rng) * gamma_n[n];
            out.G(k, m) = acc;
            out.H(k, m) = avg > 0.0 ? acc / std::sqrt(avg) : cplx{0.0, 0.0};
        }
    }
    return out;
}

ChannelRealization synthesize_exact(const Scenario &scenario, const RisPanel &panel,
                                    const FadingModel &fading, RngStream &rng,
                                    const ExactSynthesisOptions &options)
{
    return synthesize_exact(scenario, panel, aggregate_gain(scenario, panel), fading, rng, options);
}

ChannelRealization synthesize_clt(const Scenario &scenario, const RisPanel &panel,
                                  const GainProfile &gains, RngStream &rng)
{
    check_gains(scenario, gains);
    panel.validate();
    const auto K = scenario.num_users;
    const auto M = scenario.num_antennas;
    const double variance = static_cast<double>(panel.num_elements) *
                            panel.reflection_amplitude * panel.reflection_amplitude;

    ChannelRealization out;
    out.mode = SynthesisMode::clt_shortcut;
    out.gains = gains;
    out.small_panel_advisory = panel.num_elements < 64;
    out.H.resize(K, M);
    for (int k = 0; k < K; ++k)
        for (int m = 0; m < M; ++m)
            out.H(k, m) = rng.circular_normal(variance);
    out.G = assemble_channel(out.H, gains);
    return out;
}

ChannelRealization synthesize_clt(const Scenario &scenario, const RisPanel &panel, RngStream &rng)
{
    return synthesize_clt(scenario, panel, aggregate_gain(scenario, panel), rng);
}

std::vector<cplx> normalized_sum_samples(const FadingModel &fading, const RisPanel &panel,
                                         std::size_t count, RngStream &rng)
{
    panel.validate();
    if (count < 1)
        throw Error(ErrorKind::invalid_argument, "normalized sums: count must be at least 1");
    if (panel.reflection_amplitude == 0.0)
        throw Error(ErrorKind::degenerate, "normalized sums: reflection amplitude is zero");
    const auto gamma_n = panel.reflection_factors();
    const double norm = panel.reflection_amplitude * std::sqrt(static_cast<double>(gamma_n.size()));
    std::vector<cplx> out(count);
    for (auto &sample : out)
    {
        cplx acc{0.0, 0.0};
        for (const cplx &g : gamma_n)
            acc += fading.draw(rng) * g;
        sample = acc / norm;
    }
    return out;
}

} // namespace riscap
