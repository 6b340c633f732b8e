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

#include "riscap/geometry.hpp"
#include "riscap/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace riscap
{

// Seeded random stream. Substreams are derived from a root seed and integer
// coordinates so results do not depend on evaluation order.
class RngStream
{
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    static std::uint64_t mix(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0,
                             std::uint64_t c = 0);
    static RngStream derive(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0,
                            std::uint64_t c = 0)
    {
        return RngStream(mix(root, a, b, c));
    }

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    // Circularly-symmetric complex Gaussian with the given total variance.
    cplx circular_normal(double variance);
    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

enum class FadingKind
{
    complex_gaussian,
    uniform_phase,
    real_bernoulli
};

// Zero-mean, unit second-moment fast fading per element path.
struct FadingModel
{
    FadingKind kind = FadingKind::complex_gaussian;
    cplx draw(RngStream &rng) const;
};

enum class SynthesisMode
{
    exact_sum,
    clt_shortcut
};

enum class ElementWeighting
{
    common_gain, // rows scaled by sqrt of the average element gain
    per_element  // every element path weighted by its own gain
};

struct ChannelRealization
{
    CMatrix H; // K x M, normalized reflect-sum channel
    CMatrix G; // K x M, row k = sqrt(per_user_average[k]) * row k of H
    GainProfile gains;
    SynthesisMode mode = SynthesisMode::clt_shortcut;
    bool small_panel_advisory = false; // clt shortcut used with N < 64
};

struct ExactSynthesisOptions
{
    double draw_budget = 1e9;
    ElementWeighting weighting = ElementWeighting::common_gain;
};

// Row scaling of H by the average per-element gain.
CMatrix assemble_channel(const CMatrix &H, const GainProfile &gains);

ChannelRealization synthesize_exact(const Scenario &scenario, const RisPanel &panel,
                                    const GainProfile &gains, const FadingModel &fading,
                                    RngStream &rng, const ExactSynthesisOptions &options = {});
ChannelRealization synthesize_exact(const Scenario &scenario, const RisPanel &panel,
                                    const FadingModel &fading, RngStream &rng,
                                    const ExactSynthesisOptions &options = {});

ChannelRealization synthesize_clt(const Scenario &scenario, const RisPanel &panel,
                                  const GainProfile &gains, RngStream &rng);
ChannelRealization synthesize_clt(const Scenario &scenario, const RisPanel &panel, RngStream &rng);

// Draws of (sum_n h_n Gamma_n) / (Gamma sqrt(N)) for goodness-of-fit checks.
std::vector<cplx> normalized_sum_samples(const FadingModel &fading, const RisPanel &panel,
                                         std::size_t count, RngStream &rng);

} // namespace riscap
