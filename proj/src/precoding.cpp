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

#include "riscap/precoding.hpp"
#include "riscap/error.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace riscap
{

void LinkBudget::validate(int num_users) const
{
    if (!(transmit_power > 0.0) || !(noise_power > 0.0))
        throw Error(ErrorKind::invalid_argument, "link budget: P and sigma^2 must be positive");
    if (allocation.size() != static_cast<std::size_t>(num_users))
        throw Error(ErrorKind::invalid_argument, "link budget: allocation length differs from K");
    double total = 0.0;
    for (double a : allocation)
    {
        if (!(a >= 0.0))
            throw Error(ErrorKind::invalid_argument, "link budget: negative allocation");
        total += a;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw Error(ErrorKind::invalid_argument, "link budget: allocation does not sum to one");
}

void require_full_row_rank(const CMatrix &G)
{
    if (G.rows() == 0 || G.rows() > G.cols())
        throw Error(ErrorKind::rank_deficient, "channel has more users than antennas");
    Eigen::JacobiSVD<CMatrix> svd(G);
    const auto &sv = svd.singularValues();
    const double largest = sv(0);
    const double smallest = sv(sv.size() - 1);
    if (!(largest > 0.0) || smallest <= rank_tolerance * largest)
    {
        std::ostringstream msg;
        msg << "channel is rank deficient: singular-value ratio "
            << (largest > 0.0 ? smallest / largest : 0.0) << " <= " << rank_tolerance;
        throw Error(ErrorKind::rank_deficient, msg.str());
    }
}

Precoder zf_precoder(const CMatrix &G)
{
    require_full_row_rank(G);
    const CMatrix gram = G * G.adjoint();
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::singular_matrix, "zero forcing: Gram matrix is not positive definite");
    Precoder p;
    // (G G^H)^{-1} G is the adjoint of V because the Gram matrix is Hermitian.
    p.V = llt.solve(G).adjoint();
    p.W = p.V;
    for (Eigen::Index k = 0; k < p.W.cols(); ++k)
        p.W.col(k) /= p.W.col(k).norm();
    return p;
}

std::vector<double> snr_direct(const CMatrix &G, const CMatrix &W, const LinkBudget &budget)
{
    const auto K = G.rows();
    if (W.rows() != G.cols() || W.cols() != K)
        throw Error(ErrorKind::invalid_argument, "snr: precoder dimensions do not match the channel");
    budget.validate(static_cast<int>(K));
    std::vector<double> out(static_cast<std::size_t>(K));
    for (Eigen::Index k = 0; k < K; ++k)
    {
        const cplx gw = G.row(k) * W.col(k);
        out[static_cast<std::size_t>(k)] = budget.transmit_power * budget.allocation[k] /
                                           (static_cast<double>(K) * budget.noise_power) *
                                           std::norm(gw);
    }
    return out;
}

RVector gram_inverse_diagonal(const CMatrix &G)
{
    const CMatrix gram = G * G.adjoint();
    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::singular_matrix, "Gram matrix G G^H is singular");
    const CMatrix inv = llt.solve(CMatrix::Identity(gram.rows(), gram.cols()));
    RVector diag = inv.diagonal().real();
    for (Eigen::Index k = 0; k < diag.size(); ++k)
        if (!(diag(k) > 0.0) || !std::isfinite(diag(k)))
            throw Error(ErrorKind::singular_matrix, "Gram matrix G G^H is singular");
    return diag;
}

std::vector<double> snr_closed(const CMatrix &G, const LinkBudget &budget)
{
    const auto K = G.rows();
    if (K > G.cols())
        throw Error(ErrorKind::singular_matrix, "Gram matrix G G^H is singular (K > M)");
    budget.validate(static_cast<int>(K));
    const double scale = budget.transmit_power / (static_cast<double>(K) * budget.noise_power);
    std::vector<double> out(static_cast<std::size_t>(K));
    if (K == 1)
    {
        // 1 / [(g g^H)^{-1}] is g g^H itself.
        const double gram = G.row(0).squaredNorm();
        if (!(gram > 0.0))
            throw Error(ErrorKind::singular_matrix, "Gram matrix G G^H is singular");
        out[0] = scale * budget.allocation[0] * gram;
        return out;
    }
    const RVector diag = gram_inverse_diagonal(G);
    for (Eigen::Index k = 0; k < K; ++k)
        out[static_cast<std::size_t>(k)] = scale * budget.allocation[k] / diag(k);
    return out;
}

std::vector<double> waterfill(const std::vector<double> &gains, double transmit_power,
                              double noise_power)
{
    const std::size_t K = gains.size();
    if (K == 0)
        throw Error(ErrorKind::invalid_argument, "waterfill: no users");
    if (!(transmit_power > 0.0) || !(noise_power > 0.0))
        throw Error(ErrorKind::invalid_argument, "waterfill: P and sigma^2 must be positive");

    // Floor of user k: K sigma^2 / (P g_k). Users with zero gain never get power.
    constexpr double never = std::numeric_limits<double>::infinity();
    std::vector<double> floor(K);
    for (std::size_t k = 0; k < K; ++k)
    {
        if (!(gains[k] >= 0.0))
            throw Error(ErrorKind::invalid_argument, "waterfill: negative gain");
        floor[k] = gains[k] > 0.0
                       ? static_cast<double>(K) * noise_power / (transmit_power * gains[k])
                       : never;
    }
    std::vector<std::size_t> order(K);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return floor[a] < floor[b]; });
    if (!std::isfinite(floor[order[0]]))
        return uniform_power(static_cast<int>(K));

    double level = 0.0;
    double floor_sum = 0.0;
    std::size_t active = 0;
    for (std::size_t j = 0; j < K && std::isfinite(floor[order[j]]); ++j)
    {
        const double candidate = (1.0 + floor_sum + floor[order[j]]) / static_cast<double>(j + 1);
        if (candidate <= floor[order[j]])
            break;
        floor_sum += floor[order[j]];
        level = candidate;
        active = j + 1;
    }

    std::vector<double> alloc(K, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < active; ++j)
    {
        alloc[order[j]] = level - floor[order[j]];
        total += alloc[order[j]];
    }
    for (double &a : alloc)
        a /= total; // absorb rounding so the allocation sums to one
    return alloc;
}

std::vector<double> uniform_power(int num_users)
{
    if (num_users < 1)
        throw Error(ErrorKind::invalid_argument, "uniform power: K must be at least 1");
    std::vector<double> out(static_cast<std::size_t>(num_users), 1.0 / num_users);
    // Close the sum exactly: 1 - s is exact for s >= 1/2.
    double head = 0.0;
    for (std::size_t k = 0; k + 1 < out.size(); ++k)
        head += out[k];
    out.back() = 1.0 - head;
    return out;
}

} // namespace riscap
