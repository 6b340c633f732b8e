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

#include <stdexcept>
#include <string>

namespace riscap
{

enum class ErrorKind
{
    invalid_argument,
    domain,
    infeasible_geometry,
    budget_exceeded,
    rank_deficient,
    singular_matrix,
    non_convergence,
    degenerate,
    config
};

// Single exception type for the library. The kind drives the status code at
// the C boundary and the exit code of the command-line tool.
class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

    // True for failures caused by the numbers rather than by the inputs.
    bool numerical() const noexcept
    {
        return kind_ == ErrorKind::budget_exceeded || kind_ == ErrorKind::rank_deficient ||
               kind_ == ErrorKind::singular_matrix || kind_ == ErrorKind::non_convergence ||
               kind_ == ErrorKind::degenerate;
    }

  private:
    ErrorKind kind_;
};

} // namespace riscap
