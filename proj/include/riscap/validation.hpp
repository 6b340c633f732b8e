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

#include <string>
#include <vector>

namespace riscap
{

struct CheckResult
{
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool judged = true; // false: reported only, never fails
    bool passed = true;
    std::string detail;
};

// Self-checks run by the `validate` command. Fixed seeds, a few seconds.
std::vector<CheckResult> run_validation_suite();

// One line per check plus a summary line.
std::string format_validation_report(const std::vector<CheckResult> &checks);

bool all_passed(const std::vector<CheckResult> &checks);

} // namespace riscap
