// SPDX-License-Identifier: Apache-2.0
//
// dpis - simulation toolkit for dual-polarized RIS/FIS-aided SISO links
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

#include <cstdint>
#include <string>
#include <vector>

namespace dpis {

struct CheckResult {
    std::string name;
    double residual;
    double threshold;
    bool pass;
};

struct ValidationOptions {
    std::uint64_t seed = 42;
    int scene_count = 200;
    int competitors_per_scene = 100;
    int num_elements = 16;           // randomized property checks
    int oracle_num_elements = 64;    // frequency-oracle checks
    int oracle_geometries = 50;
    bool inject_broken_theta = false;  // adds a deliberately broken matrix
};

struct ValidationSuiteReport {
    std::vector<CheckResult> checks;
    bool all_pass;
    std::uint64_t seed;
};

/// Runs the randomized invariant suite across all modules: steering and norm
/// laws, constraint residuals of every constructed design, closed-form
/// agreement, optimality dominance against random competitors, phase and
/// distance invariance, and the frequency-selection oracle.
ValidationSuiteReport run_validation_suite(const ValidationOptions& options = {});

std::string validation_report_to_json(const ValidationSuiteReport& report);

}  // namespace dpis
