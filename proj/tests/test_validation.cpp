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

#include <doctest.h>

#include <json.hpp>

#include "dpis/validation.hpp"

using namespace dpis;

namespace {

ValidationOptions quick_options(std::uint64_t seed) {
    ValidationOptions options;
    options.seed = seed;
    options.scene_count = 40;
    options.competitors_per_scene = 15;
    options.num_elements = 12;
    options.oracle_num_elements = 16;
    options.oracle_geometries = 6;
    return options;
}

}  // namespace

TEST_CASE("invariant suite passes across seeds") {
    for (const std::uint64_t seed : {1ull, 7ull, 42ull, 1234ull, 987654321ull}) {
        const auto report = run_validation_suite(quick_options(seed));
        for (const auto& check : report.checks) {
            INFO("seed ", seed, " check ", check.name, " residual ", check.residual);
            CHECK(check.pass);
        }
        CHECK(report.all_pass);
        CHECK(report.seed == seed);
    }
}

TEST_CASE("a broken matrix fails the suite and reports its residual") {
    ValidationOptions options = quick_options(42);
    options.inject_broken_theta = true;
    const auto report = run_validation_suite(options);
    CHECK_FALSE(report.all_pass);

    bool found = false;
    for (const auto& check : report.checks) {
        if (check.name == "injected_broken_theta") {
            found = true;
            CHECK_FALSE(check.pass);
            CHECK(check.residual > 1.0);  // |1.5^2 - 1|
        }
    }
    CHECK(found);
}

TEST_CASE("report serializes to JSON with one entry per check") {
    const auto report = run_validation_suite(quick_options(3));
    const auto j = nlohmann::json::parse(validation_report_to_json(report));
    CHECK(j.at("all_pass") == true);
    CHECK(j.at("seed") == 3);
    REQUIRE(j.at("checks").is_array());
    CHECK(j.at("checks").size() == report.checks.size());
    for (const auto& check : j.at("checks")) {
        CHECK(check.contains("name"));
        CHECK(check.contains("residual"));
        CHECK(check.contains("threshold"));
        CHECK(check.contains("pass"));
    }
}
