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

#include <cmath>

#include "dpis/power.hpp"
#include "dpis/statistics.hpp"
#include "oracles.hpp"

using namespace dpis;
using test::kTestPi;

TEST_CASE("sampled channels keep the exact norm law") {
    const ChannelSampler sampler{SamplerKind::IidPhase, 99};
    std::mt19937_64 rng(sampler.seed);
    for (int trial = 0; trial < 50; ++trial) {
        const double chi = uniform01(rng);
        const auto [h_r, h_t] = sample_channels(sampler, rng, 32, chi, Scenario::OppositePol);
        const double expected = (1 + chi) * 16.0;
        CHECK(h_r.entries.squaredNorm() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(h_t.entries.squaredNorm() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(h_r.orientation == VectorOrientation::Row);
        CHECK(h_t.orientation == VectorOrientation::Column);
    }

    const ChannelSampler geometric{SamplerKind::Geometric, 99};
    std::mt19937_64 rng2(geometric.seed);
    for (int trial = 0; trial < 50; ++trial) {
        const double chi = uniform01(rng2);
        const auto [h_r, h_t] = sample_channels(geometric, rng2, 32, chi, Scenario::SamePol);
        const double expected = (1 + chi) * 16.0;
        CHECK(h_r.entries.squaredNorm() == doctest::Approx(expected).epsilon(1e-9));
        CHECK(h_t.entries.squaredNorm() == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("random-walk moments of the steering product") {
    // E|g_R g_T| ~= sqrt(pi N / 8) and E|g_R g_T|^2 = N/2 under independent
    // per-element phases.
    const int n = 64;
    const long trials = 100000;
    const ChannelSampler sampler{SamplerKind::IidPhase, 42};
    std::mt19937_64 rng(sampler.seed);

    double sum_abs = 0.0;
    double sum_sq = 0.0;
    for (long t = 0; t < trials; ++t) {
        const auto [h_r, h_t] = sample_channels(sampler, rng, n, 0.0, Scenario::SamePol);
        // chi = 0 same-pol: the cascade product is exactly the steering product
        const double magnitude = std::abs(channel_product(h_r, h_t));
        sum_abs += magnitude;
        sum_sq += magnitude * magnitude;
    }
    const double mean_abs = sum_abs / trials;
    const double mean_sq = sum_sq / trials;
    CHECK(std::abs(mean_abs - std::sqrt(kTestPi * n / 8.0)) <=
          0.02 * std::sqrt(kTestPi * n / 8.0));
    CHECK(std::abs(mean_sq - n / 2.0) <= 0.02 * (n / 2.0));
}

TEST_CASE("per-realization powers match the explicit constructions") {
    std::mt19937_64 rng(301);
    const ChannelSampler sampler{SamplerKind::IidPhase, 301};
    for (int trial = 0; trial < 40; ++trial) {
        const Scenario scenario = trial % 2 == 0 ? Scenario::SamePol : Scenario::OppositePol;
        const double chi = uniform01(rng);
        const int n = 16;
        const auto [h_r, h_t] = sample_channels(sampler, rng, n, chi, scenario);

        const double via_construction_dris =
            std::norm(effective_channel(h_r, dris_optimal(h_r, h_t), h_t));
        CHECK(realization_power(SurfaceDesign::DRIS, scenario, chi, h_r, h_t) ==
              doctest::Approx(via_construction_dris).epsilon(1e-9));

        const double via_construction_bdris =
            std::norm(effective_channel(h_r, bdris_optimal(h_r, h_t), h_t));
        CHECK(realization_power(SurfaceDesign::BDRIS, scenario, chi, h_r, h_t) ==
              doctest::Approx(via_construction_bdris).epsilon(1e-9));

        const double via_matrix_dfis =
            std::norm(effective_channel(h_r, dfis_matrix(n), h_t));
        const double fixed_dfis = realization_power(SurfaceDesign::DFIS, scenario, chi, h_r,
                                                    h_t, FisMode::FixedFrequency);
        CHECK(std::abs(fixed_dfis - via_matrix_dfis) <=
              1e-9 * std::max(via_matrix_dfis, 1e-9 * n * n));

        const double via_matrix_bdfis =
            std::norm(effective_channel(h_r, bdfis_matrix(n), h_t));
        const double fixed_bdfis = realization_power(SurfaceDesign::BDFIS, scenario, chi, h_r,
                                                     h_t, FisMode::FixedFrequency);
        CHECK(std::abs(fixed_bdfis - via_matrix_bdfis) <=
              1e-9 * std::max(via_matrix_bdfis, 1e-9 * n * n));
    }
}

TEST_CASE("Monte Carlo means track the published closed forms") {
    const ChannelSampler sampler{SamplerKind::IidPhase, 42};
    const double chi = 0.2;

    struct Case {
        SurfaceDesign design;
        Scenario scenario;
        int n;
        long trials;
    };
    // Trial counts shrink with the element count: the finite-N gap of the
    // random-walk approximation grows as 1/N relative, and must stay well
    // inside three standard errors for the comparison to test the code
    // rather than the approximation.
    const long trials_for_n[] = {2000, 20000, 20000};
    const int sizes[] = {16, 64, 256};
    for (int size_index = 0; size_index < 3; ++size_index) {
        const int n = sizes[size_index];
        const long trials = trials_for_n[size_index];
        for (const auto design : {SurfaceDesign::DRIS, SurfaceDesign::BDRIS}) {
            for (const auto scenario : {Scenario::SamePol, Scenario::OppositePol}) {
                const auto estimate =
                    mc_mean_power(design, scenario, n, chi, trials, sampler);
                const double closed = closed_form_mean(design, scenario, n, chi);
                INFO("design ", static_cast<int>(design), " scenario ",
                     static_cast<int>(scenario), " n ", n);
                CHECK(std::abs(estimate.mean_w - closed) <=
                      3.0 * estimate.standard_error_w);
                CHECK(estimate.standard_error_w > 0.0);
                CHECK(estimate.trials == trials);
            }
        }
    }
}

TEST_CASE("fixed designs under carrier re-alignment report the deterministic caps") {
    const ChannelSampler sampler{SamplerKind::IidPhase, 7};
    const auto dfis = mc_mean_power(SurfaceDesign::DFIS, Scenario::OppositePol, 64, 0.3, 1000,
                                    sampler);
    CHECK(dfis.mean_w == doctest::Approx(4.0 * 0.3 * 64 * 64).epsilon(1e-12));
    CHECK(dfis.standard_error_w == 0.0);

    const auto bdfis = mc_mean_power(SurfaceDesign::BDFIS, Scenario::OppositePol, 64, 0.3, 1000,
                                     sampler);
    const double amp = 1 + 0.3 + 2 * std::sqrt(0.3);
    CHECK(bdfis.mean_w == doctest::Approx(amp * amp * 64 * 64 / 4.0).epsilon(1e-12));

    // fixed-carrier scoring loses against the cap on average
    const auto fixed = mc_mean_power(SurfaceDesign::DFIS, Scenario::OppositePol, 64, 0.3, 2000,
                                     sampler, FisMode::FixedFrequency);
    CHECK(fixed.mean_w < dfis.mean_w);
    CHECK(fixed.standard_error_w > 0.0);
}

TEST_CASE("estimates are reproducible and worker-count independent") {
    const ChannelSampler sampler{SamplerKind::IidPhase, 12345};
    const auto a = mc_mean_power(SurfaceDesign::DRIS, Scenario::SamePol, 32, 0.4, 9000, sampler,
                                 FisMode::FrequencyOptimized, 1);
    const auto b = mc_mean_power(SurfaceDesign::DRIS, Scenario::SamePol, 32, 0.4, 9000, sampler,
                                 FisMode::FrequencyOptimized, 1);
    const auto c = mc_mean_power(SurfaceDesign::DRIS, Scenario::SamePol, 32, 0.4, 9000, sampler,
                                 FisMode::FrequencyOptimized, 4);
    CHECK(a.mean_w == b.mean_w);
    CHECK(a.standard_error_w == b.standard_error_w);
    CHECK(a.mean_w == c.mean_w);
    CHECK(a.standard_error_w == c.standard_error_w);

    const ChannelSampler geometric{SamplerKind::Geometric, 77};
    const auto g1 = mc_mean_power(SurfaceDesign::BDRIS, Scenario::OppositePol, 16, 0.5, 5000,
                                  geometric, FisMode::FrequencyOptimized, 1);
    const auto g2 = mc_mean_power(SurfaceDesign::BDRIS, Scenario::OppositePol, 16, 0.5, 5000,
                                  geometric, FisMode::FrequencyOptimized, 3);
    CHECK(g1.mean_w == g2.mean_w);

    const auto other_seed = mc_mean_power(SurfaceDesign::DRIS, Scenario::SamePol, 32, 0.4, 9000,
                                          ChannelSampler{SamplerKind::IidPhase, 54321});
    CHECK(other_seed.mean_w != a.mean_w);
}

TEST_CASE("geometric ensemble differs from the random-walk model") {
    // The array-factor ensemble concentrates |g_R g_T| differently; the
    // random-walk closed form is not expected to match it.
    const ChannelSampler geometric{SamplerKind::Geometric, 11};
    const auto estimate =
        mc_mean_power(SurfaceDesign::DRIS, Scenario::SamePol, 64, 0.2, 20000, geometric);
    CHECK(estimate.mean_w > 0.0);
    const double closed = closed_form_mean(SurfaceDesign::DRIS, Scenario::SamePol, 64, 0.2);
    CHECK(std::abs(estimate.mean_w - closed) > 10.0 * estimate.standard_error_w);
}

TEST_CASE("closed-form means at pinned values") {
    CHECK(closed_form_mean(SurfaceDesign::DFIS, Scenario::SamePol, 10, 0.0) == 100.0);
    CHECK(closed_form_mean(SurfaceDesign::DFIS, Scenario::OppositePol, 10, 0.0) == 0.0);
    CHECK(closed_form_mean(SurfaceDesign::DFIS, Scenario::OppositePol, 128, 0.0) == 0.0);
    CHECK(closed_form_mean(SurfaceDesign::BDFIS, Scenario::OppositePol, 10, 1.0) ==
          doctest::Approx(400.0).epsilon(1e-12));

    const double n = 64;
    const double chi = 0.2;
    const double walk = n * n + std::sqrt(2 * kTestPi * n) * n + 2 * n;
    CHECK(closed_form_mean(SurfaceDesign::DRIS, Scenario::SamePol, 64, chi) ==
          doctest::Approx((1 + chi) * (1 + chi) / 4 * walk).epsilon(1e-12));
    CHECK(closed_form_mean(SurfaceDesign::DRIS, Scenario::OppositePol, 64, chi) ==
          doctest::Approx(chi * walk).epsilon(1e-12));
    CHECK(closed_form_mean(SurfaceDesign::BDRIS, Scenario::OppositePol, 64, chi) ==
          doctest::Approx((1 + chi) * (1 + chi) / 4 * n * n +
                          (1 + chi) * std::sqrt(kTestPi * chi * n / 2) * n + 2 * chi * n)
              .epsilon(1e-12));
    CHECK(closed_form_mean(SurfaceDesign::BDRIS, Scenario::SamePol, 64, chi) ==
          closed_form_mean(SurfaceDesign::DRIS, Scenario::SamePol, 64, chi));
}

TEST_CASE("gains at pinned values") {
    CHECK(gain(SurfaceDesign::BDFIS, Scenario::OppositePol, 1.0) ==
          doctest::Approx(4.0).epsilon(1e-12));
    CHECK(gain(SurfaceDesign::BDRIS, Scenario::OppositePol, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gain(SurfaceDesign::DFIS, Scenario::SamePol, 0.37) == 4.0);
    CHECK(gain(SurfaceDesign::DFIS, Scenario::OppositePol, 0.37) == 4.0);
    CHECK(gain(SurfaceDesign::BDRIS, Scenario::SamePol, 0.37) == 1.0);
    CHECK(gain(SurfaceDesign::BDFIS, Scenario::SamePol, 0.37) == 4.0);

    CHECK(gain(SurfaceDesign::BDRIS, Scenario::OppositePol, 0.01) ==
          doctest::Approx(25.5025).epsilon(1e-12));
    CHECK(gain(SurfaceDesign::BDFIS, Scenario::OppositePol, 0.01) ==
          doctest::Approx(36.6025).epsilon(1e-12));

    CHECK(std::isinf(gain(SurfaceDesign::BDRIS, Scenario::OppositePol, 0.0)));
    CHECK(std::isinf(gain(SurfaceDesign::BDFIS, Scenario::OppositePol, 0.0)));
    CHECK(gain(SurfaceDesign::DFIS, Scenario::OppositePol, 0.0) == 4.0);
}

TEST_CASE("gains equal the ratio of leading closed-form coefficients") {
    for (const double chi : log_spaced_grid(1e-3, 1.0, 25)) {
        const double baseline =
            scaling_law_coefficient(SurfaceDesign::DRIS, Scenario::OppositePol, chi);
        for (const auto design :
             {SurfaceDesign::BDRIS, SurfaceDesign::DFIS, SurfaceDesign::BDFIS}) {
            const double ratio =
                scaling_law_coefficient(design, Scenario::OppositePol, chi) / baseline;
            CHECK(gain(design, Scenario::OppositePol, chi) ==
                  doctest::Approx(ratio).epsilon(1e-12));
        }
    }
    // coefficients agree with the large-N limit of the closed-form means
    for (const auto design : {SurfaceDesign::DRIS, SurfaceDesign::BDRIS, SurfaceDesign::DFIS,
                              SurfaceDesign::BDFIS}) {
        const long n = 1 << 20;
        const double mean =
            closed_form_mean(design, Scenario::OppositePol, static_cast<int>(n), 0.3);
        const double coeff = scaling_law_coefficient(design, Scenario::OppositePol, 0.3);
        CHECK(std::abs(mean / (static_cast<double>(n) * n) - coeff) <= 5e-3 * coeff);
    }
}

TEST_CASE("chi-dependent gains decrease strictly; the pair-swap cap dominates") {
    const auto grid = log_spaced_grid(1e-3, 1.0, 50);
    const GainCurve curve = gain_curve(grid);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(curve.bdris[i] < curve.bdris[i - 1]);
        CHECK(curve.bdfis[i] < curve.bdfis[i - 1]);
        CHECK(curve.dfis[i] == 4.0);
        CHECK(curve.bdris[i] >= 1.0 - 1e-9);
        CHECK(curve.bdfis[i] >= 1.0 - 1e-9);
    }
    for (const double chi : log_spaced_grid(1e-6, 1.0, 300)) {
        const double swap_coeff =
            scaling_law_coefficient(SurfaceDesign::BDFIS, Scenario::OppositePol, chi);
        CHECK(swap_coeff >=
              std::max(4.0 * chi, (1 + chi) * (1 + chi) / 4.0) - 1e-12);
        // two algebraic routes to the same amplitude
        const double route_a = (1 + chi + 2 * std::sqrt(chi)) * (1 + chi + 2 * std::sqrt(chi));
        const double route_b = std::pow(1 + std::sqrt(chi), 4);
        CHECK(route_a == doctest::Approx(route_b).epsilon(1e-12));
    }
    CHECK(scaling_law_coefficient(SurfaceDesign::BDFIS, Scenario::OppositePol, 1.0) ==
          doctest::Approx(4.0 * 1.0).epsilon(1e-12));

    CHECK_THROWS_AS(gain_curve({0.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(gain_curve({0.5, 1.5}), std::invalid_argument);
}

TEST_CASE("argument validation") {
    const ChannelSampler sampler{};
    CHECK_THROWS_AS(mc_mean_power(SurfaceDesign::Custom, Scenario::SamePol, 16, 0.2, 1000,
                                  sampler),
                    std::invalid_argument);
    CHECK_THROWS_AS(mc_mean_power(SurfaceDesign::DRIS, Scenario::SamePol, 16, 0.2, 99, sampler),
                    std::invalid_argument);
    CHECK_THROWS_AS(mc_mean_power(SurfaceDesign::DRIS, Scenario::SamePol, 15, 0.2, 1000, sampler),
                    std::invalid_argument);
    CHECK_THROWS_AS(mc_mean_power(SurfaceDesign::DRIS, Scenario::SamePol, 16, 1.2, 1000, sampler),
                    std::invalid_argument);
    CHECK_THROWS_AS(closed_form_mean(SurfaceDesign::Custom, Scenario::SamePol, 16, 0.2),
                    std::invalid_argument);
    CHECK_THROWS_AS(gain(SurfaceDesign::BDRIS, Scenario::OppositePol, -0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(log_spaced_grid(0.0, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced_grid(0.1, 1.0, 1), std::invalid_argument);
}
