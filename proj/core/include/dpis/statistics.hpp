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
#include <random>
#include <utility>
#include <vector>

#include "dpis/channel.hpp"
#include "dpis/reflection.hpp"

namespace dpis {

enum class Scenario { SamePol, OppositePol };

/// Channel ensembles for Monte Carlo estimation. IidPhase draws every
/// steering entry as an independent unit phasor, which realizes g_R g_T as an
/// N/2-step uniform-phase random walk (the premise behind the closed-form
/// means). Geometric draws physical angles uniform on [-pi/2, pi/2] and
/// distances with uniform carrier-phase offsets, then builds steering vectors
/// through the channel model; its inner products follow the array factor, not
/// the random-walk model, so it is not expected to match the closed forms.
enum class SamplerKind { IidPhase, Geometric };

struct ChannelSampler {
    SamplerKind kind = SamplerKind::IidPhase;
    std::uint64_t seed = 42;

    // Geometric ensemble only.
    double wavelength_m = 0.05;
    double spacing_wavelengths = 0.5;
    double reference_distance_m = 10.0;
};

/// How fixed surfaces are scored inside Monte Carlo runs. FrequencyOptimized
/// assumes the carrier is re-aligned for every realization (|g_R g_T| = N/2),
/// giving the deterministic cap; FixedFrequency evaluates the fixed matrix at
/// the realization's sampled channels, quantifying the loss without carrier
/// mobility.
enum class FisMode { FrequencyOptimized, FixedFrequency };

struct MeanPowerEstimate {
    double mean_w;
    double standard_error_w;
    long trials;
    SurfaceDesign architecture;
    Scenario scenario;
};

struct GainCurve {
    std::vector<double> chi_values;
    std::vector<double> bdris;
    std::vector<double> dfis;
    std::vector<double> bdfis;
};

/// Deterministic stream seed for a (seed, index) pair; used to give each
/// Monte Carlo block its own generator so results do not depend on the
/// worker count.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) from the generator's top 53 bits. Bit-stable
/// across standard libraries, unlike std::uniform_real_distribution.
double uniform01(std::mt19937_64& rng);

/// One channel realization (h_R, h_T) for N elements. SamePol uses a
/// vertical transmitter and receiver; OppositePol a vertical transmitter and
/// horizontal receiver.
std::pair<PolarizedChannel, PolarizedChannel> sample_channels(const ChannelSampler& sampler,
                                                              std::mt19937_64& rng, int n,
                                                              double chi, Scenario scenario);

/// Received power of one design for one channel realization, at unit
/// transmit power. RIS designs are re-optimized per realization (their
/// optimal-power identities are exercised against the explicit constructions
/// in the test suite); fixed designs follow fis_mode.
double realization_power(SurfaceDesign design, Scenario scenario, double chi,
                         const PolarizedChannel& h_r, const PolarizedChannel& h_t,
                         FisMode fis_mode = FisMode::FrequencyOptimized);

/// Monte Carlo mean received power with standard error. Trials are split
/// into fixed blocks, each with a generator derived from (sampler.seed,
/// block); the reduction runs in block order, so the estimate is bit-identical
/// for any worker count (workers = 0 picks the hardware concurrency).
MeanPowerEstimate mc_mean_power(SurfaceDesign design, Scenario scenario, int n, double chi,
                                long trials, const ChannelSampler& sampler,
                                FisMode fis_mode = FisMode::FrequencyOptimized, int workers = 0);

/// Published mean received power: the random-walk closed forms for the
/// reconfigurable designs, the deterministic aligned caps for the fixed ones.
double closed_form_mean(SurfaceDesign design, Scenario scenario, int n, double chi);

/// Coefficient of the leading N^2 term of closed_form_mean.
double scaling_law_coefficient(SurfaceDesign design, Scenario scenario, double chi);

/// Large-N gain of a design over the re-optimized diagonal baseline.
/// Same polarization: 1 (BDRIS) or 4 (fixed designs). Opposite polarization:
/// (1+chi)^2/(4 chi) for BDRIS, 4 for DFIS, (1+chi+2 sqrt(chi))^2/(4 chi) for
/// BDFIS; chi = 0 returns infinity for the chi-dependent gains.
double gain(SurfaceDesign design, Scenario scenario, double chi);

/// Gains over the diagonal baseline for every chi in the grid.
GainCurve gain_curve(const std::vector<double>& chi_values,
                     Scenario scenario = Scenario::OppositePol);

/// Logarithmically spaced grid with inclusive endpoints; lo > 0.
std::vector<double> log_spaced_grid(double lo, double hi, int points);

}  // namespace dpis
