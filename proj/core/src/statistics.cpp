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

#include "dpis/statistics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "dpis/power.hpp"

namespace dpis {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kBlockTrials = 4096;  // fixed block size keeps streams worker-independent

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double uniform_phase(std::mt19937_64& rng) { return 2.0 * kPi * uniform01(rng); }

Eigen::VectorXcd iid_phase_vector(std::mt19937_64& rng, int m) {
    Eigen::VectorXcd v(m);
    for (int i = 0; i < m; ++i) {
        v[i] = std::polar(1.0, uniform_phase(rng));
    }
    return v;
}

PolarizationConfig scenario_polarization(Scenario scenario, double chi) {
    return scenario == Scenario::SamePol
               ? PolarizationConfig(chi, Polarization::Vertical, Polarization::Vertical)
               : PolarizationConfig(chi, Polarization::Vertical, Polarization::Horizontal);
}

// Received power of the polarization-swap matrix [[0, -I], [-I, 0]] without
// materializing it: Theta h_T flips the halves with a sign change.
double bdfis_fixed_power(const PolarizedChannel& h_r, const PolarizedChannel& h_t) {
    const auto m = h_t.entries.size() / 2;
    const std::complex<double> reflected =
        -(h_r.entries.head(m).array() * h_t.entries.tail(m).array()).sum() -
        (h_r.entries.tail(m).array() * h_t.entries.head(m).array()).sum();
    return std::norm(reflected - channel_product(h_r, h_t));
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ (index + 1) * 0x9E3779B97F4A7C15ull);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::pair<PolarizedChannel, PolarizedChannel> sample_channels(const ChannelSampler& sampler,
                                                              std::mt19937_64& rng, int n,
                                                              double chi, Scenario scenario) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("sample_channels: n must be an even integer >= 2");
    }
    const int m = n / 2;
    const PolarizationConfig pol = scenario_polarization(scenario, chi);
    const auto p_r = polarization_vector(pol.rx_polarization, chi, Side::Rx);
    const auto p_t = polarization_vector(pol.tx_polarization, chi, Side::Tx);

    if (sampler.kind == SamplerKind::IidPhase) {
        SteeringVector g_r{iid_phase_vector(rng, m), SteeringRole::ToReceiver};
        SteeringVector g_t{iid_phase_vector(rng, m), SteeringRole::FromTransmitter};
        return {assemble_channel(p_r, g_r), assemble_channel(p_t, g_t)};
    }

    // Geometric ensemble: physical angles and carrier-phase distance offsets.
    const ArrayGeometry array(n, sampler.spacing_wavelengths * sampler.wavelength_m);
    const SignalConfig signal = SignalConfig::from_wavelength(sampler.wavelength_m);
    const double theta_r = kPi * (uniform01(rng) - 0.5);
    const double theta_t = kPi * (uniform01(rng) - 0.5);
    const double d_r = sampler.reference_distance_m + uniform01(rng) * sampler.wavelength_m;
    const double d_t = sampler.reference_distance_m + uniform01(rng) * sampler.wavelength_m;
    const auto g_r =
        steering_vector(array, LinkGeometry(d_r, theta_r), signal, SteeringRole::ToReceiver);
    const auto g_t =
        steering_vector(array, LinkGeometry(d_t, theta_t), signal, SteeringRole::FromTransmitter);
    return {assemble_channel(p_r, g_r), assemble_channel(p_t, g_t)};
}

double realization_power(SurfaceDesign design, Scenario scenario, double chi,
                         const PolarizedChannel& h_r, const PolarizedChannel& h_t,
                         FisMode fis_mode) {
    switch (design) {
        case SurfaceDesign::DRIS:
            return dris_power_closed_form(h_r, h_t).power_w;
        case SurfaceDesign::BDRIS:
            return bdris_power_closed_form(h_r, h_t).power_w;
        case SurfaceDesign::DFIS:
            if (fis_mode == FisMode::FrequencyOptimized) {
                return architecture_power_cap(ReflectionArchitecture::DiagonalUnitModulus,
                                              scenario_polarization(scenario, chi), h_r.size());
            }
            // Theta = -I doubles the specular term.
            return 4.0 * std::norm(channel_product(h_r, h_t));
        case SurfaceDesign::BDFIS:
            if (fis_mode == FisMode::FrequencyOptimized) {
                return architecture_power_cap(ReflectionArchitecture::Unitary,
                                              scenario_polarization(scenario, chi), h_r.size());
            }
            return bdfis_fixed_power(h_r, h_t);
        case SurfaceDesign::Custom:
            break;
    }
    throw std::invalid_argument("realization_power: unknown design");
}

MeanPowerEstimate mc_mean_power(SurfaceDesign design, Scenario scenario, int n, double chi,
                                long trials, const ChannelSampler& sampler, FisMode fis_mode,
                                int workers) {
    if (design == SurfaceDesign::Custom) {
        throw std::invalid_argument("mc_mean_power: unknown design");
    }
    if (trials < 100) {
        throw std::invalid_argument("mc_mean_power: trials must be >= 100");
    }
    if (!(chi >= 0.0 && chi <= 1.0)) {
        throw std::invalid_argument("mc_mean_power: chi must lie in [0, 1]");
    }
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("mc_mean_power: n must be an even integer >= 2");
    }

    const bool fis = design == SurfaceDesign::DFIS || design == SurfaceDesign::BDFIS;
    if (fis && fis_mode == FisMode::FrequencyOptimized) {
        // The per-realization power is the deterministic aligned cap.
        const auto architecture = design == SurfaceDesign::DFIS
                                      ? ReflectionArchitecture::DiagonalUnitModulus
                                      : ReflectionArchitecture::Unitary;
        const double cap =
            architecture_power_cap(architecture, scenario_polarization(scenario, chi), n);
        return MeanPowerEstimate{cap, 0.0, trials, design, scenario};
    }

    const long blocks = (trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<double> block_sum(blocks, 0.0);
    std::vector<double> block_sumsq(blocks, 0.0);

    const auto run_block = [&](long b) {
        std::mt19937_64 rng(derive_stream_seed(sampler.seed, static_cast<std::uint64_t>(b)));
        const long begin = b * kBlockTrials;
        const long end = std::min(trials, begin + kBlockTrials);
        double sum = 0.0;
        double sumsq = 0.0;
        for (long t = begin; t < end; ++t) {
            const auto [h_r, h_t] = sample_channels(sampler, rng, n, chi, scenario);
            const double p = realization_power(design, scenario, chi, h_r, h_t, fis_mode);
            sum += p;
            sumsq += p * p;
        }
        block_sum[b] = sum;
        block_sumsq[b] = sumsq;
    };

    int thread_count =
        workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    thread_count = static_cast<int>(std::clamp<long>(thread_count, 1, blocks));
    if (thread_count == 1) {
        for (long b = 0; b < blocks; ++b) {
            run_block(b);
        }
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (int w = 0; w < thread_count; ++w) {
            pool.emplace_back([&] {
                for (long b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
                    run_block(b);
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    // Reduce in block order: the result is independent of scheduling.
    double sum = 0.0;
    double sumsq = 0.0;
    for (long b = 0; b < blocks; ++b) {
        sum += block_sum[b];
        sumsq += block_sumsq[b];
    }
    const double mean = sum / static_cast<double>(trials);
    const double variance =
        std::max(0.0, (sumsq - static_cast<double>(trials) * mean * mean) /
                          static_cast<double>(trials - 1));
    const double standard_error = std::sqrt(variance / static_cast<double>(trials));
    return MeanPowerEstimate{mean, standard_error, trials, design, scenario};
}

double closed_form_mean(SurfaceDesign design, Scenario scenario, int n, double chi) {
    if (!(chi >= 0.0 && chi <= 1.0)) {
        throw std::invalid_argument("closed_form_mean: chi must lie in [0, 1]");
    }
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("closed_form_mean: n must be an even integer >= 2");
    }
    const double nd = static_cast<double>(n);
    const double walk_terms = nd * nd + std::sqrt(2.0 * kPi * nd) * nd + 2.0 * nd;
    const bool same = scenario == Scenario::SamePol;

    switch (design) {
        case SurfaceDesign::DRIS:
            return same ? (1.0 + chi) * (1.0 + chi) / 4.0 * walk_terms : chi * walk_terms;
        case SurfaceDesign::BDRIS:
            if (same) {
                return (1.0 + chi) * (1.0 + chi) / 4.0 * walk_terms;
            }
            return (1.0 + chi) * (1.0 + chi) / 4.0 * nd * nd +
                   (1.0 + chi) * std::sqrt(kPi * chi * nd / 2.0) * nd + 2.0 * chi * nd;
        case SurfaceDesign::DFIS:
            return same ? (1.0 + chi) * (1.0 + chi) * nd * nd : 4.0 * chi * nd * nd;
        case SurfaceDesign::BDFIS: {
            if (same) {
                return (1.0 + chi) * (1.0 + chi) * nd * nd;
            }
            const double amp = 1.0 + chi + 2.0 * std::sqrt(chi);
            return amp * amp * nd * nd / 4.0;
        }
        case SurfaceDesign::Custom:
            break;
    }
    throw std::invalid_argument("closed_form_mean: unknown design");
}

double scaling_law_coefficient(SurfaceDesign design, Scenario scenario, double chi) {
    if (!(chi >= 0.0 && chi <= 1.0)) {
        throw std::invalid_argument("scaling_law_coefficient: chi must lie in [0, 1]");
    }
    const bool same = scenario == Scenario::SamePol;
    switch (design) {
        case SurfaceDesign::DRIS:
            return same ? (1.0 + chi) * (1.0 + chi) / 4.0 : chi;
        case SurfaceDesign::BDRIS:
            return (1.0 + chi) * (1.0 + chi) / 4.0;
        case SurfaceDesign::DFIS:
            return same ? (1.0 + chi) * (1.0 + chi) : 4.0 * chi;
        case SurfaceDesign::BDFIS: {
            if (same) {
                return (1.0 + chi) * (1.0 + chi);
            }
            const double amp = 1.0 + chi + 2.0 * std::sqrt(chi);
            return amp * amp / 4.0;
        }
        case SurfaceDesign::Custom:
            break;
    }
    throw std::invalid_argument("scaling_law_coefficient: unknown design");
}

double gain(SurfaceDesign design, Scenario scenario, double chi) {
    if (!(chi >= 0.0 && chi <= 1.0)) {
        throw std::invalid_argument("gain: chi must lie in [0, 1]");
    }
    if (scenario == Scenario::SamePol) {
        switch (design) {
            case SurfaceDesign::DRIS:
            case SurfaceDesign::BDRIS:
                return 1.0;
            case SurfaceDesign::DFIS:
            case SurfaceDesign::BDFIS:
                return 4.0;
            case SurfaceDesign::Custom:
                break;
        }
        throw std::invalid_argument("gain: unknown design");
    }
    switch (design) {
        case SurfaceDesign::DRIS:
            return 1.0;
        case SurfaceDesign::DFIS:
            return 4.0;
        case SurfaceDesign::BDRIS:
            if (chi == 0.0) {
                return std::numeric_limits<double>::infinity();
            }
            return (1.0 + chi) * (1.0 + chi) / (4.0 * chi);
        case SurfaceDesign::BDFIS: {
            if (chi == 0.0) {
                return std::numeric_limits<double>::infinity();
            }
            const double amp = 1.0 + chi + 2.0 * std::sqrt(chi);
            return amp * amp / (4.0 * chi);
        }
        case SurfaceDesign::Custom:
            break;
    }
    throw std::invalid_argument("gain: unknown design");
}

GainCurve gain_curve(const std::vector<double>& chi_values, Scenario scenario) {
    GainCurve curve;
    curve.chi_values = chi_values;
    curve.bdris.reserve(chi_values.size());
    curve.dfis.reserve(chi_values.size());
    curve.bdfis.reserve(chi_values.size());
    for (const double chi : chi_values) {
        if (!(chi > 0.0 && chi <= 1.0)) {
            throw std::invalid_argument("gain_curve: chi values must lie in (0, 1]");
        }
        curve.bdris.push_back(gain(SurfaceDesign::BDRIS, scenario, chi));
        curve.dfis.push_back(gain(SurfaceDesign::DFIS, scenario, chi));
        curve.bdfis.push_back(gain(SurfaceDesign::BDFIS, scenario, chi));
    }
    return curve;
}

std::vector<double> log_spaced_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo)) {
        throw std::invalid_argument("log_spaced_grid: need 0 < lo < hi");
    }
    if (points < 2) {
        throw std::invalid_argument("log_spaced_grid: points must be >= 2");
    }
    std::vector<double> grid(points);
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    for (int i = 0; i < points; ++i) {
        grid[i] = std::exp(log_lo + (log_hi - log_lo) * i / (points - 1));
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

}  // namespace dpis
