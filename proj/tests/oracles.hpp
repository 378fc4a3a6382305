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
//
// Test-only reference evaluators, written independently of the library code
// paths they are used to check.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "dpis/channel.hpp"
#include "dpis/statistics.hpp"

namespace dpis::test {

inline constexpr double kTestPi = 3.14159265358979323846;

/// Phase-response entry n (1-based, n = 1..N/2) evaluated directly from the
/// element coordinate, with explicit cos/sin instead of std::polar.
inline std::complex<double> oracle_steering_entry(int num_elements, double spacing_m,
                                                  double distance_m, double angle_rad,
                                                  double wavelength_m, int n_one_based) {
    const double x = (n_one_based - (num_elements + 1) / 2.0) * spacing_m;
    const double phase = -2.0 * kTestPi / wavelength_m * (distance_m - x * std::sin(angle_rad));
    return {std::cos(phase), std::sin(phase)};
}

/// |g_R g_T| via the array-factor ratio |sin(M u / 2) / sin(u / 2)| with
/// u = 2 pi d_A (sin(theta_R) + sin(theta_T)) f / c; the removable
/// singularities evaluate to M.
inline double oracle_alignment(int num_elements, double spacing_m, double angle_tx_rad,
                               double angle_rx_rad, double frequency_hz) {
    const int m = num_elements / 2;
    const double s = std::sin(angle_tx_rad) + std::sin(angle_rx_rad);
    const double u = 2.0 * kTestPi * spacing_m * s * frequency_hz / 299792458.0;
    const double denom = std::sin(u / 2.0);
    if (std::abs(denom) < 1e-9) {
        // near a grating alignment; fall back to the explicit sum
        std::complex<double> sum = 0.0;
        for (int n = 1; n <= m; ++n) {
            sum += std::complex<double>(std::cos(n * u), std::sin(n * u));
        }
        return std::abs(sum);
    }
    return std::abs(std::sin(m * u / 2.0) / denom);
}

/// Received power of the per-element phase design evaluated the long way:
/// explicit phase shifts, explicit diagonal matrix, plain-loop cascade.
inline double oracle_dris_power(const Eigen::VectorXcd& h_r, const Eigen::VectorXcd& h_t) {
    const int n = static_cast<int>(h_r.size());
    std::complex<double> specular = 0.0;
    for (int i = 0; i < n; ++i) {
        specular += h_r[i] * h_t[i];
    }
    const double common = specular == std::complex<double>(0.0)
                              ? kTestPi
                              : std::atan2((-specular).imag(), (-specular).real());

    std::complex<double> reflected = 0.0;
    for (int i = 0; i < n; ++i) {
        const std::complex<double> product = h_r[i] * h_t[i];
        double shift = 0.0;
        if (std::abs(product) != 0.0) {
            shift = -std::atan2(product.imag(), product.real()) + common;
        }
        reflected += h_r[i] * std::complex<double>(std::cos(shift), std::sin(shift)) * h_t[i];
    }
    const std::complex<double> h = reflected - specular;
    return h.real() * h.real() + h.imag() * h.imag();
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Random well-posed scene for property tests.
inline Scene random_scene(std::mt19937_64& rng, int n, std::optional<Scenario> scenario,
                          double chi_min = 0.0, double chi_max = 1.0) {
    const ArrayGeometry array(n, uniform_in(rng, 0.01, 0.1));
    const LinkGeometry tx(uniform_in(rng, 5.0, 50.0), uniform_in(rng, -kTestPi / 2, kTestPi / 2));
    const LinkGeometry rx(uniform_in(rng, 5.0, 50.0), uniform_in(rng, -kTestPi / 2, kTestPi / 2));
    const SignalConfig signal = SignalConfig::from_frequency(uniform_in(rng, 1e9, 10e9));
    const double chi = uniform_in(rng, chi_min, chi_max);
    Polarization tx_pol = Polarization::Vertical;
    Polarization rx_pol = Polarization::Vertical;
    if (scenario.has_value()) {
        rx_pol = *scenario == Scenario::SamePol ? Polarization::Vertical
                                                : Polarization::Horizontal;
    } else {
        tx_pol = uniform01(rng) < 0.5 ? Polarization::Vertical : Polarization::Horizontal;
        rx_pol = uniform01(rng) < 0.5 ? Polarization::Vertical : Polarization::Horizontal;
    }
    return Scene(array, tx, rx, signal, PolarizationConfig(chi, tx_pol, rx_pol));
}

/// Scene whose aligning carrier lies inside [1.2, 18] GHz with a
/// non-degenerate angle sum.
inline Scene random_alignable_scene(std::mt19937_64& rng, int n, Scenario scenario) {
    for (;;) {
        Scene scene = random_scene(rng, n, scenario);
        const double s = std::sin(scene.tx.angle_rad) + std::sin(scene.rx.angle_rad);
        if (std::abs(s) < 0.05) {
            continue;
        }
        const double aligned = kSpeedOfLight / (scene.array.element_spacing_m * std::abs(s));
        if (aligned >= 1.2e9 && aligned <= 18e9) {
            return scene;
        }
    }
}

inline double rel_gap(double value, double reference) {
    return std::abs(value - reference) / std::abs(reference);
}

}  // namespace dpis::test
