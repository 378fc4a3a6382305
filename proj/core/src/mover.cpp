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

#include "dpis/mover.hpp"

#include <cmath>
#include <stdexcept>

namespace dpis {

namespace {

constexpr double kDegenerateAngleSumTolerance = 1e-12;

double angle_sum(const LinkGeometry& tx, const LinkGeometry& rx) {
    return std::sin(tx.angle_rad) + std::sin(rx.angle_rad);
}

double alignment_fraction(double magnitude, int n) {
    const double peak = n / 2.0;
    const double ratio = magnitude / peak;
    return ratio * ratio;
}

}  // namespace

FrequencyBand::FrequencyBand(double f_min_hz, double f_max_hz, int grid_points)
    : f_min_hz(f_min_hz), f_max_hz(f_max_hz), grid_points(grid_points) {
    if (!(f_min_hz > 0.0) || !(f_max_hz > f_min_hz)) {
        throw std::invalid_argument("FrequencyBand: need 0 < f_min < f_max");
    }
    if (grid_points < 2) {
        throw std::invalid_argument("FrequencyBand: grid_points must be >= 2");
    }
}

double alignment_magnitude(const ArrayGeometry& array, const LinkGeometry& tx,
                           const LinkGeometry& rx, const SignalConfig& signal) {
    const auto g_r = steering_vector(array, rx, signal, SteeringRole::ToReceiver);
    const auto g_t = steering_vector(array, tx, signal, SteeringRole::FromTransmitter);
    return std::abs(bilinear_product(g_r.entries, g_t.entries));
}

FrequencyChoice optimal_frequency(const ArrayGeometry& array, const LinkGeometry& tx,
                                  const LinkGeometry& rx,
                                  std::optional<FrequencyBand> fallback_band) {
    const double s = angle_sum(tx, rx);
    const int n = array.num_elements;

    if (std::abs(s) <= kDegenerateAngleSumTolerance) {
        // Every element sees the same phase, so |g_R g_T| = N/2 at any carrier.
        const double sentinel = fallback_band ? fallback_band->f_min_hz
                                              : kSpeedOfLight / (2.0 * array.element_spacing_m);
        const double magnitude =
            alignment_magnitude(array, tx, rx, SignalConfig::from_frequency(sentinel));
        return FrequencyChoice{sentinel, magnitude * magnitude, alignment_fraction(magnitude, n),
                               FrequencyMethod::AnyFrequencyOptimal};
    }

    const double aligned = kSpeedOfLight / (array.element_spacing_m * std::abs(s));
    const double magnitude =
        alignment_magnitude(array, tx, rx, SignalConfig::from_frequency(aligned));
    return FrequencyChoice{aligned, magnitude * magnitude, alignment_fraction(magnitude, n),
                           FrequencyMethod::ClosedForm};
}

std::vector<FrequencyChoice> harmonic_frequencies(const ArrayGeometry& array,
                                                  const LinkGeometry& tx, const LinkGeometry& rx,
                                                  const FrequencyBand& band) {
    const double s = angle_sum(tx, rx);
    if (std::abs(s) <= kDegenerateAngleSumTolerance) {
        throw std::invalid_argument("harmonic_frequencies: degenerate angle sum, every carrier aligns");
    }

    const double base = kSpeedOfLight / (array.element_spacing_m * std::abs(s));
    const int n = array.num_elements;

    // Small relative slack keeps band-edge multiples in.
    const double k_lo = std::ceil(band.f_min_hz / base * (1.0 - 1e-12));
    const double k_hi = std::floor(band.f_max_hz / base * (1.0 + 1e-12));

    std::vector<FrequencyChoice> result;
    for (double k = std::max(1.0, k_lo); k <= k_hi; k += 1.0) {
        const double f = k * base;
        const double magnitude =
            alignment_magnitude(array, tx, rx, SignalConfig::from_frequency(f));
        result.push_back(FrequencyChoice{f, magnitude * magnitude,
                                         alignment_fraction(magnitude, n),
                                         FrequencyMethod::Harmonic});
    }
    return result;
}

FrequencyChoice grid_search_frequency(const Scene& scene, const ReflectionMatrix& theta,
                                      const FrequencyBand& band) {
    const double step = band.step_hz();

    double best_frequency = band.f_min_hz;
    double best_power = -1.0;
    for (int i = 0; i < band.grid_points; ++i) {
        const double f =
            i == band.grid_points - 1 ? band.f_max_hz : band.f_min_hz + i * step;
        const double p = received_power(scene.with_frequency(f), theta).power_w;
        if (p > best_power) {
            best_power = p;
            best_frequency = f;
        }
    }

    const double cap = scene.transmit_power_w *
                       architecture_power_cap(theta.architecture, scene.polarization,
                                              scene.array.num_elements);
    return FrequencyChoice{best_frequency, best_power, best_power / cap,
                           FrequencyMethod::GridSearch};
}

FrequencyChoice select_frequency(const Scene& scene, const ReflectionMatrix& theta,
                                 const FrequencyBand& band) {
    const double cap = scene.transmit_power_w *
                       architecture_power_cap(theta.architecture, scene.polarization,
                                              scene.array.num_elements);

    const double s = angle_sum(scene.tx, scene.rx);
    if (std::abs(s) <= kDegenerateAngleSumTolerance) {
        const double p = received_power(scene.with_frequency(band.f_min_hz), theta).power_w;
        return FrequencyChoice{band.f_min_hz, p, p / cap, FrequencyMethod::AnyFrequencyOptimal};
    }

    const auto harmonics = harmonic_frequencies(scene.array, scene.tx, scene.rx, band);
    if (!harmonics.empty()) {
        double best_frequency = harmonics.front().frequency_hz;
        double best_power = -1.0;
        for (const auto& h : harmonics) {
            const double p = received_power(scene.with_frequency(h.frequency_hz), theta).power_w;
            if (p > best_power) {
                best_power = p;
                best_frequency = h.frequency_hz;
            }
        }
        return FrequencyChoice{best_frequency, best_power, best_power / cap,
                               FrequencyMethod::Harmonic};
    }
    return grid_search_frequency(scene, theta, band);
}

}  // namespace dpis
