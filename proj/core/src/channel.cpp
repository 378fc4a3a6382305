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

#include "dpis/channel.hpp"

#include <cmath>
#include <numbers>

namespace dpis {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
}  // namespace

ArrayGeometry::ArrayGeometry(int num_elements, double element_spacing_m)
    : num_elements(num_elements), element_spacing_m(element_spacing_m) {
    if (num_elements < 2 || num_elements % 2 != 0) {
        throw std::invalid_argument("ArrayGeometry: num_elements must be an even integer >= 2");
    }
    if (!(element_spacing_m > 0.0) || !std::isfinite(element_spacing_m)) {
        throw std::invalid_argument("ArrayGeometry: element spacing must be positive");
    }
}

LinkGeometry::LinkGeometry(double distance_m, double angle_rad)
    : distance_m(distance_m), angle_rad(angle_rad) {
    if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
        throw std::invalid_argument("LinkGeometry: distance must be positive");
    }
    if (!(angle_rad >= -kHalfPi && angle_rad <= kHalfPi)) {
        throw std::invalid_argument("LinkGeometry: angle must lie in [-pi/2, pi/2]");
    }
}

SignalConfig SignalConfig::from_wavelength(double wavelength_m) {
    if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m)) {
        throw std::invalid_argument("SignalConfig: wavelength must be positive");
    }
    return SignalConfig{wavelength_m, kSpeedOfLight / wavelength_m};
}

SignalConfig SignalConfig::from_frequency(double frequency_hz) {
    if (!(frequency_hz > 0.0) || !std::isfinite(frequency_hz)) {
        throw std::invalid_argument("SignalConfig: frequency must be positive");
    }
    return SignalConfig{kSpeedOfLight / frequency_hz, frequency_hz};
}

PolarizationConfig::PolarizationConfig(double chi, Polarization tx, Polarization rx)
    : chi(chi), tx_polarization(tx), rx_polarization(rx) {
    if (!(chi >= 0.0 && chi <= 1.0)) {
        throw std::invalid_argument("PolarizationConfig: chi must lie in [0, 1]");
    }
}

Scene::Scene(ArrayGeometry array, LinkGeometry tx, LinkGeometry rx, SignalConfig signal,
             PolarizationConfig polarization, double transmit_power_w)
    : array(array),
      tx(tx),
      rx(rx),
      signal(signal),
      polarization(polarization),
      transmit_power_w(transmit_power_w) {
    if (!(transmit_power_w > 0.0) || !std::isfinite(transmit_power_w)) {
        throw std::invalid_argument("Scene: transmit power must be positive");
    }
}

Scene Scene::with_wavelength(double wavelength_m) const {
    Scene copy = *this;
    copy.signal = SignalConfig::from_wavelength(wavelength_m);
    return copy;
}

Scene Scene::with_frequency(double frequency_hz) const {
    Scene copy = *this;
    copy.signal = SignalConfig::from_frequency(frequency_hz);
    return copy;
}

SteeringVector steering_vector(const ArrayGeometry& array, const LinkGeometry& link,
                               const SignalConfig& signal, SteeringRole role) {
    const int m = array.pair_count();
    const double wavenumber = 2.0 * kPi / signal.wavelength_m;
    const double sin_angle = std::sin(link.angle_rad);

    Eigen::VectorXcd entries(m);
    for (int n = 1; n <= m; ++n) {
        const double path = link.distance_m - array.element_position_m(n) * sin_angle;
        entries[n - 1] = std::polar(1.0, -wavenumber * path);
    }
    return SteeringVector{std::move(entries), role};
}

Eigen::Vector2d polarization_vector(Polarization polarization, double chi, Side /*side*/) {
    if (!(chi >= 0.0 && chi <= 1.0)) {
        throw std::invalid_argument("polarization_vector: chi must lie in [0, 1]");
    }
    const double leak = std::sqrt(chi);
    if (polarization == Polarization::Vertical) {
        return Eigen::Vector2d(1.0, leak);
    }
    return Eigen::Vector2d(leak, 1.0);
}

PolarizedChannel assemble_channel(const Eigen::Vector2d& p, const SteeringVector& g) {
    const auto m = g.entries.size();
    if (m <= 0) {
        throw std::invalid_argument("assemble_channel: empty steering vector");
    }
    Eigen::VectorXcd entries(2 * m);
    entries.head(m) = p(0) * g.entries;
    entries.tail(m) = p(1) * g.entries;
    const auto orientation = g.role == SteeringRole::ToReceiver ? VectorOrientation::Row
                                                                : VectorOrientation::Column;
    return PolarizedChannel{std::move(entries), orientation};
}

ChannelPair build_channels(const Scene& scene) {
    const auto g_r = steering_vector(scene.array, scene.rx, scene.signal, SteeringRole::ToReceiver);
    const auto g_t =
        steering_vector(scene.array, scene.tx, scene.signal, SteeringRole::FromTransmitter);
    const auto p_r =
        polarization_vector(scene.polarization.rx_polarization, scene.polarization.chi, Side::Rx);
    const auto p_t =
        polarization_vector(scene.polarization.tx_polarization, scene.polarization.chi, Side::Tx);
    return ChannelPair{assemble_channel(p_r, g_r), assemble_channel(p_t, g_t)};
}

std::complex<double> bilinear_product(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("bilinear_product: dimension mismatch");
    }
    return (a.array() * b.array()).sum();
}

}  // namespace dpis
