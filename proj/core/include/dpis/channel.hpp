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

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace dpis {

/// Speed of light in vacuum [m/s]. The only global physical constant.
inline constexpr double kSpeedOfLight = 299792458.0;

enum class Polarization { Vertical, Horizontal };
enum class Side { Tx, Rx };
enum class SteeringRole { FromTransmitter, ToReceiver };
enum class VectorOrientation { Row, Column };

/// Uniform linear array of N dual-polarized elements. The first N/2 elements
/// are vertically polarized, the last N/2 horizontally polarized; element n
/// and element n + N/2 form a co-located cross-polarized pair. Element n
/// (1-based) sits at x_n = (n - (N+1)/2) * d_A on the array axis.
struct ArrayGeometry {
    ArrayGeometry(int num_elements, double element_spacing_m);

    int num_elements;          // N, even, >= 2
    double element_spacing_m;  // d_A > 0

    int pair_count() const { return num_elements / 2; }
    double element_position_m(int n_one_based) const {
        return (n_one_based - 0.5 * (num_elements + 1)) * element_spacing_m;
    }
};

/// Far-field position of one link endpoint relative to the surface center:
/// distance along boresight and angle from the surface normal in [-pi/2, pi/2].
struct LinkGeometry {
    LinkGeometry(double distance_m, double angle_rad);

    double distance_m;
    double angle_rad;
};

/// Carrier wavelength/frequency pair, kept consistent with f * lambda = c.
struct SignalConfig {
    double wavelength_m;
    double frequency_hz;

    static SignalConfig from_wavelength(double wavelength_m);
    static SignalConfig from_frequency(double frequency_hz);
};

/// Cross-polar leakage model. chi in [0, 1] is the inverse of the XPD; the
/// derived 2-vectors have entries {1, sqrt(chi)} with the 1 on the co-polar
/// slot.
struct PolarizationConfig {
    PolarizationConfig(double chi, Polarization tx, Polarization rx);

    double chi;
    Polarization tx_polarization;
    Polarization rx_polarization;

    bool same_polarization() const { return tx_polarization == rx_polarization; }
};

/// Per-location LOS phase response of the array toward one far-field
/// direction. Length is N/2 (one entry per co-located element pair); every
/// entry has unit modulus.
struct SteeringVector {
    Eigen::VectorXcd entries;
    SteeringRole role;
};

/// Dual-polarized channel vector of length N, the Kronecker product of a
/// polarization 2-vector and a steering vector. Row orientation for the
/// surface-to-receiver side, Column for the transmitter-to-surface side.
struct PolarizedChannel {
    Eigen::VectorXcd entries;
    VectorOrientation orientation;

    int size() const { return static_cast<int>(entries.size()); }
};

/// Full deterministic description of one link: geometry, carrier,
/// polarization and transmit power.
struct Scene {
    Scene(ArrayGeometry array, LinkGeometry tx, LinkGeometry rx, SignalConfig signal,
          PolarizationConfig polarization, double transmit_power_w = 1.0);

    ArrayGeometry array;
    LinkGeometry tx;
    LinkGeometry rx;
    SignalConfig signal;
    PolarizationConfig polarization;
    double transmit_power_w;

    /// Copy of the scene with the carrier replaced; everything else unchanged.
    Scene with_wavelength(double wavelength_m) const;
    Scene with_frequency(double frequency_hz) const;
};

struct ChannelPair {
    PolarizedChannel rx;  // h_R, row
    PolarizedChannel tx;  // h_T, column
};

/// Entry n (1-based) is exp(-j 2pi/lambda * [d - (n - (N+1)/2) d_A sin(theta)]),
/// for n = 1..N/2.
SteeringVector steering_vector(const ArrayGeometry& array, const LinkGeometry& link,
                               const SignalConfig& signal, SteeringRole role);

/// [1, sqrt(chi)] for a vertically polarized endpoint, [sqrt(chi), 1] for a
/// horizontal one. The side tag documents row (Rx) vs column (Tx) use.
Eigen::Vector2d polarization_vector(Polarization polarization, double chi, Side side);

/// Kronecker product p (x) g; orientation follows the steering role.
PolarizedChannel assemble_channel(const Eigen::Vector2d& p, const SteeringVector& g);

/// Both channel vectors of a scene.
ChannelPair build_channels(const Scene& scene);

/// Unconjugated product sum_i a_i * b_i (a row times a column, not an inner
/// product).
std::complex<double> bilinear_product(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// h_R h_T, the cascade product that also drives the specular term.
inline std::complex<double> channel_product(const PolarizedChannel& h_r,
                                            const PolarizedChannel& h_t) {
    return bilinear_product(h_r.entries, h_t.entries);
}

}  // namespace dpis
