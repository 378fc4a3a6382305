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

#include "dpis/power.hpp"

#include <cmath>
#include <stdexcept>

namespace dpis {

std::complex<double> effective_channel(const PolarizedChannel& h_r, const ReflectionMatrix& theta,
                                       const PolarizedChannel& h_t) {
    const int n = h_r.size();
    if (n == 0 || h_t.size() != n || theta.size() != n || theta.entries.cols() != n) {
        throw std::invalid_argument("effective_channel: dimension mismatch");
    }

    // Scattered field Theta h_T, then the same bilinear reduction as the
    // specular term so that Theta = I cancels bit-exactly.
    Eigen::VectorXcd scattered;
    if (theta.architecture == ReflectionArchitecture::DiagonalUnitModulus) {
        scattered = theta.entries.diagonal().cwiseProduct(h_t.entries);
    } else {
        scattered = theta.entries * h_t.entries;
    }
    return bilinear_product(h_r.entries, scattered) - channel_product(h_r, h_t);
}

PowerResult received_power(const Scene& scene, const ReflectionMatrix& theta) {
    const ChannelPair channels = build_channels(scene);
    const std::complex<double> h = effective_channel(channels.rx, theta, channels.tx);
    return PowerResult{scene.transmit_power_w * std::norm(h), PowerSource::Evaluated, theta.origin,
                       scene.signal.frequency_hz};
}

PowerResult dris_power_closed_form(const PolarizedChannel& h_r, const PolarizedChannel& h_t) {
    if (h_r.size() != h_t.size() || h_r.size() == 0) {
        throw std::invalid_argument("dris_power_closed_form: dimension mismatch");
    }
    const double sum_abs =
        (h_r.entries.array() * h_t.entries.array()).abs().sum();
    const double specular = std::abs(channel_product(h_r, h_t));
    const double amplitude = sum_abs + specular;
    return PowerResult{amplitude * amplitude, PowerSource::ClosedForm, SurfaceDesign::DRIS,
                       std::nullopt};
}

PowerResult bdris_power_closed_form(const PolarizedChannel& h_r, const PolarizedChannel& h_t) {
    if (h_r.size() != h_t.size() || h_r.size() == 0) {
        throw std::invalid_argument("bdris_power_closed_form: dimension mismatch");
    }
    const double amplitude =
        h_r.entries.norm() * h_t.entries.norm() + std::abs(channel_product(h_r, h_t));
    return PowerResult{amplitude * amplitude, PowerSource::ClosedForm, SurfaceDesign::BDRIS,
                       std::nullopt};
}

double architecture_power_cap(ReflectionArchitecture architecture,
                              const PolarizationConfig& polarization, int n) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("architecture_power_cap: n must be an even integer >= 2");
    }
    const double chi = polarization.chi;
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    if (polarization.same_polarization()) {
        return (1.0 + chi) * (1.0 + chi) * nn;
    }
    if (architecture == ReflectionArchitecture::DiagonalUnitModulus) {
        return 4.0 * chi * nn;
    }
    const double amp = 1.0 + std::sqrt(chi);
    return amp * amp * amp * amp * nn / 4.0;
}

}  // namespace dpis
