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

#include <complex>
#include <optional>

#include "dpis/channel.hpp"
#include "dpis/reflection.hpp"

namespace dpis {

enum class PowerSource { ClosedForm, Evaluated, MonteCarloMean };

/// Received power with its provenance and the reflection design / carrier
/// that produced it.
struct PowerResult {
    double power_w;
    PowerSource source;
    SurfaceDesign theta_origin;
    std::optional<double> frequency_hz;
};

/// End-to-end scalar channel h = h_R Theta h_T - h_R h_T. The second term is
/// the specular reflection of the surface body, present for every Theta.
std::complex<double> effective_channel(const PolarizedChannel& h_r, const ReflectionMatrix& theta,
                                       const PolarizedChannel& h_t);

/// P_R = P_T |h|^2 for the scene's channels and the given reflection matrix.
PowerResult received_power(const Scene& scene, const ReflectionMatrix& theta);

/// Power of the optimal per-element phase design without constructing it:
/// (sum_n |h_R[n] h_T[n]| + |h_R h_T|)^2.
PowerResult dris_power_closed_form(const PolarizedChannel& h_r, const PolarizedChannel& h_t);

/// Power of the optimal unitary design: (|h_R| |h_T| + |h_R h_T|)^2.
PowerResult bdris_power_closed_form(const PolarizedChannel& h_r, const PolarizedChannel& h_t);

/// Upper bound on the received power of any fixed surface in the given
/// constraint class once the carrier is aligned (|g_R g_T| = N/2), at unit
/// transmit power. Diagonal: (1+chi)^2 N^2 same-pol, 4 chi N^2 opposite-pol.
/// Unitary: (1+chi)^2 N^2 same-pol, (1+sqrt(chi))^4 N^2 / 4 opposite-pol.
double architecture_power_cap(ReflectionArchitecture architecture,
                              const PolarizationConfig& polarization, int n);

}  // namespace dpis
