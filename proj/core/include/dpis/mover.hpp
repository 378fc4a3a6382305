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

#include <optional>
#include <vector>

#include "dpis/channel.hpp"
#include "dpis/power.hpp"
#include "dpis/reflection.hpp"

namespace dpis {

/// Search band [f_min, f_max] in hertz with an inclusive uniform frequency
/// grid of grid_points samples.
struct FrequencyBand {
    FrequencyBand(double f_min_hz, double f_max_hz, int grid_points = 10001);

    double f_min_hz;
    double f_max_hz;
    int grid_points;

    double step_hz() const { return (f_max_hz - f_min_hz) / (grid_points - 1); }
};

enum class FrequencyMethod { ClosedForm, Harmonic, GridSearch, AnyFrequencyOptimal };

/// A selected carrier frequency. For GridSearch (and select_frequency)
/// results, achieved_power is the received power in watts and bound_fraction
/// is achieved_power over the architecture cap. For the alignment-based
/// methods (ClosedForm, Harmonic, AnyFrequencyOptimal without a surface),
/// achieved_power is |g_R g_T|^2 and bound_fraction is (|g_R g_T| / (N/2))^2,
/// the common factor every fixed-surface power is proportional to.
struct FrequencyChoice {
    double frequency_hz;
    double achieved_power;
    double bound_fraction;
    FrequencyMethod method;
};

/// |g_R g_T| for the geometry at the given carrier. Invariant to the link
/// distances, which enter only as a common phase.
double alignment_magnitude(const ArrayGeometry& array, const LinkGeometry& tx,
                           const LinkGeometry& rx, const SignalConfig& signal);

/// The aligning carrier f* = c / (d_A |sin(theta_R) + sin(theta_T)|), at
/// which |g_R g_T| = N/2. When sin(theta_R) + sin(theta_T) = 0 (within 1e-12)
/// every frequency aligns; the result is tagged AnyFrequencyOptimal and
/// carries fallback_band->f_min_hz as a sentinel (or c / (2 d_A), the largest
/// possible aligning frequency, when no band is supplied).
FrequencyChoice optimal_frequency(const ArrayGeometry& array, const LinkGeometry& tx,
                                  const LinkGeometry& rx,
                                  std::optional<FrequencyBand> fallback_band = std::nullopt);

/// All integer multiples of the aligning carrier inside the band, ascending.
/// Every multiple realigns the element phases, so each achieves
/// |g_R g_T| = N/2. Empty when no multiple falls in the band. Throws for a
/// degenerate angle sum.
std::vector<FrequencyChoice> harmonic_frequencies(const ArrayGeometry& array,
                                                  const LinkGeometry& tx, const LinkGeometry& rx,
                                                  const FrequencyBand& band);

/// Exhaustive search of the band grid for the carrier maximizing the received
/// power with a fixed reflection matrix. The scene's own carrier is ignored;
/// ties break toward the lowest frequency.
FrequencyChoice grid_search_frequency(const Scene& scene, const ReflectionMatrix& theta,
                                      const FrequencyBand& band);

/// Frequency selection policy for a fixed surface: in-band harmonics of the
/// aligning carrier when they exist (best one, lowest on ties), otherwise a
/// grid search; a degenerate angle sum evaluates at f_min since every carrier
/// aligns. achieved_power is always the evaluated received power in watts.
FrequencyChoice select_frequency(const Scene& scene, const ReflectionMatrix& theta,
                                 const FrequencyBand& band);

}  // namespace dpis
