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

#include <filesystem>
#include <string>

#include "dpis/channel.hpp"
#include "dpis/reflection.hpp"

namespace dpis {

/// Scene JSON schema (angles in radians, lengths in meters):
/// {
///   "num_elements": 64,
///   "element_spacing_m": 0.05,
///   "tx": {"distance_m": 20.0, "angle_rad": 0.5236},
///   "rx": {"distance_m": 10.0, "angle_rad": 0.5236},
///   "wavelength_m": 0.05,
///   "chi": 0.2,
///   "tx_polarization": "vertical",
///   "rx_polarization": "horizontal",
///   "transmit_power_w": 1.0
/// }
/// transmit_power_w is optional (default 1); every other field is required
/// and unknown fields are rejected.
Scene scene_from_json_string(const std::string& text);
Scene scene_from_json_file(const std::filesystem::path& path);
std::string scene_to_json_string(const Scene& scene);

/// Reflection-matrix export: architecture and origin tags, the dimension, and
/// the entries as a flat row-major array of interleaved [re, im] pairs.
std::string reflection_to_json_string(const ReflectionMatrix& theta);

std::string to_string(ReflectionArchitecture architecture);
std::string to_string(SurfaceDesign design);
std::string to_string(Polarization polarization);

}  // namespace dpis
