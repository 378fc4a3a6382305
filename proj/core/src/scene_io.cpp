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

#include "dpis/scene_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dpis {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : object.items()) {
        if (allowed.find(item.key()) == allowed.end()) {
            throw std::runtime_error("unknown field '" + item.key() + "' in " + where);
        }
    }
}

double require_number(const json& object, const std::string& key, const std::string& where) {
    if (!object.contains(key)) {
        throw std::runtime_error("missing field '" + key + "' in " + where);
    }
    if (!object.at(key).is_number()) {
        throw std::runtime_error("field '" + key + "' in " + where + " must be a number");
    }
    return object.at(key).get<double>();
}

Polarization parse_polarization(const json& object, const std::string& key,
                                const std::string& where) {
    if (!object.contains(key) || !object.at(key).is_string()) {
        throw std::runtime_error("field '" + key + "' in " + where +
                                 " must be \"vertical\" or \"horizontal\"");
    }
    const std::string value = object.at(key).get<std::string>();
    if (value == "vertical") {
        return Polarization::Vertical;
    }
    if (value == "horizontal") {
        return Polarization::Horizontal;
    }
    throw std::runtime_error("field '" + key + "' in " + where +
                             " must be \"vertical\" or \"horizontal\", got \"" + value + "\"");
}

LinkGeometry parse_link(const json& object, const std::string& key, const std::string& where) {
    if (!object.contains(key) || !object.at(key).is_object()) {
        throw std::runtime_error("missing object field '" + key + "' in " + where);
    }
    const json& link = object.at(key);
    reject_unknown_keys(link, {"distance_m", "angle_rad"}, where + "." + key);
    return LinkGeometry(require_number(link, "distance_m", where + "." + key),
                        require_number(link, "angle_rad", where + "." + key));
}

}  // namespace

Scene scene_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("scene config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::runtime_error("scene config must be a JSON object");
    }
    const std::string where = "scene config";
    reject_unknown_keys(j,
                        {"num_elements", "element_spacing_m", "tx", "rx", "wavelength_m", "chi",
                         "tx_polarization", "rx_polarization", "transmit_power_w"},
                        where);

    const double num_elements = require_number(j, "num_elements", where);
    if (num_elements != static_cast<int>(num_elements)) {
        throw std::runtime_error("field 'num_elements' must be an integer");
    }
    ArrayGeometry array(static_cast<int>(num_elements),
                        require_number(j, "element_spacing_m", where));
    LinkGeometry tx = parse_link(j, "tx", where);
    LinkGeometry rx = parse_link(j, "rx", where);
    SignalConfig signal = SignalConfig::from_wavelength(require_number(j, "wavelength_m", where));
    PolarizationConfig polarization(require_number(j, "chi", where),
                                    parse_polarization(j, "tx_polarization", where),
                                    parse_polarization(j, "rx_polarization", where));
    const double transmit_power =
        j.contains("transmit_power_w") ? require_number(j, "transmit_power_w", where) : 1.0;
    return Scene(array, tx, rx, signal, polarization, transmit_power);
}

Scene scene_from_json_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw std::runtime_error("cannot open scene config '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return scene_from_json_string(buffer.str());
}

std::string scene_to_json_string(const Scene& scene) {
    json j;
    j["num_elements"] = scene.array.num_elements;
    j["element_spacing_m"] = scene.array.element_spacing_m;
    j["tx"] = {{"distance_m", scene.tx.distance_m}, {"angle_rad", scene.tx.angle_rad}};
    j["rx"] = {{"distance_m", scene.rx.distance_m}, {"angle_rad", scene.rx.angle_rad}};
    j["wavelength_m"] = scene.signal.wavelength_m;
    j["chi"] = scene.polarization.chi;
    j["tx_polarization"] = to_string(scene.polarization.tx_polarization);
    j["rx_polarization"] = to_string(scene.polarization.rx_polarization);
    j["transmit_power_w"] = scene.transmit_power_w;
    return j.dump(2);
}

std::string reflection_to_json_string(const ReflectionMatrix& theta) {
    const int n = theta.size();
    json j;
    j["architecture"] = to_string(theta.architecture);
    j["origin"] = to_string(theta.origin);
    j["n"] = n;
    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(2) * n * n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            entries.push_back(theta.entries(i, k).real());
            entries.push_back(theta.entries(i, k).imag());
        }
    }
    j["entries"] = entries;
    return j.dump();
}

std::string to_string(ReflectionArchitecture architecture) {
    return architecture == ReflectionArchitecture::DiagonalUnitModulus ? "diagonal_unit_modulus"
                                                                       : "unitary";
}

std::string to_string(SurfaceDesign design) {
    switch (design) {
        case SurfaceDesign::DRIS:
            return "DRIS";
        case SurfaceDesign::BDRIS:
            return "BDRIS";
        case SurfaceDesign::DFIS:
            return "DFIS";
        case SurfaceDesign::BDFIS:
            return "BDFIS";
        case SurfaceDesign::Custom:
            return "custom";
    }
    return "custom";
}

std::string to_string(Polarization polarization) {
    return polarization == Polarization::Vertical ? "vertical" : "horizontal";
}

}  // namespace dpis
