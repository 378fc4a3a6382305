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
// Command-line experiment harness. Subcommands:
//   table1    scaling-law report: Monte Carlo means vs closed forms per design
//   fig3      gain-over-diagonal-baseline curves vs chi (opposite polarization)
//   sweep     received power vs frequency for the fixed surfaces of a scene
//   validate  randomized invariant suite, JSON report
//
// Exit codes: 0 success, 1 invariant failure, 2 configuration error.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpis/mover.hpp"
#include "dpis/power.hpp"
#include "dpis/scene_io.hpp"
#include "dpis/statistics.hpp"
#include "dpis/validation.hpp"

namespace {

using nlohmann::json;

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invariant_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 12 significant digits, '.' decimal, no locale surprises.
std::string fmt(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& out_path) {
        if (!out_path.empty()) {
            file_.open(out_path, std::ios::out | std::ios::trunc);
            if (!file_) {
                throw config_error("cannot open output file '" + out_path + "'");
            }
        }
    }

    void row(const std::vector<std::string>& cells) {
        std::ostream& out = file_.is_open() ? file_ : std::cout;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << cells[i];
        }
        out << '\n';
    }

  private:
    std::ofstream file_;
};

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream file(out_path, std::ios::out | std::ios::trunc);
    if (!file) {
        throw config_error("cannot open output file '" + out_path + "'");
    }
    file << text << '\n';
}

// "0.2" -> {0.2}; "lo:hi:points" -> linear grid; "lo:hi:points:log" -> log grid.
std::vector<double> parse_chi_spec(const std::string& spec) {
    if (spec.find(':') == std::string::npos) {
        try {
            return {std::stod(spec)};
        } catch (const std::exception&) {
            throw config_error("invalid chi value '" + spec + "'");
        }
    }
    std::vector<std::string> parts;
    std::stringstream stream(spec);
    std::string item;
    while (std::getline(stream, item, ':')) {
        parts.push_back(item);
    }
    if (parts.size() != 3 && parts.size() != 4) {
        throw config_error("chi grid spec must be lo:hi:points[:log], got '" + spec + "'");
    }
    double lo = 0.0;
    double hi = 0.0;
    int points = 0;
    try {
        lo = std::stod(parts[0]);
        hi = std::stod(parts[1]);
        points = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw config_error("chi grid spec must be lo:hi:points[:log], got '" + spec + "'");
    }
    const bool log_scale = parts.size() == 4;
    if (log_scale && parts[3] != "log" && parts[3] != "lin") {
        throw config_error("chi grid scale must be 'log' or 'lin', got '" + parts[3] + "'");
    }
    if (points < 2 || !(hi > lo)) {
        throw config_error("chi grid spec needs lo < hi and points >= 2");
    }
    if (log_scale && parts[3] == "log") {
        if (!(lo > 0.0)) {
            throw config_error("log-spaced chi grid needs lo > 0");
        }
        return dpis::log_spaced_grid(lo, hi, points);
    }
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) {
        grid[i] = lo + (hi - lo) * i / (points - 1);
    }
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

struct ExperimentSettings {
    long trials = 100000;
    std::uint64_t seed = 42;
    std::vector<int> n_elements = {64};
    std::string chi_spec = "0.2";
    bool chi_spec_explicit = false;
    double band_min_hz = 1e9;
    double band_max_hz = 20e9;
    int grid_points = 10001;
    std::optional<dpis::Scene> scene;
};

// Scene JSON extended with experiment fields; unknown fields are rejected by
// the scene parser after the experiment fields are split off.
void load_config(const std::string& path, CLI::App* cmd, ExperimentSettings* settings) {
    std::ifstream stream(path);
    if (!stream) {
        throw config_error("cannot open config file '" + path + "'");
    }
    json j;
    try {
        j = json::parse(stream);
    } catch (const json::parse_error& e) {
        throw config_error("config file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) {
        throw config_error("config file '" + path + "' must hold a JSON object");
    }

    const auto flag_unset = [&](const std::string& name) {
        const CLI::Option* option = cmd->get_option_no_throw(name);
        return option == nullptr || option->count() == 0;
    };

    if (j.contains("trials") && flag_unset("--trials")) {
        settings->trials = j.at("trials").get<long>();
    }
    if (j.contains("seed") && flag_unset("--seed")) {
        settings->seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("n_elements") && flag_unset("--n-elements")) {
        if (j.at("n_elements").is_array()) {
            settings->n_elements = j.at("n_elements").get<std::vector<int>>();
        } else {
            settings->n_elements = {j.at("n_elements").get<int>()};
        }
    }
    // "chi" stays with the scene; the experiment-level grid is "chi_grid"
    if (j.contains("chi_grid") && flag_unset("--chi")) {
        if (j.at("chi_grid").is_string()) {
            settings->chi_spec = j.at("chi_grid").get<std::string>();
        } else {
            settings->chi_spec = fmt(j.at("chi_grid").get<double>());
        }
        settings->chi_spec_explicit = true;
    }
    if (j.contains("band_min_hz") && flag_unset("--band-min-hz")) {
        settings->band_min_hz = j.at("band_min_hz").get<double>();
    }
    if (j.contains("band_max_hz") && flag_unset("--band-max-hz")) {
        settings->band_max_hz = j.at("band_max_hz").get<double>();
    }
    if (j.contains("grid_points") && flag_unset("--grid-points")) {
        settings->grid_points = j.at("grid_points").get<int>();
    }
    for (const char* key : {"trials", "seed", "n_elements", "chi_grid", "band_min_hz",
                            "band_max_hz", "grid_points"}) {
        j.erase(key);
    }

    if (!j.empty()) {
        try {
            settings->scene = dpis::scene_from_json_string(j.dump());
        } catch (const std::exception& e) {
            throw config_error(std::string("config file '") + path + "': " + e.what());
        }
    }
}

// Desk-scale default geometry; the aligning carrier sits near 6 GHz, inside
// the default 1-20 GHz band.
dpis::Scene default_scene() {
    const double angle = 0.5235987755982988;  // 30 degrees
    return dpis::Scene(dpis::ArrayGeometry(64, 0.05), dpis::LinkGeometry(20.0, angle),
                       dpis::LinkGeometry(10.0, angle), dpis::SignalConfig::from_wavelength(0.05),
                       dpis::PolarizationConfig(0.2, dpis::Polarization::Vertical,
                                                dpis::Polarization::Vertical));
}

dpis::Scene row_scene(const ExperimentSettings& settings, int n, double chi,
                      dpis::Scenario scenario) {
    const dpis::Scene base = settings.scene ? *settings.scene : default_scene();
    const auto rx_pol = scenario == dpis::Scenario::SamePol ? dpis::Polarization::Vertical
                                                            : dpis::Polarization::Horizontal;
    return dpis::Scene(dpis::ArrayGeometry(n, base.array.element_spacing_m), base.tx, base.rx,
                       base.signal,
                       dpis::PolarizationConfig(chi, dpis::Polarization::Vertical, rx_pol), 1.0);
}

void check_settings(const ExperimentSettings& settings) {
    for (const int n : settings.n_elements) {
        if (n < 2 || n % 2 != 0) {
            throw config_error("n_elements must be even integers >= 2, got " + std::to_string(n));
        }
    }
    if (settings.trials < 100) {
        throw config_error("trials must be >= 100, got " + std::to_string(settings.trials));
    }
    if (!(settings.band_min_hz > 0.0) || !(settings.band_max_hz > settings.band_min_hz)) {
        throw config_error("need 0 < band-min-hz < band-max-hz");
    }
    if (settings.grid_points < 2) {
        throw config_error("grid-points must be >= 2, got " +
                           std::to_string(settings.grid_points));
    }
}

std::string scenario_name(dpis::Scenario scenario) {
    return scenario == dpis::Scenario::SamePol ? "same" : "opposite";
}

// ---------------------------------------------------------------------------

int cmd_table1(const ExperimentSettings& settings, const std::string& fis_mode_name,
               const std::string& sampler_name, const std::string& out_path,
               const std::string& dump_theta_path) {
    check_settings(settings);
    std::string chi_spec = settings.chi_spec;
    if (!settings.chi_spec_explicit && settings.scene) {
        chi_spec = fmt(settings.scene->polarization.chi);
    }
    const std::vector<double> chis = parse_chi_spec(chi_spec);
    for (const double chi : chis) {
        if (!(chi >= 0.0 && chi <= 1.0)) {
            throw config_error("chi must lie in [0, 1], got " + fmt(chi));
        }
    }
    dpis::FisMode fis_mode = dpis::FisMode::FrequencyOptimized;
    if (fis_mode_name == "fixed") {
        fis_mode = dpis::FisMode::FixedFrequency;
    } else if (fis_mode_name != "optimized") {
        throw config_error("fis-mode must be 'optimized' or 'fixed', got '" + fis_mode_name + "'");
    }

    dpis::ChannelSampler sampler{dpis::SamplerKind::IidPhase, settings.seed};
    if (sampler_name == "geometric") {
        // physical-angle ensemble; not expected to match the random-walk
        // closed forms, the relative_gap column shows the model gap
        sampler.kind = dpis::SamplerKind::Geometric;
    } else if (sampler_name != "iid-phase") {
        throw config_error("sampler must be 'iid-phase' or 'geometric', got '" + sampler_name +
                           "'");
    }
    const dpis::FrequencyBand band(settings.band_min_hz, settings.band_max_hz,
                                   settings.grid_points);

    CsvWriter csv(out_path);
    csv.row({"architecture", "scenario", "n_elements", "chi", "closed_form", "mc_mean",
             "mc_stderr", "relative_gap", "verified_power"});

    const dpis::SurfaceDesign designs[] = {dpis::SurfaceDesign::DRIS, dpis::SurfaceDesign::BDRIS,
                                           dpis::SurfaceDesign::DFIS, dpis::SurfaceDesign::BDFIS};
    const dpis::Scenario scenarios[] = {dpis::Scenario::SamePol, dpis::Scenario::OppositePol};

    for (const int n : settings.n_elements) {
        for (const double chi : chis) {
            for (const auto scenario : scenarios) {
                for (const auto design : designs) {
                    const double closed_form =
                        dpis::closed_form_mean(design, scenario, n, chi);
                    const bool fis = design == dpis::SurfaceDesign::DFIS ||
                                     design == dpis::SurfaceDesign::BDFIS;
                    const dpis::MeanPowerEstimate estimate = dpis::mc_mean_power(
                        design, scenario, n, chi, settings.trials, sampler, fis_mode);

                    std::string gap;
                    if (closed_form > 0.0) {
                        gap = fmt(std::abs(estimate.mean_w - closed_form) / closed_form);
                    }

                    std::string verified;
                    if (fis) {
                        const dpis::Scene scene = row_scene(settings, n, chi, scenario);
                        // -I attains the cap for both fixed designs under same
                        // polarization; the pair-swap matrix only under opposite.
                        const bool swap_matrix = design == dpis::SurfaceDesign::BDFIS &&
                                                 scenario == dpis::Scenario::OppositePol;
                        const auto theta =
                            swap_matrix ? dpis::bdfis_matrix(n) : dpis::dfis_matrix(n);
                        verified =
                            fmt(dpis::select_frequency(scene, theta, band).achieved_power);
                    }

                    csv.row({dpis::to_string(design), scenario_name(scenario),
                             std::to_string(n), fmt(chi), fmt(closed_form), fmt(estimate.mean_w),
                             fmt(estimate.standard_error_w), gap, verified});
                }
            }
        }
    }

    if (!dump_theta_path.empty()) {
        const int n = settings.n_elements.front();
        write_text(dump_theta_path, "[" + dpis::reflection_to_json_string(dpis::dfis_matrix(n)) +
                                        "," +
                                        dpis::reflection_to_json_string(dpis::bdfis_matrix(n)) +
                                        "]");
    }
    return 0;
}

int cmd_fig3(const std::string& chi_spec, const std::string& out_path) {
    const std::vector<double> chis = parse_chi_spec(chi_spec);
    for (const double chi : chis) {
        if (!(chi > 0.0 && chi <= 1.0)) {
            throw config_error("fig3 chi grid must lie in (0, 1], got " + fmt(chi));
        }
    }
    const dpis::GainCurve curve = dpis::gain_curve(chis);

    // The chi-dependent gains must decrease strictly before anything is written.
    for (std::size_t i = 1; i < chis.size(); ++i) {
        if (!(curve.bdris[i] < curve.bdris[i - 1]) || !(curve.bdfis[i] < curve.bdfis[i - 1])) {
            throw invariant_error("gain curve is not strictly decreasing at chi = " +
                                  fmt(chis[i]));
        }
    }

    CsvWriter csv(out_path);
    csv.row({"chi", "G_BDRIS", "G_DFIS", "G_BDFIS"});
    for (std::size_t i = 0; i < chis.size(); ++i) {
        csv.row({fmt(chis[i]), fmt(curve.bdris[i]), fmt(curve.dfis[i]), fmt(curve.bdfis[i])});
    }
    return 0;
}

int cmd_sweep(const ExperimentSettings& settings, const std::string& out_path,
              const std::string& dump_theta_path) {
    if (!settings.scene) {
        throw config_error("sweep requires a scene config (--config <path>)");
    }
    check_settings(settings);
    const dpis::Scene& scene = *settings.scene;
    const int n = scene.array.num_elements;
    const dpis::FrequencyBand band(settings.band_min_hz, settings.band_max_hz,
                                   settings.grid_points);

    const dpis::ReflectionMatrix thetas[] = {dpis::dfis_matrix(n), dpis::bdfis_matrix(n)};

    CsvWriter csv(out_path);
    csv.row({"architecture", "frequency_hz", "power_w", "kind"});

    const double s = std::sin(scene.tx.angle_rad) + std::sin(scene.rx.angle_rad);
    const bool degenerate = std::abs(s) <= 1e-12;
    std::vector<dpis::FrequencyChoice> harmonics;
    if (!degenerate) {
        harmonics = dpis::harmonic_frequencies(scene.array, scene.tx, scene.rx, band);
    }

    bool peaks_verified = true;
    for (const auto& theta : thetas) {
        double best_frequency = band.f_min_hz;
        double best_power = -1.0;
        double min_power = std::numeric_limits<double>::infinity();
        for (int i = 0; i < band.grid_points; ++i) {
            const double f = i == band.grid_points - 1 ? band.f_max_hz
                                                       : band.f_min_hz + i * band.step_hz();
            const double p = dpis::received_power(scene.with_frequency(f), theta).power_w;
            csv.row({dpis::to_string(theta.origin), fmt(f), fmt(p), "grid"});
            if (p > best_power) {
                best_power = p;
                best_frequency = f;
            }
            min_power = std::min(min_power, p);
        }
        for (const auto& h : harmonics) {
            const double p =
                dpis::received_power(scene.with_frequency(h.frequency_hz), theta).power_w;
            csv.row({dpis::to_string(theta.origin), fmt(h.frequency_hz), fmt(p), "harmonic"});
        }

        if (degenerate) {
            // Every carrier aligns; the curve must be flat.
            const bool flat = best_power - min_power <= 1e-9 * std::max(best_power, 1e-300);
            if (!flat) {
                peaks_verified = false;
                std::cerr << "sweep: " << dpis::to_string(theta.origin)
                          << " curve not flat for a degenerate geometry (max " << fmt(best_power)
                          << ", min " << fmt(min_power) << ")\n";
            }
            continue;
        }
        if (harmonics.empty()) {
            std::cerr << "sweep: no aligned carrier inside the band for "
                      << dpis::to_string(theta.origin) << "; peak left unverified\n";
            continue;
        }
        if (best_power <= 1e-12 * n * n * scene.transmit_power_w) {
            // blind surface (e.g. -I with zero cross-polar leakage under
            // opposite polarization): the curve is identically zero
            std::cerr << "sweep: " << dpis::to_string(theta.origin)
                      << " curve is identically zero; no peak to verify\n";
            continue;
        }
        double steps_to_harmonic = std::numeric_limits<double>::infinity();
        for (const auto& h : harmonics) {
            steps_to_harmonic = std::min(
                steps_to_harmonic, std::abs(best_frequency - h.frequency_hz) / band.step_hz());
        }
        if (steps_to_harmonic > 1.0 + 1e-9) {
            peaks_verified = false;
            std::cerr << "sweep: " << dpis::to_string(theta.origin) << " peak at "
                      << fmt(best_frequency) << " Hz is " << fmt(steps_to_harmonic)
                      << " grid steps from the nearest aligned carrier\n";
        } else {
            std::cerr << "sweep: " << dpis::to_string(theta.origin) << " peak at "
                      << fmt(best_frequency) << " Hz, " << fmt(steps_to_harmonic)
                      << " grid steps from the nearest aligned carrier\n";
        }
    }

    if (!dump_theta_path.empty()) {
        write_text(dump_theta_path, "[" + dpis::reflection_to_json_string(thetas[0]) + "," +
                                        dpis::reflection_to_json_string(thetas[1]) + "]");
    }
    if (!peaks_verified) {
        throw invariant_error("sweep peak verification failed");
    }
    return 0;
}

int cmd_validate(const dpis::ValidationOptions& options, const std::string& out_path,
                 const std::string& dump_theta_path) {
    const dpis::ValidationSuiteReport report = dpis::run_validation_suite(options);
    write_text(out_path, dpis::validation_report_to_json(report));

    if (!dump_theta_path.empty()) {
        const dpis::Scene scene = default_scene();
        const dpis::ChannelPair channels = dpis::build_channels(scene);
        const int n = scene.array.num_elements;
        write_text(dump_theta_path,
                   "[" +
                       dpis::reflection_to_json_string(
                           dpis::dris_optimal(channels.rx, channels.tx)) +
                       "," +
                       dpis::reflection_to_json_string(
                           dpis::bdris_optimal(channels.rx, channels.tx)) +
                       "," + dpis::reflection_to_json_string(dpis::dfis_matrix(n)) + "," +
                       dpis::reflection_to_json_string(dpis::bdfis_matrix(n)) + "]");
    }

    for (const auto& check : report.checks) {
        std::cerr << (check.pass ? "[pass] " : "[FAIL] ") << check.name
                  << " residual=" << fmt(check.residual) << " threshold=" << fmt(check.threshold)
                  << '\n';
    }
    return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-polarized RIS/FIS link simulator"};
    app.require_subcommand(1);

    // common option storage
    std::string config_path;
    std::string out_path;
    std::string dump_theta_path;
    ExperimentSettings settings;
    std::string chi_spec_fig3 = "1e-3:1:200:log";
    std::string fis_mode = "optimized";
    std::string sampler_name = "iid-phase";

    dpis::ValidationOptions validation;

    CLI::App* table1 = app.add_subcommand("table1", "scaling-law report (CSV)");
    table1->add_option("--config", config_path, "scene + experiment JSON config");
    table1->add_option("--out", out_path, "output CSV path (default stdout)");
    table1->add_option("--seed", settings.seed, "Monte Carlo seed");
    table1->add_option("--trials", settings.trials, "Monte Carlo trials per estimate");
    table1->add_option("--n-elements", settings.n_elements, "element counts (even)")
        ->delimiter(',');
    table1->add_option("--chi", settings.chi_spec, "chi value or grid spec lo:hi:points[:log]");
    table1->add_option("--band-min-hz", settings.band_min_hz, "verification band lower edge");
    table1->add_option("--band-max-hz", settings.band_max_hz, "verification band upper edge");
    table1->add_option("--grid-points", settings.grid_points, "verification grid resolution");
    table1->add_option("--fis-mode", fis_mode,
                       "fixed-surface scoring: 'optimized' carrier or 'fixed'");
    table1->add_option("--sampler", sampler_name,
                       "channel ensemble: 'iid-phase' or 'geometric'");
    table1->add_option("--dump-theta", dump_theta_path, "write the fixed matrices as JSON");

    CLI::App* fig3 = app.add_subcommand("fig3", "gain curves vs chi (CSV)");
    fig3->add_option("--chi", chi_spec_fig3, "chi grid spec lo:hi:points[:log]");
    fig3->add_option("--out", out_path, "output CSV path (default stdout)");

    CLI::App* sweep = app.add_subcommand("sweep", "power vs frequency for fixed surfaces (CSV)");
    sweep->add_option("--config", config_path, "scene JSON config")->required();
    sweep->add_option("--out", out_path, "output CSV path (default stdout)");
    sweep->add_option("--band-min-hz", settings.band_min_hz, "band lower edge");
    sweep->add_option("--band-max-hz", settings.band_max_hz, "band upper edge");
    sweep->add_option("--grid-points", settings.grid_points, "frequency grid resolution");
    sweep->add_option("--dump-theta", dump_theta_path, "write the swept matrices as JSON");

    CLI::App* validate = app.add_subcommand("validate", "invariant suite (JSON report)");
    validate->add_option("--out", out_path, "output JSON path (default stdout)");
    validate->add_option("--seed", validation.seed, "randomized-check seed");
    validate->add_option("--scenes", validation.scene_count, "random scenes per check");
    validate->add_option("--competitors", validation.competitors_per_scene,
                         "random competitors per scene");
    validate->add_option("--n-elements", validation.num_elements,
                         "element count for randomized checks");
    validate->add_flag("--inject-broken-theta", validation.inject_broken_theta,
                       "add a deliberately broken matrix (forces failure)");
    validate->add_option("--dump-theta", dump_theta_path,
                         "write the four designs for the default scene as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (table1->parsed()) {
            settings.chi_spec_explicit = table1->get_option_no_throw("--chi")->count() > 0;
            if (!config_path.empty()) {
                load_config(config_path, table1, &settings);
            }
            return cmd_table1(settings, fis_mode, sampler_name, out_path, dump_theta_path);
        }
        if (fig3->parsed()) {
            return cmd_fig3(chi_spec_fig3, out_path);
        }
        if (sweep->parsed()) {
            // sweep's default grid is plot-scale; flag and config still win
            if (sweep->get_option_no_throw("--grid-points")->count() == 0) {
                settings.grid_points = 2001;
            }
            load_config(config_path, sweep, &settings);
            return cmd_sweep(settings, out_path, dump_theta_path);
        }
        if (validate->parsed()) {
            if (validation.scene_count < 1 || validation.competitors_per_scene < 1 ||
                validation.num_elements < 2 || validation.num_elements % 2 != 0) {
                throw config_error("validate: scenes/competitors must be >= 1 and n even >= 2");
            }
            return cmd_validate(validation, out_path, dump_theta_path);
        }
    } catch (const invariant_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
