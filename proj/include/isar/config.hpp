// SPDX-License-Identifier: Apache-2.0
//
// isarkit: TDM-MIMO FMCW radar simulation, ISAR imaging and motion compensation
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
#include <string>
#include <string_view>
#include <vector>

#include "isar/metrics.hpp"
#include "isar/params.hpp"
#include "isar/scene.hpp"

namespace isar {

// Scenario files use a line-oriented `section.key = value` dialect with '#'
// comments. Sections: radar, scene, pipeline, output. Repeated keys
// (scene.waypoint, scene.scatterer, scene.clutter) append. Unknown keys are
// rejected with their line number. `isarkit formats` prints the full key list.

/// Scene block: either a named preset (with optional overrides) or an
/// explicitly listed scene.
struct SceneConfig {
    std::string preset; // "" = explicit scene from the fields below
    std::optional<double> noise_power;
    std::optional<double> sigma_fluct;
    std::optional<std::uint64_t> seed;
    std::optional<double> duration_s;       // single-point / blank presets
    std::optional<double> point_range0_m;   // single-point preset
    std::optional<double> point_velocity_mps;
    std::optional<double> extent_x_m, extent_y_m;
    std::vector<Waypoint> waypoints;
    std::vector<Scatterer> scatterers;
    std::vector<Scatterer> clutter;
    bool rotation_set = false;
    RotationMode rotation_mode = RotationMode::law;
    RotationLaw rotation_law;

    Scene build() const; // throws ConfigError
};

struct PipelineConfig {
    std::string algo = "all"; // none|em|pga|ccr|all
    std::vector<int> frames = {81, 84, 86, 87, 90};
    std::vector<int> blank_frames = {0, 1, 2};
    bool hann = false;
    bool rvp = false;
    bool tdm_offset = true;
    double em_v_min = -1.2, em_v_max = 1.2;
    int em_v_steps = 41;
    double em_a_min = -1.0, em_a_max = 1.0;
    int em_a_steps = 21;
    int ccr_max_iters = 97;
    double ccr_tol_bins = 1e-3;
    bool ccr_adjacent = false;
    int pga_max_iters = 10;
    double pga_rms_tol_rad = 1e-3;
    int pga_top_k = 16;
    int threads = 0; // 0 = hardware concurrency
    int siso_tx = 0, siso_rx = 0;
    double mask_threshold_db = 20.0;

    std::vector<double> em_v_grid() const;
    std::vector<double> em_a_grid() const;
};

struct OutputConfig {
    std::string dir = "out";
    bool write_cubes = false;
    std::string image_format = "pgm"; // pgm|csv|both|none
    double db_floor_db = -120.0;
};

struct ScenarioConfig {
    RadarParams radar;
    SceneConfig scene;
    PipelineConfig pipeline;
    OutputConfig output;
};

/// Parses and fully validates a scenario; errors carry the offending line.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path); // throws IoError / ConfigError

/// Canonical serialization; parse(serialize(cfg)) reproduces cfg and
/// serialize(parse(x)) is the normal form of x.
std::string serialize_config(const ScenarioConfig& cfg);

/// Shipped defaults: the 77 GHz automotive parameter set with the U-turn car
/// scenario, all four algorithms, frames 81..90 and blank frames 0..2.
ScenarioConfig default_config();

} // namespace isar
