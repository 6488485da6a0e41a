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

#include "isar/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace isar {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

double parse_double(std::string_view v, const std::string& key, int line) {
    double out = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("expected a number for " + key + ", got '" + std::string(v) + "'", line);
    return out;
}

long long parse_int(std::string_view v, const std::string& key, int line) {
    long long out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("expected an integer for " + key + ", got '" + std::string(v) + "'", line);
    return out;
}

std::uint64_t parse_u64(std::string_view v, const std::string& key, int line) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        throw ConfigError("expected an unsigned integer for " + key + ", got '" + std::string(v) + "'",
                          line);
    return out;
}

bool parse_bool(std::string_view v, const std::string& key, int line) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("expected true/false for " + key + ", got '" + std::string(v) + "'", line);
}

int parse_positive_int(std::string_view v, const std::string& key, int line) {
    const long long x = parse_int(v, key, line);
    if (x <= 0 || x > (1ll << 30))
        throw ConfigError(key + " must be a positive integer, got '" + std::string(v) + "'", line);
    return static_cast<int>(x);
}

std::vector<int> parse_int_list(std::string_view v, const std::string& key, int line) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i <= v.size()) {
        std::size_t j = v.find(',', i);
        if (j == std::string_view::npos) j = v.size();
        std::string_view tok = trim(v.substr(i, j - i));
        if (!tok.empty()) out.push_back(static_cast<int>(parse_int(tok, key, line)));
        if (j == v.size()) break;
        i = j + 1;
    }
    if (out.empty()) throw ConfigError("expected a comma-separated list for " + key, line);
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

std::string fmt_int_list(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 1) throw ConfigError("grid steps must be >= 1");
    if (steps == 1) return {lo};
    if (!(hi > lo)) throw ConfigError("grid max must exceed min");
    std::vector<double> g(steps);
    for (int i = 0; i < steps; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return g;
}

} // namespace

std::vector<double> PipelineConfig::em_v_grid() const { return linspace(em_v_min, em_v_max, em_v_steps); }
std::vector<double> PipelineConfig::em_a_grid() const { return linspace(em_a_min, em_a_max, em_a_steps); }

Scene SceneConfig::build() const {
    Scene sc;
    if (!preset.empty()) {
        if (preset == "single-point") {
            sc = single_point_scenario(point_range0_m.value_or(10.0),
                                       point_velocity_mps.value_or(0.0), duration_s.value_or(15.0),
                                       noise_power.value_or(0.0));
        } else if (preset == "blank") {
            sc = blank_scenario(noise_power.value_or(1.0), duration_s.value_or(15.0));
        } else {
            sc = builtin_scenario(preset);
            if (noise_power) sc.noise_power = *noise_power;
        }
    } else {
        if (waypoints.empty())
            throw ConfigError("explicit scene requires scene.waypoint entries (or set scene.preset)");
        sc.name = "custom";
        sc.noise_power = noise_power.value_or(0.0);
    }
    if (!waypoints.empty()) sc.trajectory.waypoints = waypoints;
    if (!scatterers.empty()) sc.scatterers = scatterers;
    if (!clutter.empty()) sc.clutter = clutter;
    if (rotation_set) {
        sc.trajectory.mode = rotation_mode;
        sc.trajectory.law = rotation_law;
    }
    if (seed) sc.seed = *seed;
    if (sigma_fluct) sc.sigma_fluct = *sigma_fluct;
    if (extent_x_m) sc.extent_x_m = *extent_x_m;
    if (extent_y_m) sc.extent_y_m = *extent_y_m;
    sc.validate();
    return sc;
}

ScenarioConfig parse_config(std::string_view text) {
    ScenarioConfig cfg;
    cfg.radar = RadarParams{}; // all radar core keys are required
    std::set<std::string> seen;

    static const std::set<std::string> radar_required = {
        "radar.carrier_freq_hz", "radar.bandwidth_hz", "radar.chirp_slope_hz_per_s",
        "radar.t_pri_s",         "radar.num_tx",       "radar.num_rx",
        "radar.d_tx_m",          "radar.d_rx_m",       "radar.num_slow",
        "radar.num_fast",        "radar.sample_rate_sps", "radar.t_cpi_s",
        "radar.ref_range_m"};

    int line = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view raw = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line;

        std::string_view sline = trim(raw);
        if (sline.empty() || sline.front() == '#') {
            if (pos > text.size()) break;
            continue;
        }
        const std::size_t eq = sline.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("expected 'section.key = value'", line);
        const std::string key(trim(sline.substr(0, eq)));
        const std::string_view value = trim(sline.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("expected 'section.key = value'", line);
        seen.insert(key);

        auto nums = [&](std::size_t want) {
            auto toks = split_ws(value);
            if (toks.size() != want)
                throw ConfigError("expected " + std::to_string(want) + " values for " + key, line);
            std::vector<double> out(want);
            for (std::size_t i = 0; i < want; ++i) out[i] = parse_double(toks[i], key, line);
            return out;
        };

        RadarParams& rp = cfg.radar;
        SceneConfig& sc = cfg.scene;
        PipelineConfig& pl = cfg.pipeline;
        OutputConfig& out = cfg.output;

        if (key == "radar.carrier_freq_hz") rp.carrier_freq_hz = parse_double(value, key, line);
        else if (key == "radar.bandwidth_hz") rp.bandwidth_hz = parse_double(value, key, line);
        else if (key == "radar.chirp_slope_hz_per_s") rp.chirp_slope_hz_per_s = parse_double(value, key, line);
        else if (key == "radar.t_pri_s") rp.t_pri_s = parse_double(value, key, line);
        else if (key == "radar.num_tx") rp.num_tx = parse_positive_int(value, key, line);
        else if (key == "radar.num_rx") rp.num_rx = parse_positive_int(value, key, line);
        else if (key == "radar.d_tx_m") rp.d_tx_m = parse_double(value, key, line);
        else if (key == "radar.d_rx_m") rp.d_rx_m = parse_double(value, key, line);
        else if (key == "radar.num_slow") rp.num_slow = parse_positive_int(value, key, line);
        else if (key == "radar.num_fast") rp.num_fast = parse_positive_int(value, key, line);
        else if (key == "radar.sample_rate_sps") rp.sample_rate_sps = parse_double(value, key, line);
        else if (key == "radar.t_cpi_s") rp.t_cpi_s = parse_double(value, key, line);
        else if (key == "radar.ref_range_m") rp.ref_range_m = parse_double(value, key, line);
        else if (key == "radar.expected_max_velocity_mps")
            rp.expected_max_velocity_mps = parse_double(value, key, line);
        else if (key == "scene.preset") {
            sc.preset = std::string(value);
            const auto names = builtin_scenario_names();
            if (std::find(names.begin(), names.end(), sc.preset) == names.end())
                throw ConfigError("unknown scene.preset '" + sc.preset + "'", line);
        } else if (key == "scene.seed") sc.seed = parse_u64(value, key, line);
        else if (key == "scene.noise_power") {
            sc.noise_power = parse_double(value, key, line);
            if (*sc.noise_power < 0.0) throw ConfigError("scene.noise_power must be >= 0", line);
        } else if (key == "scene.sigma_fluct") sc.sigma_fluct = parse_double(value, key, line);
        else if (key == "scene.duration_s") sc.duration_s = parse_double(value, key, line);
        else if (key == "scene.point_range0_m") sc.point_range0_m = parse_double(value, key, line);
        else if (key == "scene.point_velocity_mps") sc.point_velocity_mps = parse_double(value, key, line);
        else if (key == "scene.extent") {
            auto v = nums(2);
            sc.extent_x_m = v[0];
            sc.extent_y_m = v[1];
        } else if (key == "scene.rotation") {
            auto toks = split_ws(value);
            sc.rotation_set = true;
            if (toks.size() == 1 && toks[0] == "follow-path") {
                sc.rotation_mode = RotationMode::follow_path;
            } else if (toks.size() == 4 && toks[0] == "law") {
                sc.rotation_mode = RotationMode::law;
                sc.rotation_law.psi0_rad = parse_double(toks[1], key, line);
                sc.rotation_law.alpha_rad_per_s = parse_double(toks[2], key, line);
                sc.rotation_law.beta_rad_per_s2 = parse_double(toks[3], key, line);
            } else {
                throw ConfigError("scene.rotation expects 'follow-path' or 'law PSI0 ALPHA BETA'",
                                  line);
            }
        } else if (key == "scene.waypoint") {
            auto v = nums(3);
            sc.waypoints.push_back({v[0], v[1], v[2]});
        } else if (key == "scene.scatterer") {
            auto v = nums(3);
            if (v[2] < 0.0) throw ConfigError("scatterer reflectivity must be >= 0", line);
            sc.scatterers.push_back({v[0], v[1], v[2]});
        } else if (key == "scene.clutter") {
            auto v = nums(3);
            if (v[2] < 0.0) throw ConfigError("clutter reflectivity must be >= 0", line);
            sc.clutter.push_back({v[0], v[1], v[2]});
        } else if (key == "pipeline.algo") {
            pl.algo = std::string(value);
            if (pl.algo != "all") algo_from_name(pl.algo); // throws on junk
        } else if (key == "pipeline.frames") pl.frames = parse_int_list(value, key, line);
        else if (key == "pipeline.blank_frames") pl.blank_frames = parse_int_list(value, key, line);
        else if (key == "pipeline.window") {
            if (value == "hann") pl.hann = true;
            else if (value == "none") pl.hann = false;
            else throw ConfigError("pipeline.window expects none|hann", line);
        } else if (key == "pipeline.rvp") pl.rvp = parse_bool(value, key, line);
        else if (key == "pipeline.tdm_offset") pl.tdm_offset = parse_bool(value, key, line);
        else if (key == "pipeline.em_v") {
            auto toks = split_ws(value);
            if (toks.size() != 3) throw ConfigError("pipeline.em_v expects MIN MAX STEPS", line);
            pl.em_v_min = parse_double(toks[0], key, line);
            pl.em_v_max = parse_double(toks[1], key, line);
            pl.em_v_steps = parse_positive_int(toks[2], key, line);
        } else if (key == "pipeline.em_a") {
            auto toks = split_ws(value);
            if (toks.size() != 3) throw ConfigError("pipeline.em_a expects MIN MAX STEPS", line);
            pl.em_a_min = parse_double(toks[0], key, line);
            pl.em_a_max = parse_double(toks[1], key, line);
            pl.em_a_steps = parse_positive_int(toks[2], key, line);
        } else if (key == "pipeline.ccr_max_iters") pl.ccr_max_iters = parse_positive_int(value, key, line);
        else if (key == "pipeline.ccr_tol_bins") pl.ccr_tol_bins = parse_double(value, key, line);
        else if (key == "pipeline.ccr_adjacent") pl.ccr_adjacent = parse_bool(value, key, line);
        else if (key == "pipeline.pga_max_iters") pl.pga_max_iters = parse_positive_int(value, key, line);
        else if (key == "pipeline.pga_rms_tol_rad") pl.pga_rms_tol_rad = parse_double(value, key, line);
        else if (key == "pipeline.pga_top_k") pl.pga_top_k = parse_positive_int(value, key, line);
        else if (key == "pipeline.threads") {
            const long long t = parse_int(value, key, line);
            if (t < 0 || t > 1024) throw ConfigError("pipeline.threads must be in [0, 1024]", line);
            pl.threads = static_cast<int>(t);
        } else if (key == "pipeline.siso_channel") {
            auto toks = split_ws(value);
            if (toks.size() != 2) throw ConfigError("pipeline.siso_channel expects P Q", line);
            pl.siso_tx = static_cast<int>(parse_int(toks[0], key, line));
            pl.siso_rx = static_cast<int>(parse_int(toks[1], key, line));
            if (pl.siso_tx < 0 || pl.siso_rx < 0)
                throw ConfigError("pipeline.siso_channel indices must be >= 0", line);
        } else if (key == "pipeline.mask_threshold_db") {
            pl.mask_threshold_db = parse_double(value, key, line);
            if (pl.mask_threshold_db <= 0.0)
                throw ConfigError("pipeline.mask_threshold_db must be > 0", line);
        } else if (key == "output.dir") out.dir = std::string(value);
        else if (key == "output.write_cubes") out.write_cubes = parse_bool(value, key, line);
        else if (key == "output.image_format") {
            out.image_format = std::string(value);
            if (out.image_format != "pgm" && out.image_format != "csv" &&
                out.image_format != "both" && out.image_format != "none")
                throw ConfigError("output.image_format expects pgm|csv|both|none", line);
        } else if (key == "output.db_floor_db") {
            out.db_floor_db = parse_double(value, key, line);
            if (out.db_floor_db >= 0.0) throw ConfigError("output.db_floor_db must be negative", line);
        } else {
            throw ConfigError("unknown key '" + key + "'", line);
        }

        if (pos > text.size()) break;
    }

    for (const std::string& k : radar_required)
        if (!seen.count(k)) throw ConfigError("missing required key '" + k + "'");
    if (!seen.count("scene.preset") && cfg.scene.waypoints.empty())
        throw ConfigError("scene block needs scene.preset or explicit scene.waypoint entries");

    derive_params(cfg.radar);     // structural radar validation
    cfg.scene.build();            // scene validation
    cfg.pipeline.em_v_grid();     // grid validation
    cfg.pipeline.em_a_grid();
    if (cfg.pipeline.siso_tx >= cfg.radar.num_tx || cfg.pipeline.siso_rx >= cfg.radar.num_rx)
        throw ConfigError("pipeline.siso_channel is outside the configured array");
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::ostringstream os;
    const RadarParams& rp = cfg.radar;
    os << "# isarkit scenario\n";
    os << "radar.carrier_freq_hz = " << fmt_double(rp.carrier_freq_hz) << "\n";
    os << "radar.bandwidth_hz = " << fmt_double(rp.bandwidth_hz) << "\n";
    os << "radar.chirp_slope_hz_per_s = " << fmt_double(rp.chirp_slope_hz_per_s) << "\n";
    os << "radar.t_pri_s = " << fmt_double(rp.t_pri_s) << "\n";
    os << "radar.num_tx = " << rp.num_tx << "\n";
    os << "radar.num_rx = " << rp.num_rx << "\n";
    os << "radar.d_tx_m = " << fmt_double(rp.d_tx_m) << "\n";
    os << "radar.d_rx_m = " << fmt_double(rp.d_rx_m) << "\n";
    os << "radar.num_slow = " << rp.num_slow << "\n";
    os << "radar.num_fast = " << rp.num_fast << "\n";
    os << "radar.sample_rate_sps = " << fmt_double(rp.sample_rate_sps) << "\n";
    os << "radar.t_cpi_s = " << fmt_double(rp.t_cpi_s) << "\n";
    os << "radar.ref_range_m = " << fmt_double(rp.ref_range_m) << "\n";
    if (rp.expected_max_velocity_mps)
        os << "radar.expected_max_velocity_mps = " << fmt_double(*rp.expected_max_velocity_mps)
           << "\n";

    const SceneConfig& sc = cfg.scene;
    if (!sc.preset.empty()) os << "scene.preset = " << sc.preset << "\n";
    if (sc.seed) os << "scene.seed = " << *sc.seed << "\n";
    if (sc.noise_power) os << "scene.noise_power = " << fmt_double(*sc.noise_power) << "\n";
    if (sc.sigma_fluct) os << "scene.sigma_fluct = " << fmt_double(*sc.sigma_fluct) << "\n";
    if (sc.duration_s) os << "scene.duration_s = " << fmt_double(*sc.duration_s) << "\n";
    if (sc.point_range0_m) os << "scene.point_range0_m = " << fmt_double(*sc.point_range0_m) << "\n";
    if (sc.point_velocity_mps)
        os << "scene.point_velocity_mps = " << fmt_double(*sc.point_velocity_mps) << "\n";
    if (sc.extent_x_m || sc.extent_y_m)
        os << "scene.extent = " << fmt_double(sc.extent_x_m.value_or(0.0)) << " "
           << fmt_double(sc.extent_y_m.value_or(0.0)) << "\n";
    if (sc.rotation_set) {
        if (sc.rotation_mode == RotationMode::follow_path) {
            os << "scene.rotation = follow-path\n";
        } else {
            os << "scene.rotation = law " << fmt_double(sc.rotation_law.psi0_rad) << " "
               << fmt_double(sc.rotation_law.alpha_rad_per_s) << " "
               << fmt_double(sc.rotation_law.beta_rad_per_s2) << "\n";
        }
    }
    for (const Waypoint& w : sc.waypoints)
        os << "scene.waypoint = " << fmt_double(w.t_s) << " " << fmt_double(w.x_m) << " "
           << fmt_double(w.y_m) << "\n";
    for (const Scatterer& s : sc.scatterers)
        os << "scene.scatterer = " << fmt_double(s.x_local_m) << " " << fmt_double(s.y_local_m)
           << " " << fmt_double(s.reflectivity) << "\n";
    for (const Scatterer& s : sc.clutter)
        os << "scene.clutter = " << fmt_double(s.x_local_m) << " " << fmt_double(s.y_local_m) << " "
           << fmt_double(s.reflectivity) << "\n";

    const PipelineConfig& pl = cfg.pipeline;
    os << "pipeline.algo = " << pl.algo << "\n";
    os << "pipeline.frames = " << fmt_int_list(pl.frames) << "\n";
    os << "pipeline.blank_frames = " << fmt_int_list(pl.blank_frames) << "\n";
    os << "pipeline.window = " << (pl.hann ? "hann" : "none") << "\n";
    os << "pipeline.rvp = " << (pl.rvp ? "true" : "false") << "\n";
    os << "pipeline.tdm_offset = " << (pl.tdm_offset ? "true" : "false") << "\n";
    os << "pipeline.em_v = " << fmt_double(pl.em_v_min) << " " << fmt_double(pl.em_v_max) << " "
       << pl.em_v_steps << "\n";
    os << "pipeline.em_a = " << fmt_double(pl.em_a_min) << " " << fmt_double(pl.em_a_max) << " "
       << pl.em_a_steps << "\n";
    os << "pipeline.ccr_max_iters = " << pl.ccr_max_iters << "\n";
    os << "pipeline.ccr_tol_bins = " << fmt_double(pl.ccr_tol_bins) << "\n";
    os << "pipeline.ccr_adjacent = " << (pl.ccr_adjacent ? "true" : "false") << "\n";
    os << "pipeline.pga_max_iters = " << pl.pga_max_iters << "\n";
    os << "pipeline.pga_rms_tol_rad = " << fmt_double(pl.pga_rms_tol_rad) << "\n";
    os << "pipeline.pga_top_k = " << pl.pga_top_k << "\n";
    os << "pipeline.threads = " << pl.threads << "\n";
    os << "pipeline.siso_channel = " << pl.siso_tx << " " << pl.siso_rx << "\n";
    os << "pipeline.mask_threshold_db = " << fmt_double(pl.mask_threshold_db) << "\n";

    const OutputConfig& out = cfg.output;
    os << "output.dir = " << out.dir << "\n";
    os << "output.write_cubes = " << (out.write_cubes ? "true" : "false") << "\n";
    os << "output.image_format = " << out.image_format << "\n";
    os << "output.db_floor_db = " << fmt_double(out.db_floor_db) << "\n";
    return os.str();
}

ScenarioConfig default_config() {
    ScenarioConfig cfg;
    cfg.radar = RadarParams::automotive_defaults();
    cfg.radar.expected_max_velocity_mps = 5.0; // datasheet figure; warns against derived value
    cfg.scene.preset = "uturn-car";
    cfg.scene.seed = 1;
    return cfg;
}

} // namespace isar
