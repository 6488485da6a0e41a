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

#include "isar/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "isar/cube_io.hpp"
#include "isar/image_export.hpp"
#include "isar/mocomp.hpp"
#include "isar/parallel.hpp"
#include "isar/synth.hpp"

namespace isar {

namespace {

namespace fs = std::filesystem;

template <typename Fn>
auto stage(const char* label, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const IoError& e) {
        throw IoError(std::string(label) + ": " + e.what());
    } catch (const NumericError& e) {
        throw NumericError(std::string(label) + ": " + e.what());
    }
}

ComplexMat apply_mocomp(const ComplexMat& profiles, MocompAlgo algo, const ScenarioConfig& cfg,
                        const std::vector<double>& v_grid, const std::vector<double>& a_grid) {
    if (algo == MocompAlgo::none) return profiles;
    const MocompResult coarse = coarse_mocomp(profiles);
    switch (algo) {
        case MocompAlgo::em:
            return em_mocomp(coarse.data, cfg.radar, v_grid, a_grid).data;
        case MocompAlgo::pga: {
            PgaOptions o;
            o.max_iters = cfg.pipeline.pga_max_iters;
            o.rms_tol_rad = cfg.pipeline.pga_rms_tol_rad;
            o.top_k = cfg.pipeline.pga_top_k;
            return pga_mocomp(coarse.data, o).data;
        }
        case MocompAlgo::ccr: {
            CcrOptions o;
            o.max_iters = cfg.pipeline.ccr_max_iters;
            o.conv_tol_bins = cfg.pipeline.ccr_tol_bins;
            o.adjacent = cfg.pipeline.ccr_adjacent;
            return ccr_mocomp(coarse.data, o).data;
        }
        default: return profiles;
    }
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + path.string());
}

} // namespace

PipelineResult run_pipeline(const ScenarioConfig& cfg_in, const RunOverrides& ovr) {
    ScenarioConfig cfg = cfg_in;
    if (ovr.seed) cfg.scene.seed = *ovr.seed;
    if (ovr.algo) cfg.pipeline.algo = *ovr.algo;
    if (ovr.frames) cfg.pipeline.frames = *ovr.frames;
    if (ovr.out_dir) cfg.output.dir = *ovr.out_dir;
    const int threads = ovr.threads >= 0 ? ovr.threads : cfg.pipeline.threads;

    PipelineResult res;
    auto log = [&](const std::string& s) { res.log.push_back(s); };

    const DerivedParams drv = stage("params", [&] { return derive_params(cfg.radar); });
    for (const std::string& w : validate_params(cfg.radar)) log("warning: " + w);

    const Scene scene = stage("scene", [&] { return cfg.scene.build(); });
    Scene blank_scene = scene;
    blank_scene.scatterers.clear();
    blank_scene.name = scene.name + "-blank";
    const bool no_target = scene.scatterers.empty();
    if (no_target) log("scenario has no target scatterers; reporting noise-floor stats only");

    std::vector<MocompAlgo> algos;
    if (cfg.pipeline.algo == "all") {
        algos.assign(kAllAlgos.begin(), kAllAlgos.end());
    } else {
        algos.push_back(algo_from_name(cfg.pipeline.algo));
        if (algos[0] != MocompAlgo::none) algos.insert(algos.begin(), MocompAlgo::none);
    }
    res.full_table = algos.size() == kAllAlgos.size();

    const std::vector<int>& frames = cfg.pipeline.frames;
    const std::vector<int>& blanks = cfg.pipeline.blank_frames;
    const int P = cfg.radar.num_tx, Q = cfg.radar.num_rx;
    const int C = P * Q;
    res.channels_per_frame = C;
    if (cfg.pipeline.siso_tx < 0 || cfg.pipeline.siso_tx >= P || cfg.pipeline.siso_rx < 0 ||
        cfg.pipeline.siso_rx >= Q)
        throw ConfigError("pipeline.siso_channel is outside the configured array");
    if (frames.empty() || blanks.empty())
        throw ConfigError("pipeline needs at least one target frame and one blank frame");

    SynthOptions sopt;
    sopt.tdm_offset = cfg.pipeline.tdm_offset;
    sopt.rvp = cfg.pipeline.rvp;

    // ---- simulate ----------------------------------------------------------
    const std::size_t n_target = frames.size(), n_blank = blanks.size();
    std::vector<RawCube> cubes(n_target + n_blank);
    stage("simulate", [&] {
        parallel_for(cubes.size(), threads, [&](std::size_t i) {
            if (i < n_target) {
                cubes[i] = synthesize_frame(scene, cfg.radar, frames[i], sopt);
            } else {
                cubes[i] = synthesize_frame(blank_scene, cfg.radar, blanks[i - n_target], sopt);
            }
            cubes[i].params_digest = params_digest(cfg.radar);
        });
        return 0;
    });
    for (std::size_t i = 0; i < cubes.size(); ++i)
        log("simulate: frame " + std::to_string(cubes[i].frame_index) + " (" +
            cubes[i].scene_id + "), " + std::to_string(C) + " channels");

    // ---- range compression (shared by every algorithm) ---------------------
    std::vector<ComplexMat> profiles(cubes.size() * C);
    stage("range-compress", [&] {
        parallel_for(profiles.size(), threads, [&](std::size_t i) {
            const std::size_t f = i / C;
            const int ch = static_cast<int>(i % C);
            profiles[i] = range_profiles(cubes[f], ch / Q, ch % Q, cfg.pipeline.hann);
        });
        return 0;
    });

    const std::vector<double> v_grid = cfg.pipeline.em_v_grid();
    const std::vector<double> a_grid = cfg.pipeline.em_a_grid();
    const int siso = cfg.pipeline.siso_tx * Q + cfg.pipeline.siso_rx;

    // ---- mocomp + imaging + metrics per algorithm --------------------------
    std::array<std::array<ConfigCell, 4>, 2> cells;
    std::array<std::array<bool, 4>, 2> present{{{false, false, false, false},
                                               {false, false, false, false}}};

    const fs::path out_root(cfg.output.dir);
    if (ovr.write_artifacts) {
        stage("output", [&] {
            fs::create_directories(out_root);
            return 0;
        });
    }
    auto record_artifact = [&](const fs::path& p) { res.artifacts.push_back(p.string()); };

    auto export_one = [&](const fs::path& dir, const std::string& name, const RDImage& img) {
        const std::string& f = cfg.output.image_format;
        if (f == "none") return;
        if (f == "pgm" || f == "both") {
            export_image_pgm((dir / (name + ".pgm")).string(), img, cfg.output.db_floor_db);
            record_artifact(dir / (name + ".pgm"));
        }
        if (f == "csv" || f == "both") {
            export_image_csv((dir / (name + ".csv")).string(), img, cfg.output.db_floor_db);
            record_artifact(dir / (name + ".csv"));
        }
    };

    for (MocompAlgo algo : algos) {
        const int ai = static_cast<int>(algo);
        std::vector<RDImage> images(cubes.size() * C);
        stage("mocomp", [&] {
            parallel_for(images.size(), threads, [&](std::size_t i) {
                const ComplexMat comp = apply_mocomp(profiles[i], algo, cfg, v_grid, a_grid);
                const std::size_t f = i / C;
                const int ch = static_cast<int>(i % C);
                images[i] = range_doppler_from_profiles(comp, cubes[f].frame_index, drv.range_bin_m,
                                                        drv.doppler_bin_hz, ch / Q, ch % Q);
            });
            return 0;
        });

        FrameStack siso_targets, mimo_targets, siso_blanks, mimo_blanks;
        for (std::size_t f = 0; f < cubes.size(); ++f) {
            const RDImage& s = images[f * C + siso];
            const RDImage m =
                nci(std::span<const RDImage>(images.data() + f * C, static_cast<std::size_t>(C)));
            if (f < n_target) {
                siso_targets.frames.push_back(s);
                mimo_targets.frames.push_back(m);
            } else {
                siso_blanks.frames.push_back(s);
                mimo_blanks.frames.push_back(m);
            }
        }
        log("mocomp/" + std::string(algo_name(algo)) + ": " + std::to_string(cubes.size()) +
            " frames x " + std::to_string(C) + " channels");

        for (int c = 0; c < 2; ++c) {
            ConfigCell& cell = cells[c][ai];
            const FrameStack& targets = c == 0 ? siso_targets : mimo_targets;
            const FrameStack& blanks_stack = c == 0 ? siso_blanks : mimo_blanks;
            cell.blanks = blanks_stack;
            if (!no_target) {
                for (const RDImage& img : targets.frames) {
                    cell.entropy_per_frame.push_back(image_entropy(img));
                    const auto mask = peak_relative_mask(img, cfg.pipeline.mask_threshold_db);
                    cell.scnr_db_per_frame.push_back(scnr_db(img, mask, blanks_stack));
                }
            }
            present[c][ai] = true;
        }

        if (ovr.write_artifacts && cfg.output.image_format != "none") {
            const fs::path dir = out_root / "images" / algo_name(algo);
            stage("output", [&] {
                fs::create_directories(dir);
                for (std::size_t f = 0; f < cubes.size(); ++f) {
                    const std::string tag = (f < n_target ? "frame" : "blank") +
                                            std::to_string(cubes[f].frame_index);
                    const bool target = f < n_target;
                    const RDImage& s =
                        target ? siso_targets.frames[f] : siso_blanks.frames[f - n_target];
                    const RDImage& m =
                        target ? mimo_targets.frames[f] : mimo_blanks.frames[f - n_target];
                    export_one(dir, "siso_" + tag, s);
                    export_one(dir, "mimo_" + tag, m);
                }
                return 0;
            });
        }
    }

    // ---- report -------------------------------------------------------------
    res.report = stage("metrics", [&] {
        return res.full_table ? comparison_table(cells, frames)
                              : comparison_table_partial(cells, present, frames);
    });
    res.report.degenerate_no_target = no_target;

    if (ovr.write_artifacts) {
        stage("output", [&] {
            write_text_file(out_root / "scenario.cfg", serialize_config(cfg));
            record_artifact(out_root / "scenario.cfg");
            write_text_file(out_root / "report.txt", res.report.render_text());
            record_artifact(out_root / "report.txt");
            write_text_file(out_root / "report.csv", res.report.render_csv());
            record_artifact(out_root / "report.csv");
            if (cfg.output.write_cubes) {
                const fs::path cdir = out_root / "cubes";
                fs::create_directories(cdir);
                for (std::size_t i = 0; i < cubes.size(); ++i) {
                    const std::string tag = (i < n_target ? "frame" : "blank") +
                                            std::to_string(cubes[i].frame_index);
                    const fs::path p = cdir / (tag + ".isarcube");
                    write_cube(p.string(), cubes[i]);
                    record_artifact(p);
                }
            }
            std::string logtext;
            for (const std::string& s : res.log) logtext += s + "\n";
            write_text_file(out_root / "run.log", logtext);
            record_artifact(out_root / "run.log");
            return 0;
        });
    }

    return res;
}

} // namespace isar
