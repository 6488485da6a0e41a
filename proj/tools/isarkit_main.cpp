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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "isar/config.hpp"
#include "isar/cube_io.hpp"
#include "isar/fft.hpp"
#include "isar/image_export.hpp"
#include "isar/mocomp.hpp"
#include "isar/parallel.hpp"
#include "isar/pipeline.hpp"
#include "isar/synth.hpp"

namespace fs = std::filesystem;
using namespace isar;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string algo;
    std::string frames;
    std::string out_dir;
    std::string in_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = -1;
};

std::vector<int> parse_frames_flag(const std::string& s) {
    std::vector<int> out;
    std::size_t i = 0;
    while (i <= s.size()) {
        std::size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        const std::string tok = s.substr(i, j - i);
        if (!tok.empty()) out.push_back(std::stoi(tok));
        if (j == s.size()) break;
        i = j + 1;
    }
    if (out.empty()) throw ConfigError("--frames expects a comma-separated list of frame indices");
    return out;
}

ScenarioConfig load_or_default(const CommonArgs& args) {
    ScenarioConfig cfg = args.config_path.empty() ? default_config() : load_config(args.config_path);
    if (args.seed_set) cfg.scene.seed = args.seed;
    if (!args.algo.empty()) cfg.pipeline.algo = args.algo;
    if (!args.frames.empty()) cfg.pipeline.frames = parse_frames_flag(args.frames);
    if (!args.out_dir.empty()) cfg.output.dir = args.out_dir;
    if (args.threads >= 0) cfg.pipeline.threads = args.threads;
    return cfg;
}

RunOverrides overrides_from(const CommonArgs& args) {
    RunOverrides ovr;
    ovr.threads = args.threads;
    return ovr;
}

int cmd_simulate(const CommonArgs& args) {
    ScenarioConfig cfg = load_or_default(args);
    const Scene scene = cfg.scene.build();
    Scene blank = scene;
    blank.scatterers.clear();
    blank.name = scene.name + "-blank";

    SynthOptions sopt;
    sopt.tdm_offset = cfg.pipeline.tdm_offset;
    sopt.rvp = cfg.pipeline.rvp;

    const fs::path dir = fs::path(cfg.output.dir) / "cubes";
    fs::create_directories(dir);
    const std::uint64_t digest = params_digest(cfg.radar);

    auto write_one = [&](const Scene& sc, int frame, const char* prefix) {
        RawCube cube = synthesize_frame(sc, cfg.radar, frame, sopt);
        cube.params_digest = digest;
        const fs::path p = dir / (std::string(prefix) + std::to_string(frame) + ".isarcube");
        write_cube(p.string(), cube);
        std::cout << "wrote " << p.string() << " (" << cube.num_tx * cube.num_rx
                  << " channels)\n";
    };
    for (int f : cfg.pipeline.frames) write_one(scene, f, "frame");
    for (int f : cfg.pipeline.blank_frames) write_one(blank, f, "blank");
    return 0;
}

std::vector<fs::path> cube_files_in(const std::string& dir) {
    std::vector<fs::path> files;
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".isarcube") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw IoError("no .isarcube files in " + dir);
    return files;
}

int cmd_mocomp(const CommonArgs& args) {
    ScenarioConfig cfg = load_or_default(args);
    if (args.in_dir.empty()) throw ConfigError("mocomp requires --in DIR with cube files");
    const std::string algo_str = cfg.pipeline.algo == "all" ? "ccr" : cfg.pipeline.algo;
    const MocompAlgo algo = algo_from_name(algo_str);
    const DerivedParams drv = derive_params(cfg.radar);
    (void)drv;

    const fs::path out = fs::path(cfg.output.dir) / "mocomp" / algo_str;
    fs::create_directories(out);

    for (const fs::path& f : cube_files_in(args.in_dir)) {
        RawCube cube = read_cube(f.string());
        attach_params(cube, cfg.radar);
        const int Q = cube.num_rx;
        std::vector<ComplexMat> comp(static_cast<std::size_t>(cube.num_tx) * Q);
        parallel_for(comp.size(), cfg.pipeline.threads, [&](std::size_t i) {
            const int p = static_cast<int>(i) / Q, q = static_cast<int>(i) % Q;
            ComplexMat profiles = range_profiles(cube, p, q, cfg.pipeline.hann);
            if (algo != MocompAlgo::none) {
                MocompResult coarse = coarse_mocomp(profiles);
                switch (algo) {
                    case MocompAlgo::em:
                        profiles = em_mocomp(coarse.data, cfg.radar, cfg.pipeline.em_v_grid(),
                                             cfg.pipeline.em_a_grid())
                                       .data;
                        break;
                    case MocompAlgo::pga: {
                        PgaOptions o;
                        o.max_iters = cfg.pipeline.pga_max_iters;
                        o.rms_tol_rad = cfg.pipeline.pga_rms_tol_rad;
                        o.top_k = cfg.pipeline.pga_top_k;
                        profiles = pga_mocomp(coarse.data, o).data;
                        break;
                    }
                    case MocompAlgo::ccr: {
                        CcrOptions o;
                        o.max_iters = cfg.pipeline.ccr_max_iters;
                        o.conv_tol_bins = cfg.pipeline.ccr_tol_bins;
                        o.adjacent = cfg.pipeline.ccr_adjacent;
                        profiles = ccr_mocomp(coarse.data, o).data;
                        break;
                    }
                    default: break;
                }
            }
            comp[i] = std::move(profiles);
        });

        // back to fast time so the output is a cube again (unitary inverse)
        RawCube out_cube = cube;
        for (int p = 0; p < cube.num_tx; ++p)
            for (int q = 0; q < Q; ++q) {
                const ComplexMat& m = comp[static_cast<std::size_t>(p) * Q + q];
                std::vector<cd> col(cube.num_fast);
                const double scale = 1.0 / std::sqrt(static_cast<double>(cube.num_fast));
                for (int l = 0; l < cube.num_slow; ++l) {
                    for (int n = 0; n < cube.num_fast; ++n) col[n] = m.at(n, l);
                    dsp::dft_inplace(col, -1); // inverse of the +j range kernel
                    for (int n = 0; n < cube.num_fast; ++n)
                        out_cube.at(p, q, l, n) = col[n] * scale;
                }
            }
        const fs::path dst = out / f.filename();
        write_cube(dst.string(), out_cube);
        std::cout << "wrote " << dst.string() << "\n";
    }
    return 0;
}

int cmd_image(const CommonArgs& args) {
    ScenarioConfig cfg = load_or_default(args);
    if (args.in_dir.empty()) throw ConfigError("image requires --in DIR with cube files");
    const fs::path out = fs::path(cfg.output.dir) / "images" / "from-cubes";
    fs::create_directories(out);
    for (const fs::path& f : cube_files_in(args.in_dir)) {
        RawCube cube = read_cube(f.string());
        attach_params(cube, cfg.radar);
        std::vector<RDImage> channel_images;
        for (int p = 0; p < cube.num_tx; ++p)
            for (int q = 0; q < cube.num_rx; ++q)
                channel_images.push_back(range_doppler(cube, p, q, cfg.pipeline.hann));
        const RDImage integrated = nci(channel_images);
        const RDImage& siso =
            channel_images[static_cast<std::size_t>(cfg.pipeline.siso_tx) * cube.num_rx +
                           cfg.pipeline.siso_rx];
        const std::string stem = f.stem().string();
        auto save = [&](const std::string& name, const RDImage& img) {
            if (cfg.output.image_format == "pgm" || cfg.output.image_format == "both")
                export_image_pgm((out / (name + ".pgm")).string(), img, cfg.output.db_floor_db);
            if (cfg.output.image_format == "csv" || cfg.output.image_format == "both")
                export_image_csv((out / (name + ".csv")).string(), img, cfg.output.db_floor_db);
        };
        save("siso_" + stem, siso);
        save("mimo_" + stem, integrated);
        std::cout << "imaged " << f.filename().string() << " (" << channel_images.size()
                  << " channels)\n";
    }
    return 0;
}

int cmd_run(const CommonArgs& args, bool metrics_only) {
    ScenarioConfig cfg = load_or_default(args);
    if (metrics_only) {
        cfg.output.image_format = "none";
        cfg.output.write_cubes = false;
    }
    PipelineResult res = run_pipeline(cfg, overrides_from(args));
    for (const std::string& s : res.log) std::cout << s << "\n";
    std::cout << "\n" << res.report.render_text();
    std::cout << "\nartifacts under " << cfg.output.dir << ":\n";
    for (const std::string& a : res.artifacts) std::cout << "  " << a << "\n";
    return 0;
}

int cmd_formats() {
    std::cout << cube_format_description() << "\n";
    std::cout << "Scenario config: line-oriented 'section.key = value', '#' comments.\n"
                 "Sections: radar, scene, pipeline, output. Repeatable keys:\n"
                 "scene.waypoint, scene.scatterer, scene.clutter.\n"
                 "The default scenario (printed by `isarkit config`) lists every key.\n\n";
    std::cout << "Exit codes: 0 success, 2 config error, 3 I/O error, 4 numeric/degenerate input.\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"isarkit: TDM-MIMO FMCW radar simulation, ISAR imaging and motion compensation"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* sub, bool with_in) {
        sub->add_option("--config", args.config_path, "scenario config file (defaults built in)");
        sub->add_option("--algo", args.algo, "mocomp algorithm: none|em|ccr|pga|all");
        sub->add_option("--frames", args.frames, "comma-separated target frame indices");
        sub->add_option("--seed", args.seed, "scene seed override")
            ->each([&](const std::string&) { args.seed_set = true; });
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--threads", args.threads, "worker threads (0 = auto)");
        if (with_in) sub->add_option("--in", args.in_dir, "input directory with .isarcube files");
    };

    CLI::App* sim = app.add_subcommand("simulate", "synthesize dechirped cubes and write them");
    add_common(sim, false);
    CLI::App* moc = app.add_subcommand("mocomp", "apply motion compensation to cube files");
    add_common(moc, true);
    CLI::App* img = app.add_subcommand("image", "form range-Doppler images from cube files");
    add_common(img, true);
    CLI::App* met = app.add_subcommand("metrics", "run the pipeline, report metrics only");
    add_common(met, false);
    CLI::App* run = app.add_subcommand("run", "full pipeline: simulate, mocomp, image, metrics");
    add_common(run, false);
    CLI::App* cfg_cmd = app.add_subcommand("config", "print the normalized scenario config");
    add_common(cfg_cmd, false);
    app.add_subcommand("formats", "describe the binary cube layout and config dialect");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("simulate")) return cmd_simulate(args);
        if (app.got_subcommand("mocomp")) return cmd_mocomp(args);
        if (app.got_subcommand("image")) return cmd_image(args);
        if (app.got_subcommand("metrics")) return cmd_run(args, true);
        if (app.got_subcommand("run")) return cmd_run(args, false);
        if (app.got_subcommand("config")) {
            std::cout << serialize_config(load_or_default(args));
            return 0;
        }
        if (app.got_subcommand("formats")) return cmd_formats();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
