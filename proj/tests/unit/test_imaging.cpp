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

#include <doctest.h>

#include <cmath>
#include <random>

#include "isar/imaging.hpp"
#include "isar/metrics.hpp"
#include "isar/synth.hpp"
#include "oracles.hpp"

using namespace isar;

namespace {

RadarParams desk_params(int P = 1, int Q = 1, int L = 32, int N = 64) {
    RadarParams p = RadarParams::automotive_defaults();
    p.num_tx = P;
    p.num_rx = Q;
    p.num_slow = L;
    p.num_fast = N;
    p.t_pri_s = 0.1 / 384.0;
    p.t_cpi_s = L * P * p.t_pri_s;
    return p;
}

std::pair<std::size_t, std::size_t> image_argmax(const RDImage& img) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < img.pixels.size(); ++i)
        if (img.pixels[i] > img.pixels[best]) best = i;
    return {best / img.num_doppler, best % img.num_doppler};
}

} // namespace

TEST_SUITE("imaging") {

TEST_CASE("stationary scatterer peaks at (its range bin, center Doppler)") {
    const RadarParams p = desk_params();
    const DerivedParams d = derive_params(p);
    const Scene sc = single_point_scenario(8.7, 0.0, 5.0, 0.0);
    const RawCube cube = synthesize_frame(sc, p, 0);
    const RDImage img = range_doppler(cube, 0, 0);
    const auto [rbin, dbin] = image_argmax(img);
    CHECK(rbin == static_cast<std::size_t>(std::lround(8.7 / d.range_bin_m)));
    CHECK(dbin == img.num_doppler / 2);
}

TEST_CASE("constant closing velocity lands at the closed-form Doppler offset") {
    const RadarParams p = desk_params(1, 1, 64, 64);
    const DerivedParams d = derive_params(p);
    // closing at 0.4 m/s: range rate -0.4, well within the unambiguous span,
    // range walk over one CPI = 0.4 * 0.0167 s = 7 mm << one range bin
    const Scene sc = single_point_scenario(12.0, -0.4, 5.0, 0.0);
    const RawCube cube = synthesize_frame(sc, p, 0);
    const RDImage img = range_doppler(cube, 0, 0);
    const auto [rbin, dbin] = image_argmax(img);
    const int offset = oracle::doppler_offset_bins(0.4, d.wavelength_m, d.t_cli_s, p.num_slow);
    CHECK(static_cast<int>(dbin) - static_cast<int>(img.num_doppler / 2) == offset);
    CHECK(rbin == static_cast<std::size_t>(std::lround(12.0 / d.range_bin_m)));
}

TEST_CASE("parseval: image power sums to N*L times the mean input power") {
    const RadarParams p = desk_params(1, 1, 16, 32);
    Scene sc = blank_scenario(1.0, 5.0);
    sc.seed = 5;
    const RawCube cube = synthesize_frame(sc, p, 0);
    const RDImage img = range_doppler(cube, 0, 0);

    double in_pow = 0.0;
    for (const cd& v : cube.data) in_pow += std::norm(v);
    const double mean_in = in_pow / static_cast<double>(cube.data.size());
    double img_sum = 0.0;
    for (double v : img.pixels) img_sum += v;
    CHECK(img_sum == doctest::Approx(16.0 * 32.0 * mean_in).epsilon(1e-10));
}

TEST_CASE("all-zero cube gives all-zero profiles") {
    const RadarParams p = desk_params();
    Scene sc = blank_scenario(0.0, 5.0); // no noise, no target
    const RawCube cube = synthesize_frame(sc, p, 0);
    const ComplexMat prof = range_profiles(cube, 0, 0);
    for (const cd& v : prof.d) CHECK(v == cd(0.0, 0.0));
}

TEST_CASE("scaling input by alpha scales pixels by |alpha|^2") {
    const RadarParams p = desk_params(1, 1, 8, 16);
    Scene sc = single_point_scenario(7.0, 0.0, 5.0, 0.0);
    RawCube cube = synthesize_frame(sc, p, 0);
    const RDImage base = range_doppler(cube, 0, 0);
    const cd alpha(1.5, -2.0);
    for (cd& v : cube.data) v *= alpha;
    const RDImage scaled = range_doppler(cube, 0, 0);
    for (std::size_t i = 0; i < base.pixels.size(); ++i)
        CHECK(scaled.pixels[i] ==
              doctest::Approx(std::norm(alpha) * base.pixels[i]).epsilon(1e-9));
}

TEST_CASE("invalid channel indices throw") {
    const RadarParams p = desk_params(2, 2, 8, 16);
    const Scene sc = blank_scenario(1.0, 5.0);
    const RawCube cube = synthesize_frame(sc, p, 0);
    CHECK_THROWS_AS(range_profiles(cube, 2, 0), NumericError);
    CHECK_THROWS_AS(range_profiles(cube, 0, 5), NumericError);
    CHECK_THROWS_AS(range_profiles(cube, -1, 0), NumericError);
}

TEST_CASE("nci of identical images is the identity; single image is identity") {
    const RadarParams p = desk_params();
    const Scene sc = single_point_scenario(9.0, 0.0, 5.0, 0.0);
    const RawCube cube = synthesize_frame(sc, p, 0);
    const RDImage img = range_doppler(cube, 0, 0);
    std::vector<RDImage> copies(5, img);
    const RDImage out = nci(copies);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        CHECK(out.pixels[i] == doctest::Approx(img.pixels[i]).epsilon(1e-14));
    CHECK(out.integrated);
    const RDImage one = nci(std::span<const RDImage>(&img, 1));
    CHECK(one.pixels == img.pixels);
}

TEST_CASE("nci is invariant to channel order") {
    const RadarParams p = desk_params(2, 2, 8, 16);
    Scene sc = blank_scenario(1.0, 5.0);
    const RawCube cube = synthesize_frame(sc, p, 0);
    std::vector<RDImage> imgs;
    for (int ch = 0; ch < 4; ++ch) imgs.push_back(range_doppler(cube, ch / 2, ch % 2));
    const RDImage a = nci(imgs);
    std::swap(imgs[0], imgs[3]);
    std::swap(imgs[1], imgs[2]);
    const RDImage b = nci(imgs);
    for (std::size_t i = 0; i < a.pixels.size(); ++i)
        CHECK(a.pixels[i] == doctest::Approx(b.pixels[i]).epsilon(1e-12));
}

TEST_CASE("nci errors: empty input, mismatched dimensions") {
    CHECK_THROWS_AS(nci(std::span<const RDImage>{}), NumericError);
    RDImage a;
    a.num_range = 4;
    a.num_doppler = 4;
    a.pixels.assign(16, 1.0);
    RDImage b = a;
    b.num_doppler = 8;
    b.pixels.assign(32, 1.0);
    std::vector<RDImage> imgs{a, b};
    CHECK_THROWS_AS(nci(imgs), NumericError);
}

TEST_CASE("noise-only NCI over 12 channels cuts the noise CoV by about 1/sqrt(12)") {
    const RadarParams p = desk_params(3, 4, 32, 64);
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Scene sc = blank_scenario(1.0, 5.0);
        sc.seed = seed;
        const RawCube cube = synthesize_frame(sc, p, 0);
        std::vector<RDImage> imgs;
        for (int ch = 0; ch < 12; ++ch) imgs.push_back(range_doppler(cube, ch / 4, ch % 4));

        FrameStack siso, mimo;
        siso.frames.push_back(imgs[0]);
        mimo.frames.push_back(nci(imgs));
        const double cov_s = noise_floor_cov(siso, CovDefinition::std_over_mean);
        const double cov_m = noise_floor_cov(mimo, CovDefinition::std_over_mean);
        const double ratio = cov_m / cov_s;
        const double want = 1.0 / std::sqrt(12.0);
        if (std::abs(ratio - want) < 0.2 * want) ++hits;
    }
    CHECK(hits == 20);
}

TEST_CASE("zero-noise single scatterer peaks at the same pixel in all 12 channels") {
    const RadarParams p = desk_params(3, 4, 16, 32);
    Scene sc;
    sc.scatterers = {{0.0, 0.0, 1.0}};
    sc.trajectory.waypoints = {{0.0, 2.0, 9.0}, {5.0, 2.3, 9.6}}; // moving, off boresight
    sc.trajectory.mode = RotationMode::law;
    const RawCube cube = synthesize_frame(sc, p, 0);
    const auto want = image_argmax(range_doppler(cube, 0, 0));
    for (int ch = 1; ch < 12; ++ch) {
        const auto got = image_argmax(range_doppler(cube, ch / 4, ch % 4));
        CHECK(got == want);
    }
}

TEST_CASE("hann window flag changes profiles but keeps the peak bin") {
    const RadarParams p = desk_params();
    const DerivedParams d = derive_params(p);
    const double r = 60.0 * d.range_bin_m; // exactly on a bin
    const Scene sc = single_point_scenario(r, 0.0, 5.0, 0.0);
    const RawCube cube = synthesize_frame(sc, p, 0);
    const RDImage plain = range_doppler(cube, 0, 0, false);
    const RDImage windowed = range_doppler(cube, 0, 0, true);
    CHECK(plain.pixels != windowed.pixels);
    CHECK(image_argmax(windowed).first == 60);
}

} // TEST_SUITE
