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

#include "isar/synth.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace isar {

namespace {

// Gaussian stream with a fully specified generator (mt19937_64 + Box-Muller on
// explicit 53-bit uniforms), so streams are reproducible across platforms.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_) {
            have_ = false;
            return cached_;
        }
        const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53; // (0, 1]
        const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;         // [0, 1)
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(2.0 * kPi * u2);
        have_ = true;
        return r * std::cos(2.0 * kPi * u2);
    }

  private:
    std::mt19937_64 eng_;
    bool have_ = false;
    double cached_ = 0.0;
};

struct EchoTerm {
    cd first;  // amplitude and phase of fast-time sample 0
    cd step;   // per-sample beat rotation
};

EchoTerm echo_term(double amplitude, double range_m, double azimuth_rad, int p, int q,
                   const RadarParams& prm, const DerivedParams& drv, bool rvp) {
    const double lambda = drv.wavelength_m;
    const double steer = -2.0 * kPi * (prm.d_tx_m * p + prm.d_rx_m * q) *
                         std::sin(azimuth_rad) / lambda;
    const double carrier = -4.0 * kPi * range_m / lambda;
    const double dtau = 2.0 * (range_m - prm.ref_range_m) / kSpeedOfLight;
    double phase0 = carrier + steer;
    if (rvp) phase0 -= kPi * prm.chirp_slope_hz_per_s * dtau * dtau;
    const double beat = -2.0 * kPi * prm.chirp_slope_hz_per_s * dtau / prm.sample_rate_sps;
    return {amplitude * cd(std::cos(phase0), std::sin(phase0)),
            cd(std::cos(beat), std::sin(beat))};
}

} // namespace

ComplexMat RawCube::channel(int p, int q) const {
    if (p < 0 || p >= num_tx || q < 0 || q >= num_rx)
        throw NumericError("channel index out of range");
    ComplexMat m(num_slow, num_fast);
    const std::size_t base = index(p, q, 0, 0);
    std::copy(data.begin() + base,
              data.begin() + base + static_cast<std::size_t>(num_slow) * num_fast, m.d.begin());
    return m;
}

RawCube synthesize_frame(const Scene& scene, const RadarParams& params, int frame_index,
                         const SynthOptions& opts) {
    scene.validate();
    const DerivedParams drv = derive_params(params);
    if (frame_index < 0) throw NumericError("frame_index must be non-negative");

    const int P = params.num_tx, Q = params.num_rx, L = params.num_slow, N = params.num_fast;
    const std::size_t total = static_cast<std::size_t>(P) * Q * L * N;
    if (total > (1ull << 28))
        throw NumericError("cube dimensions overflow the supported size");

    const double frame_start = frame_index * params.t_cpi_s;
    const Path path(scene.trajectory);
    if (frame_start < path.t_begin() - 1e-9 ||
        frame_start + params.t_cpi_s > path.t_end() + 1e-9) {
        std::ostringstream os;
        os << "frame " << frame_index << " spans [" << frame_start << ", "
           << frame_start + params.t_cpi_s << "] s, outside trajectory domain ["
           << path.t_begin() << ", " << path.t_end() << "] s";
        throw NumericError(os.str());
    }

    RawCube cube;
    cube.num_tx = P;
    cube.num_rx = Q;
    cube.num_slow = L;
    cube.num_fast = N;
    cube.frame_index = frame_index;
    cube.frame_start_s = frame_start;
    cube.seed = scene.seed;
    cube.scene_id = scene.name;
    cube.params = params;
    cube.params_digest = 0; // installed by cube_io writers from params
    cube.data.assign(total, cd(0.0, 0.0));

    const std::size_t B = scene.scatterers.size();

    // per-frame reflectivity jitter (slowly fluctuating sigma_b)
    std::vector<double> amp(B);
    {
        GaussianStream g(mix_seed(scene.seed, static_cast<std::uint64_t>(frame_index), 0x51f1u));
        for (std::size_t b = 0; b < B; ++b) {
            const double jitter = scene.sigma_fluct > 0.0 ? scene.sigma_fluct * g.next() : 0.0;
            amp[b] = std::max(0.0, scene.scatterers[b].reflectivity * (1.0 + jitter));
        }
    }

    // poses for every (p, l) sampling instant of this frame
    std::vector<Pose> poses(static_cast<std::size_t>(P) * L);
    for (int p = 0; p < P; ++p) {
        const double tx_off = opts.tdm_offset ? p * params.t_pri_s : 0.0;
        for (int l = 0; l < L; ++l)
            poses[static_cast<std::size_t>(p) * L + l] =
                path.pose(frame_start + l * drv.t_cli_s + tx_off);
    }

    for (int p = 0; p < P; ++p) {
        for (int q = 0; q < Q; ++q) {
            cd* chan = cube.data.data() + cube.index(p, q, 0, 0);

            for (int l = 0; l < L; ++l) {
                const Pose& pose = poses[static_cast<std::size_t>(p) * L + l];
                const double ang0 = std::atan2(pose.position.y, pose.position.x) + pose.psi_rad;
                const double ca = std::cos(ang0), sa = std::sin(ang0);
                cd* row = chan + static_cast<std::size_t>(l) * N;
                for (std::size_t b = 0; b < B; ++b) {
                    if (amp[b] == 0.0) continue;
                    const Scatterer& s = scene.scatterers[b];
                    const double px = pose.position.x + ca * s.x_local_m - sa * s.y_local_m;
                    const double py = pose.position.y + sa * s.x_local_m + ca * s.y_local_m;
                    const double r = std::hypot(px, py);
                    const double az = std::atan2(px, py);
                    EchoTerm e = echo_term(amp[b], r, az, p, q, params, drv, opts.rvp);
                    cd acc = e.first;
                    for (int n = 0; n < N; ++n) {
                        row[n] += acc;
                        acc *= e.step;
                    }
                }
            }

            // stationary clutter: constant range and azimuth, zero Doppler
            for (const Scatterer& c : scene.clutter) {
                if (c.reflectivity == 0.0) continue;
                const double r = std::hypot(c.x_local_m, c.y_local_m);
                const double az = std::atan2(c.x_local_m, c.y_local_m);
                EchoTerm e = echo_term(c.reflectivity, r, az, p, q, params, drv, opts.rvp);
                std::vector<cd> tone(N);
                cd acc = e.first;
                for (int n = 0; n < N; ++n) {
                    tone[n] = acc;
                    acc *= e.step;
                }
                for (int l = 0; l < L; ++l) {
                    cd* row = chan + static_cast<std::size_t>(l) * N;
                    for (int n = 0; n < N; ++n) row[n] += tone[n];
                }
            }

            if (scene.noise_power > 0.0) {
                const double sigma = std::sqrt(scene.noise_power / 2.0);
                GaussianStream g(mix_seed(scene.seed, static_cast<std::uint64_t>(frame_index),
                                          0x4e01u, (static_cast<std::uint64_t>(p) << 16) | q));
                for (std::size_t i = 0; i < static_cast<std::size_t>(L) * N; ++i) {
                    const double re = g.next();
                    const double im = g.next();
                    chan[i] += cd(sigma * re, sigma * im);
                }
            }
        }
    }
    return cube;
}

std::vector<RawCube> synthesize_sequence(const Scene& scene, const RadarParams& params,
                                         std::span<const int> frame_indices,
                                         const SynthOptions& opts) {
    std::vector<RawCube> out;
    out.reserve(frame_indices.size());
    for (int f : frame_indices) out.push_back(synthesize_frame(scene, params, f, opts));
    return out;
}

} // namespace isar
