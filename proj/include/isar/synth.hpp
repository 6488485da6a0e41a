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

#include <span>
#include <string>
#include <vector>

#include "isar/params.hpp"
#include "isar/scene.hpp"
#include "isar/types.hpp"

namespace isar {

/// Dechirped complex samples for one CPI frame, indexed [tx p][rx q][slow l][fast n].
struct RawCube {
    int num_tx = 0;
    int num_rx = 0;
    int num_slow = 0;
    int num_fast = 0;
    int frame_index = 0;
    double frame_start_s = 0.0;
    std::uint64_t seed = 0;
    std::string scene_id;
    std::uint64_t params_digest = 0;
    RadarParams params;
    std::vector<cd> data;

    std::size_t index(int p, int q, int l, int n) const {
        return ((static_cast<std::size_t>(p) * num_rx + q) * num_slow + l) * num_fast + n;
    }
    cd& at(int p, int q, int l, int n) { return data[index(p, q, l, n)]; }
    const cd& at(int p, int q, int l, int n) const { return data[index(p, q, l, n)]; }

    /// Raw (slow x fast) rectangle of one channel: rows = slow time, cols = fast time.
    ComplexMat channel(int p, int q) const;
};

struct SynthOptions {
    bool tdm_offset = true; // apply the p*T_PRI intra-loop timing in r_b(t)
    bool rvp = false;       // keep the residual video phase term exp(-j*pi*K*dtau^2)
};

/// Synthesizes the stretch-processed cube of one frame. Per sample the
/// contribution of scatterer b is
///   sigma_b * u_p * u_q * exp(-j*4*pi*r_b(t)/lambda)
///           * exp(-j*2*pi*K*(2*(r_b(t)-ref_range)/c) * n/f_s)
/// with u_p = exp(-j*2*pi*d_tx*p*sin(phi_b)/lambda) (u_q likewise) and
/// t = frame_start + l*T_CLI + p*T_PRI. Doppler, range walk and higher-order
/// motion all emerge from evaluating r_b(t) chirp by chirp; no explicit
/// Doppler factor is injected. Clutter is stationary, noise is i.i.d.
/// circular complex Gaussian from a per-(frame,p,q) counter-seeded stream,
/// so results are identical no matter how frames or channels are scheduled.
RawCube synthesize_frame(const Scene& scene, const RadarParams& params, int frame_index,
                         const SynthOptions& opts = {});

/// Independent frames; each deterministic from (scene.seed, frame_index).
std::vector<RawCube> synthesize_sequence(const Scene& scene, const RadarParams& params,
                                         std::span<const int> frame_indices,
                                         const SynthOptions& opts = {});

} // namespace isar
