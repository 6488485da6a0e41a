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
#include "isar/types.hpp"

namespace isar {

// All operations below work on one channel's range-compressed profiles
// (rows = range bins, cols = slow time) and apply only unitary corrections
// (circular shifts and unit-modulus phase factors), so input energy is
// preserved. Frames without a dominant scatterer 6 dB above the median bin
// power pass through unchanged with no_target set; blank frames feed the
// noise-floor metric and must not be distorted.

struct MocompResult {
    ComplexMat data;       // compensated profiles, same shape as input
    std::string algorithm; // "coarse" | "em" | "ccr" | "pga"
    bool no_target = false;
    int iterations = 0;

    double v_hat = 0.0; // em: selected residual velocity (m/s)
    double a_hat = 0.0; // em: selected residual acceleration (m/s^2)

    std::vector<double> shifts;           // coarse: integer bin shifts; ccr: accumulated shifts
    std::vector<double> phase_correction; // coarse: per-column phase removed;
                                          // pga: accumulated phase-error estimate
    std::vector<double> entropy_trace;    // [0] = input entropy, then one entry per iteration
    std::vector<double> entropy_surface;  // em: candidate entropies, v-major
    std::vector<std::string> warnings;
};

/// True when the strongest range bin's mean power exceeds the median bin's
/// mean power by more than 6 dB.
bool has_dominant_scatterer(const ComplexMat& profiles);

struct CoarseOptions {
    bool force = false; // skip the no-target gate
};

/// Integer range alignment to the first column's peak bin (phase ramp in the
/// fast-time domain) followed by peak-phase flattening of the dominant bin.
MocompResult coarse_mocomp(const ComplexMat& profiles, const CoarseOptions& opts = {});

struct EmOptions {
    bool force = false;
};

/// Grid search over residual (velocity, acceleration); each candidate applies
/// exp(+j*(4*pi/lambda)*(v*t_l + a*t_l^2/2)) per column and the candidate with
/// the lowest image entropy wins (ties: smallest |v|, then smallest |a|).
MocompResult em_mocomp(const ComplexMat& profiles, const RadarParams& params,
                       std::span<const double> v_grid, std::span<const double> a_grid,
                       const EmOptions& opts = {});

struct CcrOptions {
    int max_iters = 97;
    double conv_tol_bins = 1e-3; // stop when the largest shift update falls below
    bool adjacent = false;       // reference = previous aligned column instead of the running mean
    bool force = false;
};

/// Envelope cross-correlation range alignment with 3-point parabolic sub-bin
/// refinement. The first pass aligns progressively against a growing mean
/// envelope; later passes refine against the full mean. The best-entropy
/// iterate is retained.
MocompResult ccr_mocomp(const ComplexMat& profiles, const CcrOptions& opts = {});

struct PgaOptions {
    int max_iters = 10;
    double rms_tol_rad = 1e-3;
    int top_k = 16; // strongest range bins used for estimation
    bool force = false;
};

/// Phase gradient autofocus: per iteration selects the strongest range bins,
/// circularly centers their Doppler responses, applies a power-adaptive
/// window, estimates the per-chirp phase gradient with the weighted kernel
/// sum_bins Im{conj(g_l)*(g_{l+1}-g_l)} / sum_bins |g_l|^2, integrates,
/// removes the constant+linear part and applies the conjugate correction.
MocompResult pga_mocomp(const ComplexMat& profiles, const PgaOptions& opts = {});

/// Image entropy of range-compressed profiles (Doppler transform + Shannon
/// entropy); the quantity every iterative algorithm above tracks.
double profiles_entropy(const ComplexMat& profiles);

} // namespace isar
