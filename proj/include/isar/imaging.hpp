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
#include <vector>

#include "isar/synth.hpp"
#include "isar/types.hpp"

namespace isar {

/// Range-Doppler magnitude image, linear power pixels, row-major
/// [range bin][doppler bin]. Doppler is fftshift-centered: zero Doppler sits
/// at bin num_doppler/2, approaching targets land above the center.
struct RDImage {
    std::size_t num_range = 0;
    std::size_t num_doppler = 0;
    std::vector<double> pixels;
    int channel_tx = -1; // (-1, -1) and integrated=true for NCI output
    int channel_rx = -1;
    bool integrated = false;
    int frame_index = 0;
    double range_bin_m = 0.0;
    double doppler_bin_hz = 0.0;

    double& at(std::size_t r, std::size_t d) { return pixels[r * num_doppler + d]; }
    const double& at(std::size_t r, std::size_t d) const { return pixels[r * num_doppler + d]; }
};

/// Ordered images of one configuration (a fixed channel, or NCI) across frames.
struct FrameStack {
    std::vector<RDImage> frames;
    void validate() const; // uniform dimensions and axes
};

// Transform conventions, fixed and tested:
//  - fast time -> range uses the exp(+j*2*pi*k*n/N) kernel so that a scatterer
//    beyond the dechirp reference (beat exp(-j*2*pi*f_b*n/f_s)) lands at bin
//    round(delta_R / range_bin);
//  - slow time -> Doppler uses the conventional exp(-j...) kernel;
//  - both stages are scaled 1/sqrt(size), so summed image power equals
//    N*L times the mean input power (Parseval).

/// Range-compressed profiles of one channel: rows = range bin (0..N-1),
/// cols = slow time (0..L-1). Optional Hann window on fast time.
ComplexMat range_profiles(const RawCube& cube, int p, int q, bool hann_window = false);

/// Full range-Doppler power image of one channel.
RDImage range_doppler(const RawCube& cube, int p, int q, bool hann_window = false);

/// Doppler stage only, for data that already went through range compression
/// (and possibly motion compensation). Metadata must be supplied by the caller.
RDImage range_doppler_from_profiles(const ComplexMat& profiles, int frame_index,
                                    double range_bin_m, double doppler_bin_hz,
                                    int channel_tx = -1, int channel_rx = -1);

/// Non-coherent integration: pixelwise mean over channel images of one frame.
RDImage nci(std::span<const RDImage> images);

} // namespace isar
