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

#include "isar/imaging.hpp"

#include <cmath>

#include "isar/fft.hpp"

namespace isar {

void FrameStack::validate() const {
    if (frames.empty()) throw NumericError("frame stack is empty");
    const RDImage& f0 = frames.front();
    for (const RDImage& f : frames) {
        if (f.num_range != f0.num_range || f.num_doppler != f0.num_doppler)
            throw NumericError("frame stack has non-uniform image dimensions");
        if (f.range_bin_m != f0.range_bin_m || f.doppler_bin_hz != f0.doppler_bin_hz)
            throw NumericError("frame stack has non-uniform axes");
    }
}

ComplexMat range_profiles(const RawCube& cube, int p, int q, bool hann_window) {
    if (p < 0 || p >= cube.num_tx || q < 0 || q >= cube.num_rx)
        throw NumericError("channel index out of range");
    const int L = cube.num_slow, N = cube.num_fast;
    const std::vector<double> w = hann_window ? dsp::hann_window(N) : std::vector<double>{};

    ComplexMat out(N, L);
    std::vector<cd> buf(N);
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (int l = 0; l < L; ++l) {
        const cd* row = cube.data.data() + cube.index(p, q, l, 0);
        for (int n = 0; n < N; ++n) buf[n] = hann_window ? row[n] * w[n] : row[n];
        dsp::dft_inplace(buf, +1); // +j kernel: positive beat delay -> increasing bin
        for (int k = 0; k < N; ++k) out.at(k, l) = buf[k] * scale;
    }
    return out;
}

RDImage range_doppler_from_profiles(const ComplexMat& profiles, int frame_index,
                                    double range_bin_m, double doppler_bin_hz, int channel_tx,
                                    int channel_rx) {
    const std::size_t N = profiles.rows, L = profiles.cols;
    RDImage img;
    img.num_range = N;
    img.num_doppler = L;
    img.pixels.resize(N * L);
    img.channel_tx = channel_tx;
    img.channel_rx = channel_rx;
    img.integrated = channel_tx < 0;
    img.frame_index = frame_index;
    img.range_bin_m = range_bin_m;
    img.doppler_bin_hz = doppler_bin_hz;

    std::vector<cd> buf(L);
    const double scale = 1.0 / static_cast<double>(L); // |X|^2 * (1/sqrt(L))^2
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t l = 0; l < L; ++l) buf[l] = profiles.at(k, l);
        dsp::dft_inplace(buf, -1);
        for (std::size_t d = 0; d < L; ++d)
            img.at(k, dsp::fftshift_index(d, L)) = std::norm(buf[d]) * scale;
    }
    return img;
}

RDImage range_doppler(const RawCube& cube, int p, int q, bool hann_window) {
    const DerivedParams drv = derive_params(cube.params);
    const ComplexMat profiles = range_profiles(cube, p, q, hann_window);
    return range_doppler_from_profiles(profiles, cube.frame_index, drv.range_bin_m,
                                       drv.doppler_bin_hz, p, q);
}

RDImage nci(std::span<const RDImage> images) {
    if (images.empty()) throw NumericError("nci needs at least one image");
    const RDImage& f0 = images.front();
    for (const RDImage& im : images) {
        if (im.num_range != f0.num_range || im.num_doppler != f0.num_doppler)
            throw NumericError("nci image dimension mismatch");
        if (im.frame_index != f0.frame_index)
            throw NumericError("nci images belong to different frames");
    }
    RDImage out = f0;
    out.channel_tx = -1;
    out.channel_rx = -1;
    out.integrated = true;
    // fixed accumulation order keeps the result bit-exact
    for (std::size_t i = 1; i < images.size(); ++i) {
        const RDImage& im = images[i];
        for (std::size_t k = 0; k < out.pixels.size(); ++k) out.pixels[k] += im.pixels[k];
    }
    const double inv = 1.0 / static_cast<double>(images.size());
    for (double& v : out.pixels) v *= inv;
    return out;
}

} // namespace isar
