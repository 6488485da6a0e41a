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

#include "isar/types.hpp"

namespace isar::dsp {

/// In-place DFT of arbitrary length, kernel exp(sign * j*2*pi*k*n/N), unnormalized.
/// sign = -1 is the conventional forward transform, sign = +1 the inverse kernel.
/// Power-of-two lengths use iterative radix-2; other lengths go through Bluestein.
/// Twiddle tables are cached per thread, so results are bit-identical for a given
/// length regardless of which worker runs the transform.
void dft_inplace(std::span<cd> x, int sign);

/// Forward transform (sign -1), unnormalized.
void fft(std::span<cd> x);

/// Inverse transform (sign +1) scaled by 1/N, so ifft(fft(x)) == x.
void ifft(std::span<cd> x);

/// Swap halves so that bin 0 lands at index n/2 (n even) or (n-1)/2 (n odd).
void fftshift(std::span<cd> x);

/// Index of raw DFT bin k after fftshift of an n-point spectrum.
std::size_t fftshift_index(std::size_t k, std::size_t n);

/// Periodic-symmetric Hann window coefficients.
std::vector<double> hann_window(std::size_t n);

/// Circularly shift a signal by `shift_bins` (may be fractional) via a linear
/// phase ramp in the conjugate domain: y[k] ~= x[k - shift]. Unitary.
void circular_shift(std::span<cd> x, double shift_bins);

} // namespace isar::dsp
