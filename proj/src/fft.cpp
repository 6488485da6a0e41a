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

#include "isar/fft.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace isar {

double total_power(const ComplexMat& m) {
    double s = 0.0;
    for (const cd& v : m.d) s += std::norm(v);
    return s;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    auto step = [](std::uint64_t& s) {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t s = a;
    std::uint64_t h = step(s);
    s ^= b * 0xff51afd7ed558ccdULL;
    h ^= step(s);
    s ^= c * 0xc4ceb9fe1a85ec53ULL;
    h ^= step(s);
    s ^= d * 0x2545f4914f6cdd1dULL;
    h ^= step(s);
    return h;
}

} // namespace isar

namespace isar::dsp {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Twiddles for the radix-2 kernel, sign folded in. Cached per thread; the
// values are a pure function of (n, sign) so every thread computes the same
// table and transforms stay bit-identical under any scheduling.
const std::vector<cd>& twiddles(std::size_t n, int sign) {
    thread_local std::unordered_map<std::uint64_t, std::vector<cd>> cache;
    const std::uint64_t key = (static_cast<std::uint64_t>(n) << 1) | (sign > 0 ? 1u : 0u);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<cd> w(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double ang = sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
        w[k] = cd(std::cos(ang), std::sin(ang));
    }
    return cache.emplace(key, std::move(w)).first->second;
}

void radix2(std::span<cd> x, int sign) {
    const std::size_t n = x.size();
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    const std::vector<cd>& w = twiddles(n, sign);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd t = x[i + k + len / 2] * w[k * stride];
                x[i + k + len / 2] = x[i + k] - t;
                x[i + k] += t;
            }
        }
    }
}

struct BluesteinTables {
    std::size_t m = 0;           // convolution length (power of two)
    std::vector<cd> chirp;       // a_k = exp(sign*j*pi*k^2/n), k in [0, n)
    std::vector<cd> bhat;        // forward FFT of the zero-padded reciprocal chirp
};

const BluesteinTables& bluestein_tables(std::size_t n, int sign) {
    thread_local std::unordered_map<std::uint64_t, BluesteinTables> cache;
    const std::uint64_t key = (static_cast<std::uint64_t>(n) << 1) | (sign > 0 ? 1u : 0u);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    BluesteinTables t;
    t.m = next_pow2(2 * n - 1);
    t.chirp.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the angle argument small for large n
        const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % (2 * n);
        const double ang = sign * kPi * static_cast<double>(k2) / static_cast<double>(n);
        t.chirp[k] = cd(std::cos(ang), std::sin(ang));
    }
    std::vector<cd> b(t.m, cd(0.0, 0.0));
    b[0] = std::conj(t.chirp[0]);
    for (std::size_t k = 1; k < n; ++k) {
        b[k] = std::conj(t.chirp[k]);
        b[t.m - k] = std::conj(t.chirp[k]);
    }
    radix2(b, -1);
    t.bhat = std::move(b);
    return cache.emplace(key, std::move(t)).first->second;
}

void bluestein(std::span<cd> x, int sign) {
    const std::size_t n = x.size();
    const BluesteinTables& t = bluestein_tables(n, sign);
    std::vector<cd> a(t.m, cd(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * t.chirp[k];
    radix2(a, -1);
    for (std::size_t k = 0; k < t.m; ++k) a[k] *= t.bhat[k];
    radix2(a, +1);
    const double scale = 1.0 / static_cast<double>(t.m);
    for (std::size_t k = 0; k < n; ++k) x[k] = a[k] * scale * t.chirp[k];
}

} // namespace

void dft_inplace(std::span<cd> x, int sign) {
    const std::size_t n = x.size();
    if (n <= 1) return;
    if (is_pow2(n)) {
        radix2(x, sign);
    } else {
        bluestein(x, sign);
    }
}

void fft(std::span<cd> x) { dft_inplace(x, -1); }

void ifft(std::span<cd> x) {
    dft_inplace(x, +1);
    const double s = 1.0 / static_cast<double>(x.size());
    for (cd& v : x) v *= s;
}

void fftshift(std::span<cd> x) {
    const std::size_t n = x.size();
    std::rotate(x.begin(), x.begin() + (n + 1) / 2, x.end());
}

std::size_t fftshift_index(std::size_t k, std::size_t n) {
    return (k + n / 2) % n;
}

std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n < 2) return w;
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n)));
    return w;
}

void circular_shift(std::span<cd> x, double shift_bins) {
    const std::size_t n = x.size();
    if (n <= 1 || shift_bins == 0.0) return;
    std::vector<cd> spec(x.begin(), x.end());
    dft_inplace(spec, -1);
    for (std::size_t v = 0; v < n; ++v) {
        // signed frequency index, so fractional shifts of real envelopes stay near-real
        const double nu = (v <= n / 2) ? static_cast<double>(v)
                                       : static_cast<double>(v) - static_cast<double>(n);
        const double ang = -2.0 * kPi * nu * shift_bins / static_cast<double>(n);
        spec[v] *= cd(std::cos(ang), std::sin(ang));
    }
    dft_inplace(spec, +1);
    const double s = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = spec[k] * s;
}

} // namespace isar::dsp
