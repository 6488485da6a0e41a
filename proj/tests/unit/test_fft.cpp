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

#include <random>

#include "isar/fft.hpp"
#include "oracles.hpp"

using namespace isar;

namespace {

std::vector<cd> random_signal(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::vector<cd> x(n);
    for (cd& v : x) v = cd(oracle::gaussian(eng), oracle::gaussian(eng));
    return x;
}

double max_abs_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_SUITE("fft") {

TEST_CASE("matches the naive DFT for assorted sizes and both signs") {
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 12u, 16u, 17u, 31u, 64u, 100u, 128u}) {
        for (int sign : {-1, +1}) {
            std::vector<cd> x = random_signal(n, 1000 + n * 2 + (sign > 0));
            std::vector<cd> want = oracle::naive_dft(x, sign);
            std::vector<cd> got = x;
            dsp::dft_inplace(got, sign);
            CAPTURE(n);
            CAPTURE(sign);
            CHECK(max_abs_diff(got, want) < 1e-9 * std::max(1.0, std::sqrt(double(n))));
        }
    }
}

TEST_CASE("ifft undoes fft") {
    for (std::size_t n : {8u, 12u, 128u, 100u}) {
        std::vector<cd> x = random_signal(n, 7 + n);
        std::vector<cd> y = x;
        dsp::fft(y);
        dsp::ifft(y);
        CHECK(max_abs_diff(x, y) < 1e-12);
    }
}

TEST_CASE("parseval holds for the unnormalized transform") {
    const std::vector<cd> x = random_signal(128, 42);
    std::vector<cd> y = x;
    dsp::fft(y);
    double px = 0.0, py = 0.0;
    for (const cd& v : x) px += std::norm(v);
    for (const cd& v : y) py += std::norm(v);
    CHECK(py == doctest::Approx(128.0 * px).epsilon(1e-12));
}

TEST_CASE("fftshift maps bin 0 to the center") {
    CHECK(dsp::fftshift_index(0, 8) == 4);
    CHECK(dsp::fftshift_index(7, 8) == 3);
    CHECK(dsp::fftshift_index(0, 7) == 3);
    std::vector<cd> x(8, cd(0, 0));
    x[0] = cd(1, 0);
    dsp::fftshift(x);
    CHECK(x[4] == cd(1, 0));
}

TEST_CASE("circular_shift by an integer equals rotation") {
    std::vector<cd> x = random_signal(16, 5);
    std::vector<cd> y = x;
    dsp::circular_shift(y, 3.0);
    for (std::size_t k = 0; k < x.size(); ++k)
        CHECK(std::abs(y[k] - x[(k + 16 - 3) % 16]) < 1e-12);
}

TEST_CASE("circular_shift is unitary and invertible for fractional shifts") {
    std::vector<cd> x = random_signal(64, 9);
    double p0 = 0.0;
    for (const cd& v : x) p0 += std::norm(v);
    std::vector<cd> y = x;
    dsp::circular_shift(y, 0.37);
    double p1 = 0.0;
    for (const cd& v : y) p1 += std::norm(v);
    CHECK(p1 == doctest::Approx(p0).epsilon(1e-12));
    dsp::circular_shift(y, -0.37);
    CHECK(max_abs_diff(x, y) < 1e-10);
}

} // TEST_SUITE
