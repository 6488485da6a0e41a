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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace isar {

using cd = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0; // m/s, fixed
inline constexpr double kPi = std::numbers::pi;

/// Dense row-major complex matrix. Throughout the toolkit the convention for
/// per-channel data is rows = range (or fast-time) bins, cols = slow-time chirps.
struct ComplexMat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cd> d;

    ComplexMat() = default;
    ComplexMat(std::size_t r, std::size_t c) : rows(r), cols(c), d(r * c) {}

    cd& at(std::size_t r, std::size_t c) { return d[r * cols + c]; }
    const cd& at(std::size_t r, std::size_t c) const { return d[r * cols + c]; }
    std::size_t size() const { return d.size(); }

    bool same_shape(const ComplexMat& o) const { return rows == o.rows && cols == o.cols; }
};

/// Sum of |x|^2 over all entries.
double total_power(const ComplexMat& m);

// Error taxonomy shared by the CLI (exit codes 2/3/4).
struct ConfigError : std::runtime_error {
    int line = 0;
    ConfigError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + msg : msg),
          line(line_no) {}
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// splitmix64 step; used to derive independent per-(frame, channel) RNG streams
/// so that synthesis results do not depend on worker scheduling.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0, std::uint64_t d = 0);

} // namespace isar
