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

#include <string>

#include "isar/synth.hpp"

namespace isar {

// Cube container, little-endian regardless of host:
//   magic "ISARCUBE" (8 bytes)
//   version u16 (currently 1)
//   P, Q, L, N u32
//   frame_index u32
//   frame_start_s f64
//   params digest u64 (FNV-1a over the radar parameter fields)
//   payload: P*Q*L*N interleaved (real f32, imag f32) pairs, index order
//   p-major, then q, then l, then n. Payload length = P*Q*L*N*8 bytes.

inline constexpr std::uint16_t kCubeFormatVersion = 1;
inline constexpr std::size_t kCubeHeaderBytes = 46;

/// FNV-1a over the little-endian encoding of the radar parameter fields
/// (the advisory expected_max_velocity is excluded).
std::uint64_t params_digest(const RadarParams& p);

/// Writes `cube` (payload quantized to f32). Throws IoError.
void write_cube(const std::string& path, const RawCube& cube);

/// Reads a cube. The stored digest lands in cube.params_digest; the in-memory
/// params block stays default — attach it via attach_params. Throws IoError on
/// bad magic/version/dimension/truncation (with expected vs actual sizes).
RawCube read_cube(const std::string& path);

/// Installs params on a cube read from disk after digest verification.
void attach_params(RawCube& cube, const RadarParams& params); // throws IoError on mismatch

/// Human-readable description of the binary layout (the `formats` subcommand).
std::string cube_format_description();

} // namespace isar
