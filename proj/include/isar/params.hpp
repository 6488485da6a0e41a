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

#include <optional>
#include <string>
#include <vector>

#include "isar/types.hpp"

namespace isar {

/// Configured waveform and array constants of a TDM-MIMO FMCW radar.
///
/// One chirp of slope `chirp_slope_hz_per_s` is transmitted per PRI; the P
/// transmitters fire sequentially, so one chirp loop spans P * t_pri_s. A
/// coherent processing interval holds `num_slow` chirp loops, and each chirp
/// is sampled `num_fast` times at `sample_rate_sps` after dechirp against a
/// reference at `ref_range_m`.
struct RadarParams {
    double carrier_freq_hz = 0.0;     // f_c
    double bandwidth_hz = 0.0;        // swept RF bandwidth
    double chirp_slope_hz_per_s = 0.0; // chirp factor K
    double t_pri_s = 0.0;             // pulse repetition interval
    int num_tx = 0;                   // P
    int num_rx = 0;                   // Q
    double d_tx_m = 0.0;              // TX element spacing
    double d_rx_m = 0.0;              // RX element spacing
    int num_slow = 0;                 // L chirp loops per CPI
    int num_fast = 0;                 // N samples per chirp
    double sample_rate_sps = 0.0;     // ADC rate
    double t_cpi_s = 0.0;             // coherent processing interval
    double ref_range_m = 0.0;         // dechirp reference range

    /// Declared expectation used only for consistency warnings; never trusted.
    std::optional<double> expected_max_velocity_mps;

    /// 77 GHz automotive MIMO defaults: 3x4 channels, 2 GHz sweep, 128 chirp
    /// loops of 256 samples per 0.1 s CPI, slope chosen for a 34.4 m
    /// unambiguous range at 9.668 Msps.
    static RadarParams automotive_defaults();

    int num_channels() const { return num_tx * num_rx; }
};

/// Quantities derived from RadarParams by the standard FMCW relations.
struct DerivedParams {
    double wavelength_m = 0.0;     // c / f_c
    double t_cli_s = 0.0;          // P * t_pri
    double range_bin_m = 0.0;      // max_range / N
    double max_range_m = 0.0;      // f_s * c / (2K)
    double max_velocity_mps = 0.0; // lambda / (4 * t_cli)
    double doppler_res_hz = 0.0;   // 1 / t_cpi
    double doppler_bin_hz = 0.0;   // 1 / (L * t_cli)
};

/// Computes all derived quantities. Throws ConfigError if the configured set
/// is structurally invalid (non-positive values, sampling window longer than
/// the active ramp, CPI shorter than its chirp loops).
DerivedParams derive_params(const RadarParams& p);

/// Returns human-readable consistency warnings (possibly empty). Structural
/// violations surface as the same ConfigError derive_params throws; soft
/// mismatches, such as a declared expected maximum velocity that disagrees
/// with lambda/(4*T_CLI), only warn.
std::vector<std::string> validate_params(const RadarParams& p);

} // namespace isar
