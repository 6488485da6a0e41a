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

#include "isar/params.hpp"

#include <cmath>
#include <sstream>

namespace isar {

RadarParams RadarParams::automotive_defaults() {
    RadarParams p;
    p.carrier_freq_hz = 77.0e9;
    p.bandwidth_hz = 2.0e9;
    p.sample_rate_sps = 9.668e6;
    // slope such that the unambiguous range f_s*c/(2K) lands at 34.4 m
    p.chirp_slope_hz_per_s = p.sample_rate_sps * kSpeedOfLight / (2.0 * 34.4);
    p.num_tx = 3;
    p.num_rx = 4;
    p.num_slow = 128;
    p.num_fast = 256;
    p.t_cpi_s = 0.1;
    // CPI tiles exactly into L chirp loops of P PRIs each
    p.t_pri_s = p.t_cpi_s / (p.num_slow * p.num_tx);
    const double lambda = kSpeedOfLight / p.carrier_freq_hz;
    p.d_rx_m = lambda / 2.0;
    p.d_tx_m = p.num_rx * p.d_rx_m;
    p.ref_range_m = 0.0;
    return p;
}

DerivedParams derive_params(const RadarParams& p) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw ConfigError(std::string("radar parameter must be strictly positive: ") + name);
    };
    positive(p.carrier_freq_hz, "carrier_freq_hz");
    positive(p.bandwidth_hz, "bandwidth_hz");
    positive(p.chirp_slope_hz_per_s, "chirp_slope_hz_per_s");
    positive(p.t_pri_s, "t_pri_s");
    positive(static_cast<double>(p.num_tx), "num_tx");
    positive(static_cast<double>(p.num_rx), "num_rx");
    positive(p.d_tx_m, "d_tx_m");
    positive(p.d_rx_m, "d_rx_m");
    positive(static_cast<double>(p.num_slow), "num_slow");
    positive(static_cast<double>(p.num_fast), "num_fast");
    positive(p.sample_rate_sps, "sample_rate_sps");
    positive(p.t_cpi_s, "t_cpi_s");
    if (p.ref_range_m < 0.0 || !std::isfinite(p.ref_range_m))
        throw ConfigError("radar parameter must be non-negative: ref_range_m");

    const double t_cli = p.num_tx * p.t_pri_s;
    if (t_cli > p.t_cpi_s / p.num_slow * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "chirp loop interval P*T_PRI = " << t_cli
           << " s does not fit " << p.num_slow << " times into T_CPI = " << p.t_cpi_s << " s";
        throw ConfigError(os.str());
    }

    const double ramp_s = p.bandwidth_hz / p.chirp_slope_hz_per_s;
    const double sampled_s = p.num_fast / p.sample_rate_sps;
    if (sampled_s > ramp_s * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "sampling window num_fast/sample_rate = " << sampled_s
           << " s exceeds active ramp duration bandwidth/slope = " << ramp_s << " s";
        throw ConfigError(os.str());
    }
    if (ramp_s > p.t_pri_s * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "active ramp duration " << ramp_s << " s exceeds t_pri_s = " << p.t_pri_s << " s";
        throw ConfigError(os.str());
    }

    DerivedParams d;
    d.wavelength_m = kSpeedOfLight / p.carrier_freq_hz;
    d.t_cli_s = t_cli;
    d.max_range_m = p.sample_rate_sps * kSpeedOfLight / (2.0 * p.chirp_slope_hz_per_s);
    d.range_bin_m = d.max_range_m / p.num_fast;
    d.doppler_res_hz = 1.0 / p.t_cpi_s;
    d.doppler_bin_hz = 1.0 / (p.num_slow * t_cli);
    d.max_velocity_mps = d.wavelength_m / (4.0 * t_cli);
    return d;
}

std::vector<std::string> validate_params(const RadarParams& p) {
    const DerivedParams d = derive_params(p); // structural problems are fatal
    std::vector<std::string> warnings;

    if (p.expected_max_velocity_mps) {
        const double expect = *p.expected_max_velocity_mps;
        const double got = d.max_velocity_mps;
        if (std::abs(expect - got) > 1e-6 * std::max(1.0, std::abs(expect))) {
            std::ostringstream os;
            os << "declared expected_max_velocity_mps = " << expect
               << " m/s disagrees with lambda/(4*P*T_PRI) = " << got
               << " m/s; derived value is kept";
            warnings.push_back(os.str());
        }
    }

    const double cpi_span = p.num_slow * d.t_cli_s;
    if (std::abs(cpi_span - p.t_cpi_s) > 1e-9 * p.t_cpi_s) {
        std::ostringstream os;
        os << "t_cpi_s = " << p.t_cpi_s << " s is not exactly L*P*T_PRI = " << cpi_span
           << " s; Doppler resolution 1/T_CPI and bin spacing 1/(L*T_CLI) will differ";
        warnings.push_back(os.str());
    }

    if (p.ref_range_m > d.max_range_m) {
        std::ostringstream os;
        os << "ref_range_m = " << p.ref_range_m << " m lies beyond the unambiguous range "
           << d.max_range_m << " m";
        warnings.push_back(os.str());
    }

    return warnings;
}

} // namespace isar
