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

#include "isar/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace isar {

double entropy_of_powers(std::span<const double> powers) {
    double sum = 0.0;
    for (double w : powers) {
        if (w < 0.0 || !std::isfinite(w)) throw NumericError("entropy needs finite non-negative pixels");
        sum += w;
    }
    if (sum <= 0.0) throw NumericError("entropy of an all-zero image is undefined");
    double acc = 0.0;
    for (double w : powers)
        if (w > 0.0) acc += w * std::log(w);
    return std::log(sum) - acc / sum;
}

double image_entropy(const RDImage& img) { return entropy_of_powers(img.pixels); }

NoiseFloorStats noise_floor_stats(const FrameStack& blank_frames) {
    blank_frames.validate();
    NoiseFloorStats st;
    double sum = 0.0;
    std::size_t n = 0;
    for (const RDImage& f : blank_frames.frames) {
        for (double v : f.pixels) sum += v;
        n += f.pixels.size();
    }
    if (n == 0) throw NumericError("noise floor needs at least one blank frame");
    st.pixel_count = n;
    st.mean = sum / static_cast<double>(n);
    double acc = 0.0;
    for (const RDImage& f : blank_frames.frames)
        for (double v : f.pixels) acc += (v - st.mean) * (v - st.mean);
    st.variance = acc / static_cast<double>(n);
    if (st.variance <= 0.0) {
        st.degenerate = true;
        st.cov_mean_var = std::numeric_limits<double>::infinity();
        st.cov_std_mean = 0.0;
    } else {
        st.cov_mean_var = st.mean / st.variance;
        st.cov_std_mean = std::sqrt(st.variance) / st.mean;
    }
    return st;
}

double noise_floor_cov(const FrameStack& blank_frames, CovDefinition def) {
    const NoiseFloorStats st = noise_floor_stats(blank_frames);
    return def == CovDefinition::mean_over_variance ? st.cov_mean_var : st.cov_std_mean;
}

double scnr_db(const RDImage& img, const std::vector<std::uint8_t>& mask,
               const FrameStack& blank_frames) {
    if (mask.size() != img.pixels.size()) throw NumericError("mask size does not match image");
    double msum = 0.0;
    std::size_t mcount = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) {
            msum += img.pixels[i];
            ++mcount;
        }
    }
    if (mcount == 0) throw NumericError("scnr mask is empty");
    const NoiseFloorStats st = noise_floor_stats(blank_frames);
    if (st.mean <= 0.0) throw NumericError("blank-frame mean power is zero");
    return 10.0 * std::log10(msum / static_cast<double>(mcount) / st.mean);
}

std::vector<std::uint8_t> peak_relative_mask(const RDImage& img, double within_db) {
    double peak = 0.0;
    for (double v : img.pixels) peak = std::max(peak, v);
    std::vector<std::uint8_t> mask(img.pixels.size(), 0);
    if (peak <= 0.0) return mask;
    const double thr = peak * std::pow(10.0, -within_db / 10.0);
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = img.pixels[i] >= thr ? 1 : 0;
    return mask;
}

const char* algo_name(MocompAlgo a) {
    switch (a) {
        case MocompAlgo::none: return "none";
        case MocompAlgo::em: return "em";
        case MocompAlgo::pga: return "pga";
        case MocompAlgo::ccr: return "ccr";
    }
    return "?";
}

MocompAlgo algo_from_name(const std::string& s) {
    for (MocompAlgo a : kAllAlgos)
        if (s == algo_name(a)) return a;
    throw ConfigError("unknown mocomp algorithm: " + s + " (expected none|em|pga|ccr)");
}

MetricsReport comparison_table_partial(const std::array<std::array<ConfigCell, 4>, 2>& cells,
                                       const std::array<std::array<bool, 4>, 2>& present,
                                       std::vector<int> frame_indices) {
    MetricsReport rep;
    rep.frame_indices = std::move(frame_indices);
    rep.present = present;
    for (int c = 0; c < 2; ++c) {
        if (!present[c][0])
            throw NumericError("comparison table: the 'none' baseline configuration is missing");
        for (int a = 0; a < 4; ++a) {
            if (!present[c][a]) continue;
            const ConfigCell& in = cells[c][a];
            if (in.blanks.frames.empty())
                throw NumericError(std::string("comparison table: missing configuration ") +
                                   (c == 0 ? "SISO/" : "MIMO/") + algo_name(kAllAlgos[a]));
            const NoiseFloorStats st = noise_floor_stats(in.blanks);
            CellMetrics& out = rep.cells[c][a];
            // Common normalization: pooled blank mean scaled to 1 before the
            // mean/variance ratio (which is scale dependent, 1/alpha).
            out.cov_mean_var = st.degenerate ? st.cov_mean_var : st.mean * st.mean / st.variance;
            out.cov_std_mean = st.cov_std_mean;
            out.degenerate = st.degenerate;
            out.entropy_per_frame = in.entropy_per_frame;
            out.scnr_db_per_frame = in.scnr_db_per_frame;
        }
        for (int a = 0; a < 4; ++a) {
            if (!present[c][a]) continue;
            CellMetrics& out = rep.cells[c][a];
            const CellMetrics& none = rep.cells[c][0];
            out.improvement_mean_var_pct =
                a == 0 ? 0.0
                       : 100.0 * (none.cov_mean_var - out.cov_mean_var) / none.cov_mean_var;
            out.improvement_std_mean_pct =
                a == 0 ? 0.0
                       : 100.0 * (none.cov_std_mean - out.cov_std_mean) /
                             none.cov_std_mean;
        }
    }
    return rep;
}

MetricsReport comparison_table(const std::array<std::array<ConfigCell, 4>, 2>& cells,
                               std::vector<int> frame_indices) {
    const std::array<std::array<bool, 4>, 2> all{{{true, true, true, true},
                                                  {true, true, true, true}}};
    for (int c = 0; c < 2; ++c)
        for (int a = 0; a < 4; ++a)
            if (cells[c][a].blanks.frames.empty())
                throw NumericError(std::string("comparison table: missing configuration ") +
                                   (c == 0 ? "SISO/" : "MIMO/") + algo_name(kAllAlgos[a]));
    return comparison_table_partial(cells, all, std::move(frame_indices));
}

std::string MetricsReport::render_text() const {
    std::ostringstream os;
    os << "Noise-floor coefficient of variation (blank frames)\n";
    os << std::left << std::setw(12) << "case" << std::right
       << std::setw(12) << "SISO" << std::setw(12) << "MIMO"
       << std::setw(14) << "SISO impr%" << std::setw(14) << "MIMO impr%" << "\n";
    auto row = [&](const char* label, auto value, auto impr) {
        os << std::left << std::setw(12) << label << std::right << std::fixed
           << std::setprecision(4);
        for (int c = 0; c < 2; ++c) os << std::setw(12) << value(c);
        os << std::setprecision(2);
        for (int c = 0; c < 2; ++c) os << std::setw(14) << impr(c);
        os << "\n";
    };
    os << "-- std/mean definition (conventional CoV) --\n";
    for (int a = 0; a < 4; ++a) {
        if (!present[0][a] && !present[1][a]) continue;
        row(algo_name(kAllAlgos[a]),
            [&](int c) { return cells[c][a].cov_std_mean; },
            [&](int c) { return cells[c][a].improvement_std_mean_pct; });
    }
    os << "-- mean/variance definition (blank mean normalized to 1) --\n";
    for (int a = 0; a < 4; ++a) {
        if (!present[0][a] && !present[1][a]) continue;
        row(algo_name(kAllAlgos[a]),
            [&](int c) { return cells[c][a].cov_mean_var; },
            [&](int c) { return cells[c][a].improvement_mean_var_pct; });
    }
    os << "note: improvement percentages are computed from unrounded CoV values;\n"
          "      displayed CoV columns are rounded for printing.\n";
    if (degenerate_no_target)
        os << "note: scenario contains no target; per-frame entropy/SCNR omitted.\n";
    if (!degenerate_no_target && !frame_indices.empty()) {
        os << "\nPer-frame image entropy / SCNR (dB), MIMO column\n";
        os << std::left << std::setw(8) << "frame";
        for (int a = 0; a < 4; ++a) {
            if (!present[1][a]) continue;
            os << std::right << std::setw(10) << algo_name(kAllAlgos[a]) << std::setw(10) << "scnr";
        }
        os << "\n";
        for (std::size_t f = 0; f < frame_indices.size(); ++f) {
            os << std::left << std::setw(8) << frame_indices[f] << std::right << std::fixed
               << std::setprecision(3);
            for (int a = 0; a < 4; ++a) {
                if (!present[1][a]) continue;
                const CellMetrics& m = cells[1][a];
                os << std::setw(10) << (f < m.entropy_per_frame.size() ? m.entropy_per_frame[f] : 0.0)
                   << std::setw(10) << (f < m.scnr_db_per_frame.size() ? m.scnr_db_per_frame[f] : 0.0);
            }
            os << "\n";
        }
    }
    return os.str();
}

std::string MetricsReport::render_csv() const {
    std::ostringstream os;
    os << "config,algorithm,cov_mean_var,cov_std_mean,improvement_mean_var_pct,"
          "improvement_std_mean_pct,degenerate\n";
    os << std::setprecision(17);
    for (int c = 0; c < 2; ++c) {
        for (int a = 0; a < 4; ++a) {
            if (!present[c][a]) continue;
            const CellMetrics& m = cells[c][a];
            os << (c == 0 ? "siso" : "mimo") << ',' << algo_name(kAllAlgos[a]) << ','
               << m.cov_mean_var << ',' << m.cov_std_mean << ',' << m.improvement_mean_var_pct
               << ',' << m.improvement_std_mean_pct << ',' << (m.degenerate ? 1 : 0) << "\n";
        }
    }
    if (!degenerate_no_target && !frame_indices.empty()) {
        os << "config,algorithm,frame,entropy,scnr_db\n";
        for (int c = 0; c < 2; ++c)
            for (int a = 0; a < 4; ++a) {
                if (!present[c][a]) continue;
                const CellMetrics& m = cells[c][a];
                for (std::size_t f = 0; f < frame_indices.size(); ++f) {
                    os << (c == 0 ? "siso" : "mimo") << ',' << algo_name(kAllAlgos[a]) << ','
                       << frame_indices[f] << ','
                       << (f < m.entropy_per_frame.size() ? m.entropy_per_frame[f] : 0.0) << ','
                       << (f < m.scnr_db_per_frame.size() ? m.scnr_db_per_frame[f] : 0.0) << "\n";
                }
            }
    }
    return os.str();
}

} // namespace isar
