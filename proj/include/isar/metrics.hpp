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

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "isar/imaging.hpp"

namespace isar {

/// Shannon entropy -sum(p*ln p) of the normalized pixel distribution.
/// 0 for a single hot pixel, ln(M) for a uniform image of M pixels.
double entropy_of_powers(std::span<const double> powers); // throws on all-zero
double image_entropy(const RDImage& img);

/// The noise-floor dispersion ratio comes in two flavors, always carried side
/// by side in reports:
///  - mean_over_variance: mean / variance of the pooled blank-frame pixels,
///    the default reported ratio (+inf and flagged degenerate at zero variance);
///  - std_over_mean: std / mean, the textbook coefficient of variation.
enum class CovDefinition { mean_over_variance, std_over_mean };

struct NoiseFloorStats {
    double mean = 0.0;
    double variance = 0.0; // population variance of the pooled pixels
    double cov_mean_var = 0.0;
    double cov_std_mean = 0.0;
    bool degenerate = false; // zero variance (mean/variance ratio undefined)
    std::size_t pixel_count = 0;
};

NoiseFloorStats noise_floor_stats(const FrameStack& blank_frames);
double noise_floor_cov(const FrameStack& blank_frames,
                       CovDefinition def = CovDefinition::mean_over_variance);

/// 10*log10(mean masked pixel power / mean blank-frame pixel power).
double scnr_db(const RDImage& img, const std::vector<std::uint8_t>& mask,
               const FrameStack& blank_frames);

/// Mask of pixels within `within_db` of the image peak (the target region
/// used by the pipeline's per-frame SCNR).
std::vector<std::uint8_t> peak_relative_mask(const RDImage& img, double within_db);

enum class MocompAlgo { none = 0, em = 1, pga = 2, ccr = 3 };
inline constexpr std::array<MocompAlgo, 4> kAllAlgos{MocompAlgo::none, MocompAlgo::em,
                                                     MocompAlgo::pga, MocompAlgo::ccr};
const char* algo_name(MocompAlgo a);
MocompAlgo algo_from_name(const std::string& s); // throws ConfigError

/// Raw pipeline outputs of one (channel configuration, algorithm) pair.
struct ConfigCell {
    FrameStack blanks;                      // processed blank frames
    std::vector<double> entropy_per_frame;  // target frames, pipeline order
    std::vector<double> scnr_db_per_frame;
};

struct CellMetrics {
    double cov_mean_var = 0.0; // mean/variance after normalizing the pooled blank
                               // mean to 1 (same rule for every cell), i.e. mean^2/variance
    double cov_std_mean = 0.0;
    bool degenerate = false;
    double improvement_mean_var_pct = 0.0; // vs the "none" cell of the same column
    double improvement_std_mean_pct = 0.0;
    std::vector<double> entropy_per_frame;
    std::vector<double> scnr_db_per_frame;
};

/// Comparison summary over {SISO, MIMO} x {none, EM, PGA, CCR}.
struct MetricsReport {
    std::vector<int> frame_indices;
    bool degenerate_no_target = false; // scenario had no target frames worth scoring
    std::array<std::array<CellMetrics, 4>, 2> cells; // [0]=SISO, [1]=MIMO; algo order of kAllAlgos
    std::array<std::array<bool, 4>, 2> present{{{true, true, true, true},
                                               {true, true, true, true}}};

    std::string render_text() const;
    std::string render_csv() const;
};

/// Builds the report; improvement percentages are computed from the unrounded
/// CoV values (rendering rounds for display and footnotes that fact).
/// Throws when any of the eight configurations is missing.
MetricsReport comparison_table(const std::array<std::array<ConfigCell, 4>, 2>& cells,
                               std::vector<int> frame_indices);

/// Same computation for a subset of algorithms (single-algorithm pipeline
/// runs). The "none" baseline must be among the present cells.
MetricsReport comparison_table_partial(const std::array<std::array<ConfigCell, 4>, 2>& cells,
                                       const std::array<std::array<bool, 4>, 2>& present,
                                       std::vector<int> frame_indices);

} // namespace isar
