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

#include "isar/config.hpp"
#include "isar/metrics.hpp"

namespace isar {

struct RunOverrides {
    int threads = -1; // -1 = take pipeline.threads from the config
    std::optional<std::uint64_t> seed;
    std::optional<std::string> algo; // none|em|pga|ccr|all
    std::optional<std::vector<int>> frames;
    std::optional<std::string> out_dir;
    bool write_artifacts = true; // metrics-only callers can skip files entirely
};

struct PipelineResult {
    MetricsReport report;
    bool full_table = false; // all four algorithms were evaluated
    int channels_per_frame = 0;
    std::vector<std::string> log;
    std::vector<std::string> artifacts; // paths written (relative to the output dir)
};

/// Full chain: simulate -> per-channel MOCOMP -> per-channel range-Doppler ->
/// NCI -> metrics, for the configured target and blank frames. Writes images,
/// optional cubes, the normalized config, the report and the log under the
/// output directory. Deterministic from the config seed regardless of the
/// worker count. Errors carry their pipeline stage as a message prefix.
PipelineResult run_pipeline(const ScenarioConfig& cfg, const RunOverrides& ovr = {});

} // namespace isar
