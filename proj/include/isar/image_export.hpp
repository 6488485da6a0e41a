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
#include <vector>

#include "isar/imaging.hpp"

namespace isar {

// Pixels stay linear power inside the toolkit; dB (10*log10, windowed to
// [peak + db_floor, peak]) happens only here at export time.

/// 16-bit binary PGM (P5). Pixel value 65535 = frame peak, 0 = db_floor below
/// the peak (or darker). Rows are range bins, columns Doppler bins 1..L.
void export_image_pgm(const std::string& path, const RDImage& img, double db_floor_db = -120.0);

/// CSV, one row per range bin, dB values with 4 decimals, clamped at
/// peak + db_floor. Doppler columns run 1..L left to right.
void export_image_csv(const std::string& path, const RDImage& img, double db_floor_db = -120.0);

/// Axes metadata sidecar (plain text) describing an exported image.
void write_image_sidecar(const std::string& path, const RDImage& img, double db_floor_db);

/// Parses a CSV written by export_image_csv back into dB values.
std::vector<std::vector<double>> import_image_csv(const std::string& path);

} // namespace isar
