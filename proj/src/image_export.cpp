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

#include "isar/image_export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace isar {

namespace {

double image_peak(const RDImage& img) {
    double peak = 0.0;
    for (double v : img.pixels) {
        if (!std::isfinite(v)) throw NumericError("image export requires finite pixels");
        peak = std::max(peak, v);
    }
    return peak;
}

std::string channel_tag(const RDImage& img) {
    if (img.integrated) return "integrated";
    return "tx" + std::to_string(img.channel_tx) + "_rx" + std::to_string(img.channel_rx);
}

} // namespace

void export_image_pgm(const std::string& path, const RDImage& img, double db_floor_db) {
    if (db_floor_db >= 0.0) throw ConfigError("db_floor_db must be negative");
    const double peak = image_peak(img);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "P5\n" << img.num_doppler << " " << img.num_range << "\n65535\n";

    const double span = -db_floor_db;
    for (std::size_t k = 0; k < img.num_range; ++k) {
        for (std::size_t d = 0; d < img.num_doppler; ++d) {
            double level = 0.0;
            const double v = img.at(k, d);
            if (peak > 0.0 && v > 0.0) {
                const double rel_db = 10.0 * std::log10(v / peak); // <= 0
                level = std::clamp((rel_db - db_floor_db) / span, 0.0, 1.0);
            }
            const unsigned u = static_cast<unsigned>(std::lround(level * 65535.0));
            // 16-bit PGM samples are most-significant byte first
            out.put(static_cast<char>((u >> 8) & 0xff));
            out.put(static_cast<char>(u & 0xff));
        }
    }
    if (!out) throw IoError("short write to " + path);
    write_image_sidecar(path + ".meta.txt", img, db_floor_db);
}

void export_image_csv(const std::string& path, const RDImage& img, double db_floor_db) {
    if (db_floor_db >= 0.0) throw ConfigError("db_floor_db must be negative");
    const double peak = image_peak(img);
    const double floor_db = peak > 0.0 ? 10.0 * std::log10(peak) + db_floor_db : db_floor_db;

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    char buf[64];
    for (std::size_t k = 0; k < img.num_range; ++k) {
        for (std::size_t d = 0; d < img.num_doppler; ++d) {
            const double v = img.at(k, d);
            const double db = v > 0.0 ? std::max(10.0 * std::log10(v), floor_db) : floor_db;
            const int n = std::snprintf(buf, sizeof(buf), "%.4f", db);
            if (d) out.put(',');
            out.write(buf, n);
        }
        out.put('\n');
    }
    if (!out) throw IoError("short write to " + path);
    write_image_sidecar(path + ".meta.txt", img, db_floor_db);
}

void write_image_sidecar(const std::string& path, const RDImage& img, double db_floor_db) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    const double peak = image_peak(img);
    out << "channel = " << channel_tag(img) << "\n"
        << "frame_index = " << img.frame_index << "\n"
        << "num_range_bins = " << img.num_range << "\n"
        << "num_doppler_bins = " << img.num_doppler << "\n"
        << "range_bin_m = " << img.range_bin_m << "\n"
        << "doppler_bin_hz = " << img.doppler_bin_hz << "\n"
        << "doppler_axis = index 1.." << img.num_doppler << ", zero Doppler at index "
        << img.num_doppler / 2 + 1 << "\n"
        << "range_axis = bin k spans [k*range_bin_m, (k+1)*range_bin_m)\n"
        << "pixel_domain = linear power inside the toolkit; exported as dB\n"
        << "db_floor_db = " << db_floor_db << "\n"
        << "peak_linear_power = " << std::scientific << peak << "\n";
    if (!out) throw IoError("short write to " + path);
}

std::vector<std::vector<double>> import_image_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image csv: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t i = 0;
        while (i <= line.size()) {
            std::size_t j = line.find(',', i);
            if (j == std::string::npos) j = line.size();
            double v = 0.0;
            auto [p, ec] = std::from_chars(line.data() + i, line.data() + j, v);
            if (ec != std::errc() || p != line.data() + j)
                throw IoError("malformed image csv value in " + path);
            row.push_back(v);
            if (j == line.size()) break;
            i = j + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace isar
