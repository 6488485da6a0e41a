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

#include "isar/cube_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace isar {

namespace {

constexpr char kMagic[8] = {'I', 'S', 'A', 'R', 'C', 'U', 'B', 'E'};

void put_bytes(std::string& out, std::uint64_t v, int nbytes) {
    for (int i = 0; i < nbytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint64_t get_bytes(const char* p, int nbytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < nbytes; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return v;
}

void fnv_mix(std::uint64_t& h, std::uint64_t v, int nbytes) {
    for (int i = 0; i < nbytes; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
}

} // namespace

std::uint64_t params_digest(const RadarParams& p) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix_f64 = [&](double d) { fnv_mix(h, std::bit_cast<std::uint64_t>(d), 8); };
    auto mix_u32 = [&](int v) { fnv_mix(h, static_cast<std::uint32_t>(v), 4); };
    mix_f64(p.carrier_freq_hz);
    mix_f64(p.bandwidth_hz);
    mix_f64(p.chirp_slope_hz_per_s);
    mix_f64(p.t_pri_s);
    mix_u32(p.num_tx);
    mix_u32(p.num_rx);
    mix_f64(p.d_tx_m);
    mix_f64(p.d_rx_m);
    mix_u32(p.num_slow);
    mix_u32(p.num_fast);
    mix_f64(p.sample_rate_sps);
    mix_f64(p.t_cpi_s);
    mix_f64(p.ref_range_m);
    return h;
}

void write_cube(const std::string& path, const RawCube& cube) {
    const std::size_t count = static_cast<std::size_t>(cube.num_tx) * cube.num_rx *
                              cube.num_slow * cube.num_fast;
    if (count != cube.data.size()) throw IoError("cube dimensions disagree with payload size");
    if (cube.frame_index < 0) throw IoError("cube frame_index must be non-negative");

    std::string header;
    header.reserve(kCubeHeaderBytes);
    header.append(kMagic, 8);
    put_bytes(header, kCubeFormatVersion, 2);
    put_bytes(header, static_cast<std::uint32_t>(cube.num_tx), 4);
    put_bytes(header, static_cast<std::uint32_t>(cube.num_rx), 4);
    put_bytes(header, static_cast<std::uint32_t>(cube.num_slow), 4);
    put_bytes(header, static_cast<std::uint32_t>(cube.num_fast), 4);
    put_bytes(header, static_cast<std::uint32_t>(cube.frame_index), 4);
    put_bytes(header, std::bit_cast<std::uint64_t>(cube.frame_start_s), 8);
    put_bytes(header, cube.params_digest, 8);

    std::string payload;
    payload.reserve(count * 8);
    for (const cd& v : cube.data) {
        put_bytes(payload, std::bit_cast<std::uint32_t>(static_cast<float>(v.real())), 4);
        put_bytes(payload, std::bit_cast<std::uint32_t>(static_cast<float>(v.imag())), 4);
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw IoError("short write to " + path);
}

RawCube read_cube(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open cube file: " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    if (bytes.size() < kCubeHeaderBytes) {
        std::ostringstream os;
        os << "truncated cube file " << path << ": expected at least " << kCubeHeaderBytes
           << " header bytes, got " << bytes.size();
        throw IoError(os.str());
    }
    if (std::memcmp(bytes.data(), kMagic, 8) != 0)
        throw IoError("bad magic in cube file " + path);
    const std::uint16_t version = static_cast<std::uint16_t>(get_bytes(bytes.data() + 8, 2));
    if (version != kCubeFormatVersion)
        throw IoError("unsupported cube format version " + std::to_string(version) + " in " + path);

    RawCube cube;
    cube.num_tx = static_cast<int>(get_bytes(bytes.data() + 10, 4));
    cube.num_rx = static_cast<int>(get_bytes(bytes.data() + 14, 4));
    cube.num_slow = static_cast<int>(get_bytes(bytes.data() + 18, 4));
    cube.num_fast = static_cast<int>(get_bytes(bytes.data() + 22, 4));
    cube.frame_index = static_cast<int>(get_bytes(bytes.data() + 26, 4));
    cube.frame_start_s = std::bit_cast<double>(get_bytes(bytes.data() + 30, 8));
    cube.params_digest = get_bytes(bytes.data() + 38, 8);

    if (cube.num_tx <= 0 || cube.num_rx <= 0 || cube.num_slow <= 0 || cube.num_fast <= 0)
        throw IoError("cube header has non-positive dimensions: " + path);
    const std::size_t count = static_cast<std::size_t>(cube.num_tx) * cube.num_rx *
                              cube.num_slow * cube.num_fast;
    if (count > (1ull << 28)) throw IoError("cube header dimensions overflow: " + path);

    const std::size_t expected = kCubeHeaderBytes + count * 8;
    if (bytes.size() != expected) {
        std::ostringstream os;
        os << "truncated cube file " << path << ": expected " << expected << " bytes, got "
           << bytes.size();
        throw IoError(os.str());
    }

    cube.data.resize(count);
    const char* p = bytes.data() + kCubeHeaderBytes;
    for (std::size_t i = 0; i < count; ++i, p += 8) {
        const float re = std::bit_cast<float>(static_cast<std::uint32_t>(get_bytes(p, 4)));
        const float im = std::bit_cast<float>(static_cast<std::uint32_t>(get_bytes(p + 4, 4)));
        cube.data[i] = cd(re, im);
    }
    return cube;
}

void attach_params(RawCube& cube, const RadarParams& params) {
    if (cube.num_tx != params.num_tx || cube.num_rx != params.num_rx ||
        cube.num_slow != params.num_slow || cube.num_fast != params.num_fast)
        throw IoError("cube dimensions disagree with the supplied radar parameters");
    const std::uint64_t digest = params_digest(params);
    if (cube.params_digest != 0 && cube.params_digest != digest)
        throw IoError("cube was written with different radar parameters (digest mismatch)");
    cube.params = params;
    cube.params_digest = digest;
}

std::string cube_format_description() {
    std::ostringstream os;
    os << "ISARCUBE binary layout (all little-endian):\n"
       << "  offset  size  field\n"
       << "  0       8     magic \"ISARCUBE\"\n"
       << "  8       2     format version u16 (currently " << kCubeFormatVersion << ")\n"
       << "  10      4     P  (num_tx)   u32\n"
       << "  14      4     Q  (num_rx)   u32\n"
       << "  18      4     L  (num_slow) u32\n"
       << "  22      4     N  (num_fast) u32\n"
       << "  26      4     frame_index   u32\n"
       << "  30      8     frame_start_s f64\n"
       << "  38      8     radar params digest u64 (FNV-1a)\n"
       << "  46      -     payload: P*Q*L*N complex samples as (real f32, imag f32),\n"
       << "                index order p-major, then q, then l, then n\n"
       << "  payload length = P*Q*L*N*8 bytes\n";
    return os.str();
}

} // namespace isar
