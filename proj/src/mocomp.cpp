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

#include "isar/mocomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isar/fft.hpp"
#include "isar/metrics.hpp"

namespace isar {

namespace {

constexpr double kDominantRatio = 3.9810717055349722; // 6 dB

void require_nonzero(const ComplexMat& profiles) {
    if (profiles.rows == 0 || profiles.cols == 0)
        throw NumericError("mocomp input is empty");
    if (total_power(profiles) <= 0.0)
        throw NumericError("mocomp input is all zero");
}

std::vector<double> bin_mean_power(const ComplexMat& profiles) {
    std::vector<double> p(profiles.rows, 0.0);
    for (std::size_t k = 0; k < profiles.rows; ++k) {
        double s = 0.0;
        for (std::size_t l = 0; l < profiles.cols; ++l) s += std::norm(profiles.at(k, l));
        p[k] = s / static_cast<double>(profiles.cols);
    }
    return p;
}

void get_column(const ComplexMat& m, std::size_t l, std::vector<cd>& out) {
    out.resize(m.rows);
    for (std::size_t k = 0; k < m.rows; ++k) out[k] = m.at(k, l);
}

void put_column(ComplexMat& m, std::size_t l, const std::vector<cd>& in) {
    for (std::size_t k = 0; k < m.rows; ++k) m.at(k, l) = in[k];
}

void shift_column(ComplexMat& m, std::size_t l, double shift_bins, std::vector<cd>& scratch) {
    if (shift_bins == 0.0) return;
    get_column(m, l, scratch);
    dsp::circular_shift(scratch, shift_bins);
    put_column(m, l, scratch);
}

// Doppler power image of the profiles into `out` (no shift; entropy does not care).
void rd_power_into(const ComplexMat& profiles, std::vector<cd>& buf, std::vector<double>& out) {
    const std::size_t N = profiles.rows, L = profiles.cols;
    out.resize(N * L);
    buf.resize(L);
    for (std::size_t k = 0; k < N; ++k) {
        std::copy(profiles.d.begin() + k * L, profiles.d.begin() + (k + 1) * L, buf.begin());
        dsp::dft_inplace(buf, -1);
        for (std::size_t l = 0; l < L; ++l) out[k * L + l] = std::norm(buf[l]);
    }
}

double entropy_of(const ComplexMat& profiles, std::vector<cd>& buf, std::vector<double>& pow_buf) {
    rd_power_into(profiles, buf, pow_buf);
    return entropy_of_powers(pow_buf);
}

// Circular cross-correlation corr[s] = sum_k m[k]*ref[(k-s) mod K] via FFT;
// its argmax locates the displacement of m relative to ref.
void circular_correlation(const std::vector<double>& m, const std::vector<double>& ref,
                          std::vector<double>& corr, std::vector<cd>& a, std::vector<cd>& b) {
    const std::size_t K = m.size();
    a.assign(K, cd());
    b.assign(K, cd());
    for (std::size_t k = 0; k < K; ++k) {
        a[k] = cd(m[k], 0.0);
        b[k] = cd(ref[k], 0.0);
    }
    dsp::dft_inplace(a, -1);
    dsp::dft_inplace(b, -1);
    for (std::size_t k = 0; k < K; ++k) a[k] *= std::conj(b[k]);
    dsp::dft_inplace(a, +1);
    corr.resize(K);
    const double inv = 1.0 / static_cast<double>(K);
    for (std::size_t k = 0; k < K; ++k) corr[k] = a[k].real() * inv;
}

// Argmax with 3-point parabolic refinement on a circular sequence, mapped to
// a signed displacement in [-K/2, K/2).
double correlation_peak(const std::vector<double>& corr) {
    const std::size_t K = corr.size();
    std::size_t s = 0;
    for (std::size_t k = 1; k < K; ++k)
        if (corr[k] > corr[s]) s = k;
    const double cm = corr[(s + K - 1) % K];
    const double c0 = corr[s];
    const double cp = corr[(s + 1) % K];
    const double den = cm - 2.0 * c0 + cp;
    double delta = 0.0;
    if (std::abs(den) > 1e-300) delta = 0.5 * (cm - cp) / den;
    delta = std::clamp(delta, -0.5, 0.5);
    double signed_s = static_cast<double>(s);
    if (signed_s > static_cast<double>(K) / 2.0) signed_s -= static_cast<double>(K);
    return signed_s + delta;
}

std::vector<double> column_envelope(const ComplexMat& m, std::size_t l) {
    std::vector<double> e(m.rows);
    for (std::size_t k = 0; k < m.rows; ++k) e[k] = std::abs(m.at(k, l));
    return e;
}

// Least-squares straight line subtracted in place; returns nothing of note.
void remove_linear_trend(std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n < 2) {
        for (double& x : v) x = 0.0;
        return;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(i);
        sx += x;
        sy += v[i];
        sxx += x * x;
        sxy += x * v[i];
    }
    const double nn = static_cast<double>(n);
    const double den = nn * sxx - sx * sx;
    const double slope = (nn * sxy - sx * sy) / den;
    const double intercept = (sy * sxx - sx * sxy) / den;
    for (std::size_t i = 0; i < n; ++i) v[i] -= intercept + slope * static_cast<double>(i);
}

double rms(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s / static_cast<double>(v.size()));
}

MocompResult passthrough(const ComplexMat& profiles, const char* algorithm, const char* why) {
    MocompResult r;
    r.data = profiles;
    r.algorithm = algorithm;
    r.no_target = true;
    r.warnings.push_back(why);
    return r;
}

} // namespace

bool has_dominant_scatterer(const ComplexMat& profiles) {
    std::vector<double> p = bin_mean_power(profiles);
    std::vector<double> sorted = p;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double peak = *std::max_element(p.begin(), p.end());
    return peak > median * kDominantRatio;
}

double profiles_entropy(const ComplexMat& profiles) {
    std::vector<cd> buf;
    std::vector<double> pw;
    return entropy_of(profiles, buf, pw);
}

MocompResult coarse_mocomp(const ComplexMat& profiles, const CoarseOptions& opts) {
    require_nonzero(profiles);
    if (!opts.force && !has_dominant_scatterer(profiles))
        return passthrough(profiles, "coarse", "no dominant scatterer; frame passed through");

    MocompResult r;
    r.algorithm = "coarse";
    r.data = profiles;
    const std::size_t N = profiles.rows, L = profiles.cols;

    std::vector<cd> scratch;
    std::vector<cd> col;

    // align every column's peak bin onto the first column's
    std::size_t ref_bin = 0;
    {
        double best = -1.0;
        for (std::size_t k = 0; k < N; ++k) {
            const double v = std::norm(r.data.at(k, 0));
            if (v > best) {
                best = v;
                ref_bin = k;
            }
        }
    }
    r.shifts.assign(L, 0.0);
    for (std::size_t l = 0; l < L; ++l) {
        std::size_t peak = 0;
        double best = -1.0;
        for (std::size_t k = 0; k < N; ++k) {
            const double v = std::norm(r.data.at(k, l));
            if (v > best) {
                best = v;
                peak = k;
            }
        }
        double s = static_cast<double>(ref_bin) - static_cast<double>(peak);
        // take the short way around the circle
        if (s > static_cast<double>(N) / 2.0) s -= static_cast<double>(N);
        if (s < -static_cast<double>(N) / 2.0) s += static_cast<double>(N);
        r.shifts[l] = s;
        shift_column(r.data, l, s, scratch);
    }

    // flatten the dominant scatterer's phase across slow time
    std::vector<double> mean_p = bin_mean_power(r.data);
    const std::size_t dom =
        static_cast<std::size_t>(std::max_element(mean_p.begin(), mean_p.end()) - mean_p.begin());
    r.phase_correction.assign(L, 0.0);
    for (std::size_t l = 0; l < L; ++l) {
        const double phi = std::arg(r.data.at(dom, l));
        r.phase_correction[l] = phi;
        const cd f(std::cos(phi), -std::sin(phi));
        for (std::size_t k = 0; k < N; ++k) r.data.at(k, l) *= f;
    }

    r.iterations = 1;
    std::vector<cd> buf;
    std::vector<double> pw;
    r.entropy_trace = {entropy_of(profiles, buf, pw), entropy_of(r.data, buf, pw)};
    return r;
}

MocompResult em_mocomp(const ComplexMat& profiles, const RadarParams& params,
                       std::span<const double> v_grid, std::span<const double> a_grid,
                       const EmOptions& opts) {
    require_nonzero(profiles);
    if (v_grid.empty() || a_grid.empty()) throw ConfigError("em grid must be non-empty");
    auto monotone = [](std::span<const double> g) {
        for (std::size_t i = 1; i < g.size(); ++i)
            if (!(g[i] > g[i - 1])) return false;
        return true;
    };
    if (!monotone(v_grid) || !monotone(a_grid))
        throw ConfigError("em grid must be strictly increasing");
    const DerivedParams drv = derive_params(params);
    if (!opts.force && !has_dominant_scatterer(profiles))
        return passthrough(profiles, "em", "no dominant scatterer; frame passed through");

    MocompResult r;
    r.algorithm = "em";
    const std::size_t N = profiles.rows, L = profiles.cols;
    if (L != static_cast<std::size_t>(params.num_slow))
        throw NumericError("profiles slow-time size does not match params.num_slow");

    std::vector<double> t(L), t2(L);
    for (std::size_t l = 0; l < L; ++l) {
        t[l] = static_cast<double>(l) * drv.t_cli_s;
        t2[l] = 0.5 * t[l] * t[l];
    }
    const double k4pl = 4.0 * kPi / drv.wavelength_m;

    ComplexMat cand(N, L);
    std::vector<cd> phase(L), buf;
    std::vector<double> pw;
    r.entropy_surface.assign(v_grid.size() * a_grid.size(), 0.0);

    double best_entropy = 0.0;
    double best_v = 0.0, best_a = 0.0;
    bool first = true;
    ComplexMat best_data;

    for (std::size_t iv = 0; iv < v_grid.size(); ++iv) {
        for (std::size_t ia = 0; ia < a_grid.size(); ++ia) {
            const double v = v_grid[iv], a = a_grid[ia];
            for (std::size_t l = 0; l < L; ++l) {
                const double ang = k4pl * (v * t[l] + a * t2[l]);
                phase[l] = cd(std::cos(ang), std::sin(ang));
            }
            for (std::size_t k = 0; k < N; ++k)
                for (std::size_t l = 0; l < L; ++l)
                    cand.d[k * L + l] = profiles.d[k * L + l] * phase[l];
            const double e = entropy_of(cand, buf, pw);
            r.entropy_surface[iv * a_grid.size() + ia] = e;

            const bool better =
                first || e < best_entropy ||
                (e == best_entropy && (std::abs(v) < std::abs(best_v) ||
                                       (std::abs(v) == std::abs(best_v) &&
                                        std::abs(a) < std::abs(best_a))));
            if (better) {
                first = false;
                best_entropy = e;
                best_v = v;
                best_a = a;
                best_data = cand;
            }
        }
    }

    r.data = std::move(best_data);
    r.v_hat = best_v;
    r.a_hat = best_a;
    r.iterations = static_cast<int>(v_grid.size() * a_grid.size());
    r.entropy_trace = {entropy_of(profiles, buf, pw), best_entropy};
    return r;
}

MocompResult ccr_mocomp(const ComplexMat& profiles, const CcrOptions& opts) {
    require_nonzero(profiles);
    const std::size_t N = profiles.rows, L = profiles.cols;
    if (L < 2) throw NumericError("ccr needs at least 2 slow-time columns");
    if (opts.max_iters < 1) throw ConfigError("ccr max_iters must be >= 1");

    // degenerate contrast: nothing to correlate against
    {
        std::vector<double> mean_env(N, 0.0);
        for (std::size_t k = 0; k < N; ++k) {
            double s = 0.0;
            for (std::size_t l = 0; l < L; ++l) s += std::abs(profiles.at(k, l));
            mean_env[k] = s;
        }
        const double mx = *std::max_element(mean_env.begin(), mean_env.end());
        const double mn = *std::min_element(mean_env.begin(), mean_env.end());
        if (mx - mn <= 1e-12 * mx) {
            MocompResult r = passthrough(profiles, "ccr",
                                         "zero correlation contrast; frame passed through");
            r.no_target = false;
            return r;
        }
    }
    if (!opts.force && !has_dominant_scatterer(profiles))
        return passthrough(profiles, "ccr", "no dominant scatterer; frame passed through");

    MocompResult r;
    r.algorithm = "ccr";
    r.data = profiles;
    r.shifts.assign(L, 0.0);

    std::vector<cd> buf, fa, fb, scratch;
    std::vector<double> pw, corr;
    r.entropy_trace.push_back(entropy_of(r.data, buf, pw));

    double best_entropy = r.entropy_trace[0];
    ComplexMat best_data = r.data;
    std::vector<double> best_shifts = r.shifts;

    std::vector<std::vector<double>> env(L);
    for (std::size_t l = 0; l < L; ++l) env[l] = column_envelope(r.data, l);

    for (int iter = 1; iter <= opts.max_iters; ++iter) {
        double max_update = 0.0;

        if (opts.adjacent) {
            // successive-echo mode: align each column to its (aligned) predecessor
            for (std::size_t l = 1; l < L; ++l) {
                circular_correlation(env[l], env[l - 1], corr, fa, fb);
                const double d = correlation_peak(corr);
                const double s = -d;
                if (s != 0.0) {
                    shift_column(r.data, l, s, scratch);
                    env[l] = column_envelope(r.data, l);
                }
                r.shifts[l] += s;
                max_update = std::max(max_update, std::abs(s));
            }
        } else if (iter == 1) {
            // progressive pass: reference is the mean of the columns aligned so far
            std::vector<double> ref = env[0];
            for (std::size_t l = 1; l < L; ++l) {
                std::vector<double> scaled(N);
                const double inv = 1.0 / static_cast<double>(l);
                for (std::size_t k = 0; k < N; ++k) scaled[k] = ref[k] * inv;
                circular_correlation(env[l], scaled, corr, fa, fb);
                const double d = correlation_peak(corr);
                const double s = -d;
                if (s != 0.0) {
                    shift_column(r.data, l, s, scratch);
                    env[l] = column_envelope(r.data, l);
                }
                r.shifts[l] += s;
                max_update = std::max(max_update, std::abs(s));
                for (std::size_t k = 0; k < N; ++k) ref[k] += env[l][k];
            }
        } else {
            // global refinement against the full mean envelope
            std::vector<double> ref(N, 0.0);
            for (std::size_t l = 0; l < L; ++l)
                for (std::size_t k = 0; k < N; ++k) ref[k] += env[l][k];
            const double inv = 1.0 / static_cast<double>(L);
            for (std::size_t k = 0; k < N; ++k) ref[k] *= inv;
            for (std::size_t l = 0; l < L; ++l) {
                circular_correlation(env[l], ref, corr, fa, fb);
                const double d = correlation_peak(corr);
                const double s = -d;
                if (s != 0.0) {
                    shift_column(r.data, l, s, scratch);
                    env[l] = column_envelope(r.data, l);
                }
                r.shifts[l] += s;
                max_update = std::max(max_update, std::abs(s));
            }
        }

        r.iterations = iter;
        const double e = entropy_of(r.data, buf, pw);
        r.entropy_trace.push_back(e);
        if (e < best_entropy) {
            best_entropy = e;
            best_data = r.data;
            best_shifts = r.shifts;
        }
        if (max_update < opts.conv_tol_bins) break;
    }

    r.data = std::move(best_data);
    r.shifts = std::move(best_shifts);
    return r;
}

MocompResult pga_mocomp(const ComplexMat& profiles, const PgaOptions& opts) {
    require_nonzero(profiles);
    const std::size_t N = profiles.rows, L = profiles.cols;
    if (L < 2) throw NumericError("pga needs at least 2 slow-time columns");
    if (opts.max_iters < 1) throw ConfigError("pga max_iters must be >= 1");
    if (opts.top_k < 1) throw ConfigError("pga top_k must be >= 1");
    if (!opts.force && !has_dominant_scatterer(profiles))
        return passthrough(profiles, "pga", "no dominant scatterer; frame passed through");

    MocompResult r;
    r.algorithm = "pga";
    r.data = profiles;
    r.phase_correction.assign(L, 0.0);

    std::vector<cd> buf;
    std::vector<double> pw;
    r.entropy_trace.push_back(entropy_of(r.data, buf, pw));

    std::vector<std::vector<cd>> g; // selected, centered, windowed bins in slow time
    std::vector<double> phi(L, 0.0);

    for (int iter = 1; iter <= opts.max_iters; ++iter) {
        // Doppler spectra per range bin
        std::vector<std::vector<cd>> spec(N);
        std::vector<double> peak_power(N, 0.0);
        for (std::size_t k = 0; k < N; ++k) {
            spec[k].assign(r.data.d.begin() + k * L, r.data.d.begin() + (k + 1) * L);
            dsp::dft_inplace(spec[k], -1);
            for (const cd& v : spec[k]) peak_power[k] = std::max(peak_power[k], std::norm(v));
        }

        std::vector<std::size_t> order(N);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return peak_power[a] > peak_power[b]; });
        std::size_t avail = 0;
        while (avail < N && peak_power[order[avail]] > 0.0) ++avail;
        std::size_t k_sel = std::min<std::size_t>(opts.top_k, avail);
        if (k_sel < static_cast<std::size_t>(opts.top_k) && r.warnings.empty())
            r.warnings.push_back("pga: fewer nonzero range bins than top_k; reduced to " +
                                 std::to_string(k_sel));

        // center each selected bin's response at its Doppler peak
        g.assign(k_sel, {});
        for (std::size_t i = 0; i < k_sel; ++i) {
            std::vector<cd> row = spec[order[i]];
            std::size_t pk = 0;
            double best = -1.0;
            for (std::size_t d = 0; d < L; ++d)
                if (std::norm(row[d]) > best) {
                    best = std::norm(row[d]);
                    pk = d;
                }
            std::rotate(row.begin(), row.begin() + pk, row.end());
            g[i] = std::move(row);
        }

        // power-adaptive window around the common center
        std::vector<double> w(L, 0.0);
        for (const auto& row : g)
            for (std::size_t d = 0; d < L; ++d) w[d] += std::norm(row[d]);
        const double wmax = *std::max_element(w.begin(), w.end());
        const double thr = wmax * 1e-3; // 30 dB cutoff
        const std::size_t cap = std::max<std::size_t>(1, L / 4);
        std::size_t right = 0;
        while (right + 1 < cap && w[(right + 1) % L] >= thr) ++right;
        std::size_t left = 0;
        while (left + 1 < cap && w[(L - (left + 1)) % L] >= thr) ++left;
        for (auto& row : g)
            for (std::size_t d = 0; d < L; ++d) {
                const bool keep = d <= right || d >= L - left;
                if (!keep) row[d] = cd(0.0, 0.0);
            }

        // back to slow time
        for (auto& row : g) dsp::dft_inplace(row, +1);

        // weighted phase-gradient kernel, integrated to a phase-error estimate
        std::fill(phi.begin(), phi.end(), 0.0);
        for (std::size_t l = 0; l + 1 < L; ++l) {
            double num = 0.0, den = 0.0;
            for (const auto& row : g) {
                const cd diff = row[l + 1] - row[l];
                num += std::imag(std::conj(row[l]) * diff);
                den += std::norm(row[l]);
            }
            phi[l + 1] = phi[l] + (den > 0.0 ? num / den : 0.0);
        }
        remove_linear_trend(phi);

        const double phi_rms = rms(phi);
        if (phi_rms < opts.rms_tol_rad) break;

        for (std::size_t l = 0; l < L; ++l) {
            const cd f(std::cos(phi[l]), -std::sin(phi[l]));
            for (std::size_t k = 0; k < N; ++k) r.data.at(k, l) *= f;
            r.phase_correction[l] += phi[l];
        }
        r.iterations = iter;
        r.entropy_trace.push_back(entropy_of(r.data, buf, pw));
    }

    return r;
}

} // namespace isar
