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

#include "isar/scene.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isar {

namespace {

// Natural cubic spline through (t_i, y_i): second derivatives from the
// standard tridiagonal system, zero curvature at the ends. Two waypoints
// degrade to a straight line.
std::vector<double> solve_second_derivatives(const std::vector<double>& t,
                                             const std::vector<double>& y) {
    const std::size_t n = t.size();
    std::vector<double> m(n, 0.0);
    if (n < 3) return m;

    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = t[i] - t[i - 1];
        const double h1 = t[i + 1] - t[i];
        a[i] = h0;
        b[i] = 2.0 * (h0 + h1);
        c[i] = h1;
        r[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
    }
    // Thomas algorithm on rows 1..n-2
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        r[i] -= w * r[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m[i] = (r[i] - c[i] * m[i + 1]) / b[i];
        if (i == 1) break;
    }
    return m;
}

std::size_t segment_index(const std::vector<double>& t, double x) {
    auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t i = static_cast<std::size_t>(std::distance(t.begin(), it));
    if (i == 0) return 0;
    if (i >= t.size()) return t.size() - 2;
    return i - 1;
}

double los_angle(const Vec2& p) { return std::atan2(p.y, p.x); }

} // namespace

double Path::Spline::eval(double x) const {
    const std::size_t i = segment_index(t, x);
    const double h = t[i + 1] - t[i];
    const double s = x - t[i];
    const double ci = m[i] / 2.0;
    const double di = (m[i + 1] - m[i]) / (6.0 * h);
    const double bi = (y[i + 1] - y[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
    return y[i] + s * (bi + s * (ci + s * di));
}

double Path::Spline::deriv(double x) const {
    const std::size_t i = segment_index(t, x);
    const double h = t[i + 1] - t[i];
    const double s = x - t[i];
    const double ci = m[i] / 2.0;
    const double di = (m[i + 1] - m[i]) / (6.0 * h);
    const double bi = (y[i + 1] - y[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
    return bi + s * (2.0 * ci + 3.0 * s * di);
}

Path::Path(const TrajectorySpec& spec) : mode_(spec.mode), law_(spec.law) {
    const auto& wp = spec.waypoints;
    if (wp.size() < 2) throw ConfigError("trajectory needs at least 2 waypoints");
    for (std::size_t i = 1; i < wp.size(); ++i)
        if (!(wp[i].t_s > wp[i - 1].t_s))
            throw ConfigError("waypoint timestamps must be strictly increasing");
    for (const Waypoint& w : wp)
        if (!std::isfinite(w.t_s) || !std::isfinite(w.x_m) || !std::isfinite(w.y_m))
            throw ConfigError("waypoint coordinates must be finite");

    x_.t.reserve(wp.size());
    for (const Waypoint& w : wp) {
        x_.t.push_back(w.t_s);
        x_.y.push_back(w.x_m);
        y_.y.push_back(w.y_m);
    }
    y_.t = x_.t;
    x_.m = solve_second_derivatives(x_.t, x_.y);
    y_.m = solve_second_derivatives(y_.t, y_.y);
    t0_ = wp.front().t_s;
    t1_ = wp.back().t_s;
}

void Path::check_domain(double t) const {
    if (t < t0_ - 1e-9 || t > t1_ + 1e-9) {
        std::ostringstream os;
        os << "time " << t << " s outside trajectory domain [" << t0_ << ", " << t1_ << "] s";
        throw NumericError(os.str());
    }
}

Vec2 Path::position(double t) const {
    check_domain(t);
    const double tc = std::clamp(t, t0_, t1_);
    return {x_.eval(tc), y_.eval(tc)};
}

Vec2 Path::velocity(double t) const {
    check_domain(t);
    const double tc = std::clamp(t, t0_, t1_);
    return {x_.deriv(tc), y_.deriv(tc)};
}

Pose Path::pose(double t) const {
    const Vec2 p = position(t);
    double psi = 0.0;
    if (mode_ == RotationMode::law) {
        psi = law_.psi0_rad + law_.alpha_rad_per_s * t + law_.beta_rad_per_s2 * t * t;
    } else {
        const Vec2 v = velocity(t);
        const double speed = std::hypot(v.x, v.y);
        // tangent undefined at rest; fall back to the line of sight (psi = 0)
        const double heading = speed > 1e-12 ? std::atan2(v.y, v.x) : los_angle(p);
        psi = heading - los_angle(p);
    }
    return {p, psi};
}

Pose pose_at(const TrajectorySpec& traj, double t) { return Path(traj).pose(t); }

void Scene::validate() const {
    if (noise_power < 0.0 || !std::isfinite(noise_power))
        throw ConfigError("noise_power must be >= 0");
    if (sigma_fluct < 0.0 || !std::isfinite(sigma_fluct))
        throw ConfigError("sigma_fluct must be >= 0");
    for (const Scatterer& s : scatterers) {
        if (s.reflectivity < 0.0 || !std::isfinite(s.reflectivity))
            throw ConfigError("scatterer reflectivity must be >= 0");
        if (extent_x_m > 0.0 && std::abs(s.x_local_m) > extent_x_m)
            throw ConfigError("scatterer x displacement exceeds declared target extent");
        if (extent_y_m > 0.0 && std::abs(s.y_local_m) > extent_y_m)
            throw ConfigError("scatterer y displacement exceeds declared target extent");
    }
    for (const Scatterer& s : clutter)
        if (s.reflectivity < 0.0 || !std::isfinite(s.reflectivity))
            throw ConfigError("clutter reflectivity must be >= 0");
    Path path(trajectory); // validates waypoints
}

double Scene::t_begin() const {
    if (trajectory.waypoints.empty()) throw ConfigError("scene has no trajectory");
    return trajectory.waypoints.front().t_s;
}

double Scene::t_end() const {
    if (trajectory.waypoints.empty()) throw ConfigError("scene has no trajectory");
    return trajectory.waypoints.back().t_s;
}

Vec2 scatterer_position(const Scene& scene, std::size_t b, double t) {
    if (b >= scene.scatterers.size()) throw NumericError("scatterer index out of range");
    const Pose pose = Path(scene.trajectory).pose(t);
    const Scatterer& s = scene.scatterers[b];
    const double ang = los_angle(pose.position) + pose.psi_rad;
    const double ca = std::cos(ang), sa = std::sin(ang);
    return {pose.position.x + ca * s.x_local_m - sa * s.y_local_m,
            pose.position.y + sa * s.x_local_m + ca * s.y_local_m};
}

RangeAzimuth scatterer_range_azimuth(const Scene& scene, std::size_t b, double t) {
    const Vec2 p = scatterer_position(scene, b, t);
    return {std::hypot(p.x, p.y), std::atan2(p.x, p.y)};
}

double scatterer_range_far_field(const Scene& scene, std::size_t b, double t) {
    if (b >= scene.scatterers.size()) throw NumericError("scatterer index out of range");
    const Pose pose = Path(scene.trajectory).pose(t);
    const Scatterer& s = scene.scatterers[b];
    const double range = std::hypot(pose.position.x, pose.position.y);
    return range + s.x_local_m * std::cos(pose.psi_rad) - s.y_local_m * std::sin(pose.psi_rad);
}

Scene uturn_car_scenario() {
    Scene sc;
    sc.name = "uturn-car";
    // 3.6 x 1.6 m footprint sampled by a 5x2 scatterer grid; the rear corner
    // dominates, like the strongest reflector of a real car body
    static constexpr double kReflectivity[5][2] = {
        {2.2, 1.6}, {1.0, 0.8}, {0.7, 0.7}, {0.8, 1.0}, {1.5, 1.2}};
    for (int ix = 0; ix < 5; ++ix)
        for (int iy = 0; iy < 2; ++iy)
            sc.scatterers.push_back(
                {-1.8 + 0.9 * ix, iy == 0 ? -0.8 : 0.8, kReflectivity[ix][iy]});
    sc.extent_x_m = 1.8;
    sc.extent_y_m = 0.8;
    sc.trajectory.waypoints = {{0.0, -14.3, 4.9}, {7.5, -3.0, 16.0}, {15.0, -14.0, 30.3}};
    sc.trajectory.mode = RotationMode::follow_path;
    sc.noise_power = 1.0;
    sc.seed = 1;
    return sc;
}

Scene blank_scenario(double noise_power, double duration_s) {
    Scene sc;
    sc.name = "blank";
    sc.trajectory.waypoints = {{0.0, 0.0, 10.0}, {duration_s, 0.0, 10.0}};
    sc.trajectory.mode = RotationMode::law;
    sc.noise_power = noise_power;
    sc.seed = 1;
    return sc;
}

Scene single_point_scenario(double range0_m, double velocity_mps, double duration_s,
                            double noise_power) {
    Scene sc;
    sc.name = "single-point";
    sc.scatterers.push_back({0.0, 0.0, 1.0});
    sc.trajectory.waypoints = {{0.0, 0.0, range0_m},
                               {duration_s, 0.0, range0_m + velocity_mps * duration_s}};
    sc.trajectory.mode = RotationMode::law;
    sc.noise_power = noise_power;
    sc.seed = 1;
    return sc;
}

Scene builtin_scenario(std::string_view name) {
    if (name == "uturn-car") return uturn_car_scenario();
    if (name == "blank") return blank_scenario();
    if (name == "single-point") return single_point_scenario();
    throw ConfigError("unknown scenario preset: " + std::string(name));
}

std::vector<std::string> builtin_scenario_names() {
    return {"uturn-car", "blank", "single-point"};
}

} // namespace isar
