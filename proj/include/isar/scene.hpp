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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isar/types.hpp"

namespace isar {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// One point scatterer. For target scatterers (x, y) are body-frame
/// displacements from the center of gravity; for clutter entries they are
/// absolute ground coordinates.
struct Scatterer {
    double x_local_m = 0.0;
    double y_local_m = 0.0;
    double reflectivity = 1.0; // amplitude weight, >= 0
};

/// Aspect rotation law psi(t) = psi0 + alpha*t + beta*t^2, where psi is the
/// angle of the body x-axis measured from the instantaneous line of sight.
/// psi = 0 therefore puts a scatterer at (x_b, 0) exactly x_b meters behind
/// the center of gravity along the line of sight.
struct RotationLaw {
    double psi0_rad = 0.0;
    double alpha_rad_per_s = 0.0;
    double beta_rad_per_s2 = 0.0;
};

enum class RotationMode {
    law,         // psi from RotationLaw
    follow_path, // body x-axis along the path tangent; psi = heading - LOS angle
};

struct Waypoint {
    double t_s = 0.0;
    double x_m = 0.0;
    double y_m = 0.0;
};

/// Center-of-gravity trajectory: time-stamped 2D waypoints joined by natural
/// cubic splines per coordinate (exact at the waypoints), plus the rotation
/// behaviour of the body around its center.
struct TrajectorySpec {
    std::vector<Waypoint> waypoints;
    RotationMode mode = RotationMode::law;
    RotationLaw law;
};

struct Pose {
    Vec2 position;  // center of gravity, radar at origin, boresight +y
    double psi_rad; // aspect angle (see RotationLaw)
};

/// Compiled trajectory: spline coefficients solved once, cheap to evaluate.
class Path {
  public:
    explicit Path(const TrajectorySpec& spec); // throws ConfigError on bad spec

    double t_begin() const { return t0_; }
    double t_end() const { return t1_; }

    Pose pose(double t) const; // throws NumericError outside [t_begin, t_end]
    Vec2 position(double t) const;
    Vec2 velocity(double t) const;

  private:
    struct Spline {
        std::vector<double> t, y, m; // knots, values, second derivatives
        double eval(double x) const;
        double deriv(double x) const;
    };
    void check_domain(double t) const;

    Spline x_, y_;
    RotationMode mode_;
    RotationLaw law_;
    double t0_ = 0.0, t1_ = 0.0;
};

/// Convenience wrapper compiling the spec on each call; prefer Path for loops.
Pose pose_at(const TrajectorySpec& traj, double t);

/// Extended target plus stationary environment for one simulation.
struct Scene {
    std::string name = "custom";
    std::vector<Scatterer> scatterers; // body frame
    TrajectorySpec trajectory;
    std::vector<Scatterer> clutter; // absolute ground positions, zero Doppler
    double noise_power = 0.0;       // per-sample complex noise variance
    std::uint64_t seed = 1;
    double sigma_fluct = 0.0; // per-frame relative reflectivity jitter (std dev)
    double extent_x_m = 0.0;  // 0 = unconstrained
    double extent_y_m = 0.0;

    void validate() const; // throws ConfigError
    double t_begin() const;
    double t_end() const;
};

struct RangeAzimuth {
    double range_m = 0.0;
    double azimuth_rad = 0.0; // from boresight (+y axis), positive toward +x
};

/// World position of scatterer b at time t (exact rigid-body geometry).
Vec2 scatterer_position(const Scene& scene, std::size_t b, double t);

/// Exact range and azimuth of scatterer b at time t. Range is the Euclidean
/// distance from the radar origin; this is the default used for synthesis.
RangeAzimuth scatterer_range_azimuth(const Scene& scene, std::size_t b, double t);

/// Far-field range approximation R(t) + x_b*cos(psi) - y_b*sin(psi), retained
/// for validation against the exact geometry.
double scatterer_range_far_field(const Scene& scene, std::size_t b, double t);

/// Named presets: "uturn-car", "blank", "single-point".
Scene builtin_scenario(std::string_view name); // throws ConfigError on unknown name
std::vector<std::string> builtin_scenario_names();

/// Parametrized factories behind the presets.
Scene uturn_car_scenario();
Scene blank_scenario(double noise_power = 1.0, double duration_s = 15.0);
Scene single_point_scenario(double range0_m = 10.0, double velocity_mps = 0.0,
                            double duration_s = 15.0, double noise_power = 0.0);

} // namespace isar
