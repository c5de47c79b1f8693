// Copyright 2026 MRIO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file simulator.hpp
/// Synthetic subterranean-run generator: ground-truth unicycle trajectory,
/// biased IMU streams, and multi-radar Doppler scans with multipath-style
/// clutter. Everything is generated deterministically from (config, seed).
///
/// Conventions: an IMU sample stamped t_k reports the body rates over the
/// interval ending at t_k (so a consumer propagating [t_{k-1}, t_k] with the
/// sample's rates reproduces the generator's own Euler step exactly), while
/// the AHRS yaw is the instantaneous heading at t_k. Radar Doppler is the
/// negative projection of the body velocity onto the sensor-frame line of
/// sight; mounts are treated as rotation-only for Doppler purposes (no
/// lever-arm term, matching the estimation model).

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "mrio/geometry.hpp"
#include "mrio/radar_frontend.hpp"

namespace mrio {

/// Piecewise-constant command: forward acceleration and yaw rate, plus an
/// optional tunnel slope that leaks a g*sin(slope) gravity component into
/// the measured forward acceleration (truth motion stays planar).
struct TrajectorySegment {
  double duration = 1.0;    // s
  double accel = 0.0;       // m/s^2
  double yaw_rate = 0.0;    // rad/s
  double slope_deg = 0.0;   // deg, gravity-projection bias emulation
};

struct TrajectoryProfile {
  std::vector<TrajectorySegment> segments;
  double imu_rate = 200.0;   // Hz
  double radar_rate = 10.0;  // Hz; imu_rate >= radar_rate
  double start_x = 0.0;
  double start_y = 0.0;
  double start_heading = 0.0;  // rad
  double start_speed = 0.0;    // m/s
};

/// One ground-truth sample; accel/yaw_rate/slope_deg are the commands applied
/// over [t, t + 1/imu_rate).
struct TruthSample {
  Timestamp t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  double theta = 0.0;
  double accel = 0.0;
  double yaw_rate = 0.0;
  double slope_deg = 0.0;
};

/// Exact Euler integration of the unicycle kinematics at imu_rate,
/// continuous across segment boundaries.
std::vector<TruthSample> generate_truth(const TrajectoryProfile& profile);

// Accelerometer offset truth models.
struct ConstantBias {
  double c = 0.0;  // m/s^2
};
struct LinearDrift {
  double b0 = 0.0;     // m/s^2
  double slope = 0.0;  // m/s^3
};
struct RandomWalkBias {
  double b0 = 0.0;   // m/s^2
  double psd = 0.0;  // (m/s^3)^2 s
};
using BiasModel = std::variant<ConstantBias, LinearDrift, RandomWalkBias>;

struct ImuNoisePreset {
  double accel_noise_density = 0.0;  // m/s^2/sqrt(Hz)
  double gyro_noise_density = 0.0;   // rad/s/sqrt(Hz)
  double yaw_drift_rate = 0.0;       // rad/s, AHRS heading drift

  static ImuNoisePreset px4();        // Cube Orange class
  static ImuNoisePreset vectornav();  // VN-100 class
  static ImuNoisePreset ideal();      // zero noise, zero drift
};

/// Raw simulated IMU record (3-axis rates plus the AHRS yaw output).
struct SimImuRecord {
  Timestamp t = 0.0;
  Vec3 accel = Vec3::Zero();  // gravity-compensated specific force, body frame
  Vec3 gyro = Vec3::Zero();   // rad/s
  double yaw_ahrs = 0.0;      // rad
};

std::vector<SimImuRecord> synth_imu(const std::vector<TruthSample>& truth,
                                    const BiasModel& bias, const ImuNoisePreset& preset,
                                    std::uint64_t seed);

/// Tunnel geometry discretized to radar-visible surface points: two walls
/// flanking the centerline at several heights plus a ceiling band.
struct TunnelWorld {
  std::vector<Vec3> centerline;  // z = 0 polyline
  double half_width = 2.0;
  double wall_point_spacing = 0.5;
  double ceiling_height = 2.5;
  std::vector<Vec3> surface_points;
};

/// Walls derived from the ground-truth path so the corridor follows the
/// trajectory everywhere.
TunnelWorld build_tunnel_world(const std::vector<TruthSample>& truth, double half_width,
                               double wall_point_spacing, double ceiling_height);

/// Multipath-style spurious returns accumulating near the robot.
struct ClutterModel {
  double rate = 5.0;            // expected spurious targets per scan
  double radius_min = 0.05;     // m from the sensor
  double radius_max = 0.4;      // m
  double doppler_spread = 2.0;  // m/s, uniform in [-spread, spread]
};

struct RadarSimConfig {
  double radar_rate = 10.0;           // Hz
  double max_range = 8.0;             // m
  double fov_half_angle_deg = 30.0;   // 60 deg x 60 deg cone
  double doppler_sigma = 0.03;        // m/s
  double static_speed_threshold = 0.05;  // below it the walls return nothing
};

/// Scan plus the index where appended clutter targets begin (targets before
/// clutter_begin lie on true surfaces).
struct SimulatedScan {
  RadarScan scan;
  std::size_t clutter_begin = 0;
};

std::vector<SimulatedScan> synth_radar(const std::vector<TruthSample>& truth,
                                       const TunnelWorld& world,
                                       const std::vector<Extrinsics>& rig,
                                       const ClutterModel& clutter,
                                       const RadarSimConfig& cfg, std::uint64_t seed);

/// Linear interpolation of the truth trace (heading via wrapped delta).
TruthSample interpolate_truth(const std::vector<TruthSample>& truth, Timestamp t);

}  // namespace mrio
