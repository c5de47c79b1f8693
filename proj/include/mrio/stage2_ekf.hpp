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

/// \file stage2_ekf.hpp
/// Stage-II pose-fusion EKF over [x, y, v, theta]: non-holonomic prediction
/// driven by the offset-free acceleration and yaw rate at IMU rate, and a
/// two-row measurement update [theta from the AHRS, forward speed from the
/// radar least squares] at radar rate. Covariance updates use the Joseph
/// form throughout.

#pragma once

#include <Eigen/Core>

#include "mrio/geometry.hpp"

namespace mrio {

/// IMU-rate guard shared by both filter stages.
inline constexpr double kMaxImuDt = 0.1;

/// Innovation covariance condition bound; above it the update is skipped.
inline constexpr double kMaxInnovationCondition = 1e12;

struct Stage2Config {
  // Process noise PSDs for [x, y, v, theta]; scaled by dt per step.
  Eigen::Vector4d q_diag{1e-6, 1e-6, 1e-4, 1e-7};
  double r_theta = 7.615e-5;  // (0.5 deg)^2, AHRS heading variance proxy
  Eigen::Vector4d init_cov_diag{1e-4, 1e-4, 1e-2, 1e-4};
};

struct Stage2State {
  double x = 0.0;      // world position, m
  double y = 0.0;      // world position, m
  double v = 0.0;      // forward speed, m/s
  double theta = 0.0;  // heading, rad, wrapped to (-pi, pi]
  Eigen::Matrix4d cov = Eigen::Matrix4d::Identity();

  static Stage2State initial(double theta0, const Stage2Config& cfg);
  Eigen::Vector4d vector() const { return {x, y, v, theta}; }
};

/// z = [theta_imu, v_r] with 2x2 covariance r (theta row first).
struct Stage2Measurement {
  Timestamp stamp = 0.0;
  double theta_imu = 0.0;  // AHRS yaw, rad
  double v_r = 0.0;        // radar forward speed, m/s
  Eigen::Matrix2d r = Eigen::Matrix2d::Identity();
};

/// Innovation and its covariance, kept for NIS consistency diagnostics.
struct InnovationRecord {
  Timestamp stamp = 0.0;
  Eigen::Vector2d nu = Eigen::Vector2d::Zero();
  Eigen::Matrix2d s = Eigen::Matrix2d::Identity();
  double nis = 0.0;  // nu' S^-1 nu
};

/// Analytic Jacobian of the transition map at state s for step dt.
Eigen::Matrix4d transition_jacobian(const Stage2State& s, double dt);

/// x' = x + v cos(theta) dt, y' = y + v sin(theta) dt, v' = v + a_cc dt,
/// theta' = wrap(theta + omega dt); cov' = F cov F' + q, with q the
/// per-step process noise matrix. Throws NonMonotonicTime / DtTooLarge.
Stage2State predict(const Stage2State& s, double a_cc, double omega, double dt,
                    const Eigen::Matrix4d& q);

/// nu = [wrap(theta_imu - theta), v_r - v].
Eigen::Vector2d innovation(const Stage2State& s, const Stage2Measurement& z);

struct Stage2Update {
  Stage2State state;
  InnovationRecord record;
};

/// Kalman update with H = [[0,0,0,1],[0,0,1,0]] and Joseph-form covariance;
/// heading rewrapped after correction. Throws SingularInnovationCovariance
/// when cond(S) exceeds kMaxInnovationCondition (caller keeps the prediction).
Stage2Update update(const Stage2State& s, const Stage2Measurement& z);

}  // namespace mrio
