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

/// \file stage1_ekf.hpp
/// Stage-I bias-aware EKF estimating forward velocity and the acceleration
/// offset contained in the accelerometer reading. The offset is modelled as
/// a random walk rather than a constant or deterministic drift; the radar
/// least-squares speed is the measurement that keeps it observable. The
/// filter also emits the offset-free acceleration (finite difference of the
/// refined velocity, exponentially smoothed) consumed by Stage-II.
///
/// Sign convention: b is the additive offset contained in the reading, so
/// the true specific force is a_meas - b and prediction integrates
/// (a_meas - b) * dt.

#pragma once

#include <Eigen/Core>
#include <vector>

#include "mrio/geometry.hpp"

namespace mrio {

struct Stage1Config {
  double q_v = 1e-4;           // velocity process noise PSD, (m/s^2)^2 s
  double q_b = 1e-6;           // offset random-walk PSD, (m/s^3)^2 s
  double r_v = 9e-4;           // radar speed measurement variance, (m/s)^2
  double smoothing_alpha = 0.6;  // EMA coefficient in (0,1]; 1 = raw finite difference
  double max_dt = 0.1;         // IMU-rate guard, s
  double init_var_v = 0.25;    // initial velocity variance
  double init_var_b = 0.04;    // initial offset variance
};

struct Stage1State {
  double v = 0.0;  // forward velocity, m/s
  double b = 0.0;  // acceleration offset, m/s^2
  Eigen::Matrix2d cov = Eigen::Matrix2d::Identity();

  static Stage1State initial(const Stage1Config& cfg);
};

/// Offset-free forward acceleration, smoothed.
struct CorrectedAccel {
  Timestamp stamp = 0.0;
  double a_cc = 0.0;  // m/s^2
};

/// Propagates one IMU interval: v' = v + (a_meas - b) dt, b' = b, with
/// F = [[1, -dt], [0, 1]] and Q = diag(q_v dt, q_b dt).
/// Throws NonMonotonicTime (dt <= 0) or DtTooLarge (dt > cfg.max_dt).
Stage1State predict(const Stage1State& s, double a_meas, double dt,
                    const Stage1Config& cfg);

/// Linear update with h = [1, 0] and Joseph-form covariance.
Stage1State update(const Stage1State& s, double v_meas, double r_v);

/// raw = (v_now - v_prev) / (t_now - t_prev); a_cc = alpha * raw +
/// (1 - alpha) * prev_smoothed. Throws NonMonotonicTime when t_now <= t_prev.
CorrectedAccel corrected_accel(double v_now, double v_prev, Timestamp t_now,
                               Timestamp t_prev, double prev_smoothed, double alpha);

/// One IMU sample as the filters consume it: forward specific force, yaw
/// rate, and the AHRS yaw measurement.
struct ImuSample {
  Timestamp t = 0.0;
  double accel = 0.0;     // forward axis, m/s^2 (biased as measured)
  double gyro_z = 0.0;    // rad/s
  double yaw_ahrs = 0.0;  // rad
};

/// Scalar radar speed with its variance, as produced by the least-squares
/// front half of the pipeline.
struct SpeedMeasurement {
  Timestamp t = 0.0;
  double v = 0.0;
  double r = 9e-4;
};

struct Stage1TracePoint {
  Timestamp t = 0.0;
  Stage1State state;
};

struct Stage1Result {
  std::vector<Stage1TracePoint> trace;    // one entry per IMU sample
  std::vector<CorrectedAccel> corrected;  // one entry per accepted speed update
};

/// Multi-rate batch driver: predicts at every IMU sample, updates at every
/// speed measurement inside the elapsed interval, and emits one
/// CorrectedAccel per update. Streams must be time-ordered.
Stage1Result run_stage1(const std::vector<ImuSample>& imu,
                        const std::vector<SpeedMeasurement>& speeds,
                        const Stage1Config& cfg);

}  // namespace mrio
