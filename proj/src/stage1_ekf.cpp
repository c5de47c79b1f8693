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

#include "mrio/stage1_ekf.hpp"

#include <cmath>
#include <string>

#include "mrio/errors.hpp"

namespace mrio {

namespace {

Eigen::Matrix2d symmetrize(const Eigen::Matrix2d& m) {
  return 0.5 * (m + m.transpose());
}

}  // namespace

Stage1State Stage1State::initial(const Stage1Config& cfg) {
  Stage1State s;
  s.cov = Eigen::Vector2d(cfg.init_var_v, cfg.init_var_b).asDiagonal();
  return s;
}

Stage1State predict(const Stage1State& s, double a_meas, double dt,
                    const Stage1Config& cfg) {
  if (!(dt > 0.0)) {
    throw NonMonotonicTime("stage-1 predict: dt = " + std::to_string(dt));
  }
  if (dt > cfg.max_dt) {
    throw DtTooLarge("stage-1 predict: dt = " + std::to_string(dt) + " exceeds " +
                     std::to_string(cfg.max_dt));
  }

  Stage1State out;
  out.v = s.v + (a_meas - s.b) * dt;
  out.b = s.b;

  Eigen::Matrix2d f;
  f << 1.0, -dt, 0.0, 1.0;
  const Eigen::Matrix2d q = Eigen::Vector2d(cfg.q_v * dt, cfg.q_b * dt).asDiagonal();
  out.cov = symmetrize(f * s.cov * f.transpose() + q);
  return out;
}

Stage1State update(const Stage1State& s, double v_meas, double r_v) {
  const Eigen::RowVector2d h(1.0, 0.0);
  const double innovation = v_meas - s.v;
  const double s_k = (h * s.cov * h.transpose())(0) + r_v;
  const Eigen::Vector2d gain = s.cov * h.transpose() / s_k;

  Stage1State out;
  out.v = s.v + gain(0) * innovation;
  out.b = s.b + gain(1) * innovation;

  const Eigen::Matrix2d i_kh = Eigen::Matrix2d::Identity() - gain * h;
  out.cov = symmetrize(i_kh * s.cov * i_kh.transpose() + gain * r_v * gain.transpose());
  return out;
}

CorrectedAccel corrected_accel(double v_now, double v_prev, Timestamp t_now,
                               Timestamp t_prev, double prev_smoothed, double alpha) {
  if (!(t_now > t_prev)) {
    throw NonMonotonicTime("corrected_accel: t_now <= t_prev");
  }
  const double raw = (v_now - v_prev) / (t_now - t_prev);
  CorrectedAccel out;
  out.stamp = t_now;
  out.a_cc = alpha * raw + (1.0 - alpha) * prev_smoothed;
  return out;
}

Stage1Result run_stage1(const std::vector<ImuSample>& imu,
                        const std::vector<SpeedMeasurement>& speeds,
                        const Stage1Config& cfg) {
  Stage1Result result;
  if (imu.empty()) return result;

  Stage1State state = Stage1State::initial(cfg);
  result.trace.push_back({imu.front().t, state});

  std::size_t next_speed = 0;
  // Skip measurements before the first IMU sample; there is no state yet.
  while (next_speed < speeds.size() && speeds[next_speed].t < imu.front().t) {
    ++next_speed;
  }

  bool have_prev = false;
  double prev_v = 0.0;
  Timestamp prev_t = 0.0;
  double smoothed = 0.0;

  for (std::size_t k = 1; k < imu.size(); ++k) {
    const ImuSample& sample = imu[k];
    const double dt = sample.t - imu[k - 1].t;
    state = predict(state, sample.accel, dt, cfg);

    while (next_speed < speeds.size() && speeds[next_speed].t <= sample.t) {
      const SpeedMeasurement& z = speeds[next_speed];
      state = update(state, z.v, z.r > 0.0 ? z.r : cfg.r_v);

      if (!have_prev) {
        // First update: the corrected acceleration starts at zero.
        smoothed = 0.0;
        result.corrected.push_back({z.t, 0.0});
        have_prev = true;
      } else {
        const CorrectedAccel a =
            corrected_accel(state.v, prev_v, z.t, prev_t, smoothed, cfg.smoothing_alpha);
        smoothed = a.a_cc;
        result.corrected.push_back(a);
      }
      prev_v = state.v;
      prev_t = z.t;
      ++next_speed;
    }

    result.trace.push_back({sample.t, state});
  }
  return result;
}

}  // namespace mrio
