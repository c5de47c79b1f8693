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

#include "mrio/stage2_ekf.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "mrio/errors.hpp"

namespace mrio {

namespace {

Eigen::Matrix4d symmetrize(const Eigen::Matrix4d& m) {
  return 0.5 * (m + m.transpose());
}

Eigen::Matrix<double, 2, 4> measurement_jacobian() {
  Eigen::Matrix<double, 2, 4> h = Eigen::Matrix<double, 2, 4>::Zero();
  h(0, 3) = 1.0;  // theta row
  h(1, 2) = 1.0;  // velocity row
  return h;
}

}  // namespace

Stage2State Stage2State::initial(double theta0, const Stage2Config& cfg) {
  Stage2State s;
  s.theta = wrap_angle(theta0);
  s.cov = cfg.init_cov_diag.asDiagonal();
  return s;
}

Eigen::Matrix4d transition_jacobian(const Stage2State& s, double dt) {
  Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
  const double c = std::cos(s.theta);
  const double sn = std::sin(s.theta);
  f(0, 2) = c * dt;
  f(0, 3) = -s.v * sn * dt;
  f(1, 2) = sn * dt;
  f(1, 3) = s.v * c * dt;
  return f;
}

Stage2State predict(const Stage2State& s, double a_cc, double omega, double dt,
                    const Eigen::Matrix4d& q) {
  if (!(dt > 0.0)) {
    throw NonMonotonicTime("stage-2 predict: dt = " + std::to_string(dt));
  }
  if (dt > kMaxImuDt) {
    throw DtTooLarge("stage-2 predict: dt = " + std::to_string(dt) + " exceeds " +
                     std::to_string(kMaxImuDt));
  }

  Stage2State out;
  out.x = s.x + s.v * std::cos(s.theta) * dt;
  out.y = s.y + s.v * std::sin(s.theta) * dt;
  out.v = s.v + a_cc * dt;
  out.theta = wrap_angle(s.theta + omega * dt);

  const Eigen::Matrix4d f = transition_jacobian(s, dt);
  out.cov = symmetrize(f * s.cov * f.transpose() + q);
  return out;
}

Eigen::Vector2d innovation(const Stage2State& s, const Stage2Measurement& z) {
  return {wrap_angle(z.theta_imu - s.theta), z.v_r - s.v};
}

Stage2Update update(const Stage2State& s, const Stage2Measurement& z) {
  const Eigen::Matrix<double, 2, 4> h = measurement_jacobian();
  const Eigen::Matrix2d s_k = h * s.cov * h.transpose() + z.r;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(s_k);
  const double lmin = eig.eigenvalues()(0);
  const double lmax = eig.eigenvalues()(1);
  if (!(lmin > 0.0) || lmax / lmin > kMaxInnovationCondition) {
    throw SingularInnovationCovariance("innovation covariance condition too high");
  }

  const Eigen::Vector2d nu = innovation(s, z);
  const Eigen::Matrix2d s_inv = s_k.inverse();
  const Eigen::Matrix<double, 4, 2> gain = s.cov * h.transpose() * s_inv;
  const Eigen::Vector4d dx = gain * nu;

  Stage2Update out;
  out.state.x = s.x + dx(0);
  out.state.y = s.y + dx(1);
  out.state.v = s.v + dx(2);
  out.state.theta = wrap_angle(s.theta + dx(3));

  const Eigen::Matrix4d i_kh = Eigen::Matrix4d::Identity() - gain * h;
  out.state.cov =
      symmetrize(i_kh * s.cov * i_kh.transpose() + gain * z.r * gain.transpose());

  out.record.stamp = z.stamp;
  out.record.nu = nu;
  out.record.s = s_k;
  out.record.nis = nu.dot(s_inv * nu);
  return out;
}

}  // namespace mrio
