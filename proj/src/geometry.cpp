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

#include "mrio/geometry.hpp"

#include <cmath>

namespace mrio {

Pose compose(const Pose& a, const Pose& b) {
  Pose out;
  out.rotation = (a.rotation * b.rotation).normalized();
  out.translation = a.rotation * b.translation + a.translation;
  return out;
}

Pose inverse(const Pose& p) {
  Pose out;
  out.rotation = p.rotation.conjugate();
  out.translation = -(out.rotation * p.translation);
  return out;
}

Vec3 transform_point(const Pose& t, const Vec3& p) {
  return t.rotation * p + t.translation;
}

Vec3 rotate_vector(const Pose& t, const Vec3& v) { return t.rotation * v; }

double wrap_angle(double a) {
  constexpr double kTwoPi = 2.0 * M_PI;
  double w = std::fmod(a, kTwoPi);  // (-2pi, 2pi)
  if (w <= -M_PI) {
    w += kTwoPi;
  } else if (w > M_PI) {
    w -= kTwoPi;
  }
  return w;
}

double yaw_of(const Eigen::Quaterniond& q) {
  const double siny = 2.0 * (q.w() * q.z() + q.x() * q.y());
  const double cosy = 1.0 - 2.0 * (q.y() * q.y() + q.z() * q.z());
  return std::atan2(siny, cosy);
}

Eigen::Quaterniond quat_from_yaw(double yaw) {
  return Eigen::Quaterniond(std::cos(0.5 * yaw), 0.0, 0.0, std::sin(0.5 * yaw));
}

Pose yaw_pose(double yaw, const Vec3& translation) {
  Pose out;
  out.rotation = quat_from_yaw(yaw);
  out.translation = translation;
  return out;
}

Pose pose_from_ypr(double yaw, double pitch, double roll, const Vec3& translation) {
  Pose out;
  out.rotation = Eigen::AngleAxisd(yaw, Vec3::UnitZ()) *
                 Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
                 Eigen::AngleAxisd(roll, Vec3::UnitX());
  out.rotation.normalize();
  out.translation = translation;
  return out;
}

}  // namespace mrio
