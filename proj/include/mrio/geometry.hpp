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

/// \file geometry.hpp
/// Rigid-body transforms, frames, angle arithmetic, and timestamps shared by
/// every other module. Rotations are stored as unit quaternions and
/// renormalized after composition; matrices are materialized on demand.

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace mrio {

using Vec3 = Eigen::Vector3d;

/// Seconds since dataset epoch. Finite and non-negative; strictly increasing
/// within any stream (enforced at ingestion).
using Timestamp = double;

/// Rigid transform: applies rotation then translation (p -> R p + t).
struct Pose {
  Eigen::Quaterniond rotation = Eigen::Quaterniond::Identity();  // (w,x,y,z)
  Vec3 translation = Vec3::Zero();

  static Pose Identity() { return Pose{}; }
};

/// a then-applied-after b: result maps p -> a(b(p)). Quaternion renormalized.
Pose compose(const Pose& a, const Pose& b);

Pose inverse(const Pose& p);

/// R p + t.
Vec3 transform_point(const Pose& t, const Vec3& p);

/// Rotation-only mapping (directions, velocities).
Vec3 rotate_vector(const Pose& t, const Vec3& v);

/// Wraps to (-pi, pi]; a tie at pi maps to +pi.
double wrap_angle(double a);

/// Yaw (rotation about +z) extracted from a quaternion.
double yaw_of(const Eigen::Quaterniond& q);

Eigen::Quaterniond quat_from_yaw(double yaw);

/// Pure yaw pose at the given translation.
Pose yaw_pose(double yaw, const Vec3& translation = Vec3::Zero());

/// Intrinsic z-y-x (yaw, pitch, roll) rotation at the given translation.
Pose pose_from_ypr(double yaw, double pitch, double roll,
                   const Vec3& translation = Vec3::Zero());

}  // namespace mrio
