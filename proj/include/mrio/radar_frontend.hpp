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

/// \file radar_frontend.hpp
/// Range-gate outlier rejection, extrinsic transformation of each radar's
/// scan into the body frame, and merging into one unified scan per epoch.
///
/// Doppler sign convention (fixed project-wide): positive Doppler = target
/// receding (range rate > 0). For a static target and body velocity v the
/// expected Doppler is -u'v, where u is the body-frame unit line of sight.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mrio/geometry.hpp"

namespace mrio {

/// One radar return in the emitting sensor's frame.
struct RadarTarget {
  Vec3 position = Vec3::Zero();  // meters, sensor frame; nonzero range
  double doppler = 0.0;          // m/s, positive = receding
};

/// Timestamped batch of returns from one radar. May be empty: these sensors
/// do not produce returns under static conditions.
struct RadarScan {
  Timestamp stamp = 0.0;
  int radar_id = 0;
  std::vector<RadarTarget> targets;
};

/// Rigid mount of radar `radar_id` on the body: body <- sensor.
struct Extrinsics {
  int radar_id = 0;
  Pose mount;
};

/// Feasible sensing radius [r_inner, r_outer], closed on both ends.
struct GateConfig {
  double r_inner = 0.5;
  double r_outer = 8.0;
};

/// Body-frame target after extrinsic mapping. `los` is the unit line of
/// sight: the sensor-frame direction rotated (never translated) into the
/// body frame, since Doppler is radial. Lever-arm velocity is neglected.
struct BodyTarget {
  Vec3 position = Vec3::Zero();
  Vec3 los = Vec3::UnitX();
  double doppler = 0.0;
  int radar_id = 0;
};

/// One radar's gated, body-framed targets.
struct BodyScan {
  Timestamp stamp = 0.0;
  std::vector<BodyTarget> targets;
};

/// Union of all per-radar scans inside one IMU interval.
struct MergedScan {
  Timestamp stamp = 0.0;  // latest contributing stamp
  std::vector<BodyTarget> targets;
};

/// Keeps exactly the targets with r_inner <= |position| <= r_outer,
/// preserving order; stamp and radar_id unchanged.
RadarScan range_gate(const RadarScan& scan, const GateConfig& cfg);

/// Maps positions through the mount and rotates sensor-frame directions into
/// the body frame. Throws MismatchedRadarId if scan and extrinsics disagree.
std::vector<BodyTarget> to_body(const RadarScan& scan, const Extrinsics& ext);

/// Concatenates already gated, body-framed scans; count is the sum of the
/// inputs and the stamp is the latest contributor.
MergedScan merge_scans(const std::vector<BodyScan>& scans);

/// Optional comparison baseline to the range gate (not the default path):
/// RANSAC on the Doppler residuals of 3-target velocity hypotheses.
struct RansacConfig {
  int iterations = 100;
  double inlier_threshold = 0.1;  // m/s Doppler residual
};

std::vector<BodyTarget> ransac_reject(const std::vector<BodyTarget>& targets,
                                      const RansacConfig& cfg, std::mt19937_64& rng);

}  // namespace mrio
