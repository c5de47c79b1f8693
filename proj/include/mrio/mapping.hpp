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

/// \file mapping.hpp
/// Radar-only global map: body-frame scans transformed by the estimated pose
/// and accumulated, with bounded-memory voxel thinning and PLY/CSV export.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "mrio/geometry.hpp"
#include "mrio/radar_frontend.hpp"

namespace mrio {

struct MapPoint {
  Vec3 position = Vec3::Zero();  // world frame
  Timestamp stamp = 0.0;
  int radar_id = 0;
};

/// Accumulated world-frame point cloud. With thinning enabled (voxel_size >
/// 0) at most one point is stored per voxel cell; voxel index is
/// floor(coordinate / voxel_size) per axis, so boundary points belong to the
/// lower cell.
class GlobalMap {
 public:
  explicit GlobalMap(double voxel_size = 0.10) : voxel_size_(voxel_size) {}

  /// Transforms each scan point by `pose` and inserts it unless its voxel is
  /// already occupied. Insertion order follows scan order. Returns the
  /// number of points inserted.
  int register_scan(const Pose& pose, const MergedScan& scan);

  const std::vector<MapPoint>& points() const { return points_; }
  double voxel_size() const { return voxel_size_; }
  std::size_t size() const { return points_.size(); }

 private:
  double voxel_size_;
  std::vector<MapPoint> points_;
  std::unordered_set<std::uint64_t> occupied_;
};

/// Builds the world-from-body transform: translation (x, y, 0) and rotation
/// yaw(theta) composed with an optional roll/pitch attitude, which lets the
/// slanted radars place points in 3D while the state stays planar.
Pose pose_to_transform(double x, double y, double theta,
                       const std::optional<Eigen::Quaterniond>& attitude = {});

/// ASCII PLY with float x y z properties, one vertex per stored point.
void export_ply(const GlobalMap& map, const std::string& path);

/// One `x,y,z` line per stored point.
void export_xyz_csv(const GlobalMap& map, const std::string& path);

}  // namespace mrio
