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

#include "mrio/mapping.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "mrio/errors.hpp"

namespace mrio {

namespace {

// 21 bits per axis around a signed offset; ~2e6 cells per axis is far beyond
// any tunnel bounding volume at the default 0.1 m voxel.
std::uint64_t voxel_key(const Vec3& p, double voxel) {
  constexpr std::int64_t kOffset = 1 << 20;
  constexpr std::uint64_t kMask = (1ull << 21) - 1;
  const auto ix = static_cast<std::int64_t>(std::floor(p.x() / voxel)) + kOffset;
  const auto iy = static_cast<std::int64_t>(std::floor(p.y() / voxel)) + kOffset;
  const auto iz = static_cast<std::int64_t>(std::floor(p.z() / voxel)) + kOffset;
  return ((static_cast<std::uint64_t>(ix) & kMask) << 42) |
         ((static_cast<std::uint64_t>(iy) & kMask) << 21) |
         (static_cast<std::uint64_t>(iz) & kMask);
}

}  // namespace

int GlobalMap::register_scan(const Pose& pose, const MergedScan& scan) {
  int inserted = 0;
  for (const BodyTarget& t : scan.targets) {
    const Vec3 world = transform_point(pose, t.position);
    if (voxel_size_ > 0.0) {
      const std::uint64_t key = voxel_key(world, voxel_size_);
      if (!occupied_.insert(key).second) continue;
    }
    points_.push_back({world, scan.stamp, t.radar_id});
    ++inserted;
  }
  return inserted;
}

Pose pose_to_transform(double x, double y, double theta,
                       const std::optional<Eigen::Quaterniond>& attitude) {
  Pose out = yaw_pose(theta, Vec3(x, y, 0.0));
  if (attitude) {
    out.rotation = (out.rotation * attitude->normalized()).normalized();
  }
  return out;
}

void export_ply(const GlobalMap& map, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open " + path + " for writing");

  file << "ply\n"
       << "format ascii 1.0\n"
       << "element vertex " << map.size() << "\n"
       << "property float x\n"
       << "property float y\n"
       << "property float z\n"
       << "end_header\n";
  char line[96];
  for (const MapPoint& p : map.points()) {
    std::snprintf(line, sizeof(line), "%.9g %.9g %.9g\n",
                  static_cast<double>(static_cast<float>(p.position.x())),
                  static_cast<double>(static_cast<float>(p.position.y())),
                  static_cast<double>(static_cast<float>(p.position.z())));
    file << line;
  }
  if (!file) throw IoError("failed writing " + path);
}

void export_xyz_csv(const GlobalMap& map, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open " + path + " for writing");
  char line[120];
  for (const MapPoint& p : map.points()) {
    std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g\n", p.position.x(),
                  p.position.y(), p.position.z());
    file << line;
  }
  if (!file) throw IoError("failed writing " + path);
}

}  // namespace mrio
