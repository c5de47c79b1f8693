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

/// \file metrics.hpp
/// TUM-format trajectory I/O and trajectory error metrics: 2D/per-axis/yaw
/// RMSE plus a windowed relative translation error.

#pragma once

#include <string>
#include <vector>

#include "mrio/geometry.hpp"

namespace mrio {

/// One trajectory row: planar pose with yaw (TUM quaternions are reduced to
/// yaw on read; z is carried through for completeness).
struct TrajectoryPoint {
  Timestamp t = 0.0;
  double x = 0.0, y = 0.0, z = 0.0;
  double yaw = 0.0;
};

struct MetricsReport {
  double rmse_2d = 0.0;        // m
  double rmse_x = 0.0;         // m
  double rmse_y = 0.0;         // m
  double rmse_yaw_deg = 0.0;   // deg
  double rel_trans_err = 0.0;  // m/m, mean drift per meter over windows
  double rel_window_m = 1.0;   // window path length used for rel_trans_err
  int n_matched_poses = 0;
};

/// `stamp x y z qx qy qz qw` per line; skips blank and '#' comment lines.
std::vector<TrajectoryPoint> read_tum(const std::string& path);

/// Writes yaw-only quaternions with z = 0.
void write_tum(const std::string& path, const std::vector<TrajectoryPoint>& traj);

/// Pairs poses by nearest timestamp within max_dt and computes the report.
/// rel_trans_err accumulates ground-truth path length into windows of
/// rel_window_m and averages (estimated drift over the window) / (window
/// length). Throws InsufficientOverlap when fewer than 2 pairs match.
MetricsReport evaluate(const std::vector<TrajectoryPoint>& est,
                       const std::vector<TrajectoryPoint>& gt, double max_dt = 0.05);

void write_report_json(const std::string& path, const MetricsReport& report);
MetricsReport read_report_json(const std::string& path);

}  // namespace mrio
