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

/// \file pipeline.hpp
/// The full multi-rate loop: Stage-II prediction at every IMU sample; per
/// radar epoch gate -> body frame -> merge -> least-squares ego velocity ->
/// Stage-I update -> corrected acceleration -> Stage-II update -> map
/// registration. A degenerate radar epoch degrades to prediction-only and
/// never aborts the run.

#pragma once

#include <string>
#include <vector>

#include "mrio/dataset.hpp"
#include "mrio/ego_velocity.hpp"
#include "mrio/mapping.hpp"
#include "mrio/radar_frontend.hpp"
#include "mrio/stage1_ekf.hpp"
#include "mrio/stage2_ekf.hpp"

namespace mrio {

enum class OutlierRejection {
  kRangeGate,  // default: sensing-radius gate
  kRansac,     // comparison baseline only
};

/// Stationary-start handling: with no accepted radar updates and a quiet
/// corrected acceleration, a zero-velocity pseudo-measurement bounds
/// covariance growth until motion begins.
struct ZuptConfig {
  bool enabled = true;
  double accel_threshold = 0.05;  // m/s^2 on |a_cc|
  double quiet_time = 1.0;        // s without accepted radar updates
  double r_v = 1e-4;              // pseudo-measurement variance, (m/s)^2
  double period = 0.1;            // s between pseudo-measurements
};

struct PipelineConfig {
  GateConfig gate;
  LsqConfig lsq;
  Stage1Config stage1;
  Stage2Config stage2;
  ZuptConfig zupt;
  OutlierRejection outlier = OutlierRejection::kRangeGate;
  RansacConfig ransac;
  std::uint64_t ransac_seed = 0;
  double map_voxel_size = 0.10;   // 0 disables thinning
  bool map_use_attitude = true;   // roll/pitch from the IMU quaternion at registration
  bool bypass_stage1 = false;     // baseline: raw biased acceleration into Stage-II
};

struct TrajectoryEstimate {
  Timestamp t = 0.0;
  double x = 0.0, y = 0.0, v = 0.0, theta = 0.0;
};

/// Per-epoch lateral/vertical ego-velocity components, kept as a diagnostic
/// (only the forward component feeds the filters).
struct EgoVelocityRecord {
  Timestamp t = 0.0;
  Vec3 v = Vec3::Zero();
  double residual_rms = 0.0;
  double condition = 0.0;
  int n_targets = 0;
};

struct PipelineDiagnostics {
  int imu_samples = 0;
  int radar_epochs = 0;
  int accepted_updates = 0;
  int skipped_insufficient = 0;
  int skipped_degenerate = 0;
  int skipped_singular = 0;
  int zupt_updates = 0;
  std::vector<std::string> events;  // timestamped skip/degradation log
};

struct PipelineResult {
  std::vector<TrajectoryEstimate> trajectory;  // one row per IMU sample
  GlobalMap map;
  std::vector<Stage1TracePoint> stage1_trace;
  std::vector<CorrectedAccel> corrected_accel;
  std::vector<InnovationRecord> innovations;
  std::vector<EgoVelocityRecord> ego_velocities;
  PipelineDiagnostics diagnostics;

  PipelineResult() : map(0.10) {}
};

/// Runs the estimator over a merged, time-ordered event stream. Deterministic
/// given identical inputs and config. Throws MismatchedRadarId when a scan
/// references a radar that has no extrinsics entry.
PipelineResult run_pipeline(const std::vector<DatasetRecord>& events,
                            const std::vector<Extrinsics>& rig,
                            const PipelineConfig& cfg);

}  // namespace mrio
