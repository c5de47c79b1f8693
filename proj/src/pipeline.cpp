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

#include "mrio/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>

#include "mrio/errors.hpp"

namespace mrio {

namespace {

std::string stamp_message(Timestamp t, const std::string& what) {
  char head[40];
  std::snprintf(head, sizeof(head), "[t=%.3f] ", t);
  return head + what;
}

class PipelineRunner {
 public:
  PipelineRunner(const std::vector<Extrinsics>& rig, const PipelineConfig& cfg)
      : cfg_(cfg), ransac_rng_(cfg.ransac_seed) {
    for (const Extrinsics& e : rig) rig_by_id_[e.radar_id] = e;
    result_.map = GlobalMap(cfg.map_voxel_size);
  }

  PipelineResult run(const std::vector<DatasetRecord>& events) {
    for (const DatasetRecord& event : events) {
      const Timestamp t_e = record_time(event);
      flush_pending(t_e);
      if (const auto* imu = std::get_if<ImuRecord>(&event)) {
        on_imu(*imu);
        // Scans that fell strictly inside the elapsed interval are fused now
        // that the state has been propagated past them.
        flush_pending(t_e);
      } else {
        on_radar(std::get<RadarScan>(event));
      }
    }
    flush_pending(std::numeric_limits<double>::infinity());
    return std::move(result_);
  }

 private:
  void on_imu(const ImuRecord& rec) {
    ++result_.diagnostics.imu_samples;
    const Eigen::Quaterniond q(rec.qw, rec.qx, rec.qy, rec.qz);
    yaw_ahrs_ = yaw_of(q);
    attitude_ = q;

    if (!initialized_) {
      // Initial state: origin, zero speed, first AHRS yaw.
      s1_ = Stage1State::initial(cfg_.stage1);
      s2_ = Stage2State::initial(yaw_ahrs_, cfg_.stage2);
      initialized_ = true;
      t_ = rec.t;
      start_t_ = rec.t;
      last_accepted_t_ = rec.t;
      last_loud_accel_t_ = rec.t;
      last_zupt_t_ = rec.t - cfg_.zupt.period;
      emit_trajectory_row();
      return;
    }

    const double dt = rec.t - t_;
    s1_ = predict(s1_, rec.ax, dt, cfg_.stage1);
    const double a_drive = cfg_.bypass_stage1 ? rec.ax : a_cc_;
    const Eigen::Matrix4d q_step = (cfg_.stage2.q_diag * dt).asDiagonal();
    s2_ = predict(s2_, a_drive, rec.gz, dt, q_step);
    t_ = rec.t;

    if (std::abs(a_cc_) >= cfg_.zupt.accel_threshold) last_loud_accel_t_ = t_;
    maybe_zupt();
    emit_trajectory_row();
  }

  void on_radar(const RadarScan& scan) {
    if (rig_by_id_.find(scan.radar_id) == rig_by_id_.end()) {
      throw MismatchedRadarId("dataset references radar_id " +
                              std::to_string(scan.radar_id) +
                              " which has no extrinsics entry");
    }
    pending_.push_back(scan);
  }

  // Fuses pending scans grouped by identical stamps, ascending. A group is
  // processed once no further scan can join it (its stamp is strictly below
  // the watermark, i.e. the next event's time) and the state has been
  // propagated at least to its stamp.
  void flush_pending(Timestamp watermark) {
    if (!initialized_ || pending_.empty()) return;

    std::size_t i = 0;
    while (i < pending_.size() && pending_[i].stamp < watermark &&
           pending_[i].stamp <= t_) {
      std::size_t j = i + 1;
      while (j < pending_.size() && pending_[j].stamp == pending_[i].stamp) ++j;
      process_epoch(pending_.begin() + static_cast<long>(i),
                    pending_.begin() + static_cast<long>(j));
      i = j;
    }
    pending_.erase(pending_.begin(), pending_.begin() + static_cast<long>(i));

    if (watermark == std::numeric_limits<double>::infinity() && !pending_.empty()) {
      result_.diagnostics.events.push_back(stamp_message(
          pending_.front().stamp, "dropping trailing radar scans with no IMU coverage"));
      pending_.clear();
    }
  }

  void process_epoch(std::vector<RadarScan>::const_iterator begin,
                     std::vector<RadarScan>::const_iterator end) {
    ++result_.diagnostics.radar_epochs;
    const Timestamp t_m = begin->stamp;

    std::vector<BodyScan> body_scans;
    for (auto it = begin; it != end; ++it) {
      const Extrinsics& ext = rig_by_id_.at(it->radar_id);
      BodyScan bs;
      bs.stamp = it->stamp;
      if (cfg_.outlier == OutlierRejection::kRangeGate) {
        bs.targets = to_body(range_gate(*it, cfg_.gate), ext);
      } else {
        bs.targets = to_body(*it, ext);
      }
      body_scans.push_back(std::move(bs));
    }
    MergedScan merged = merge_scans(body_scans);
    if (cfg_.outlier == OutlierRejection::kRansac) {
      merged.targets = ransac_reject(merged.targets, cfg_.ransac, ransac_rng_);
    }

    EgoVelocity ego;
    try {
      ego = solve(build_system(merged.targets), cfg_.lsq.min_targets,
                  cfg_.lsq.max_condition);
    } catch (const InsufficientTargets& e) {
      ++result_.diagnostics.skipped_insufficient;
      result_.diagnostics.events.push_back(stamp_message(t_m, e.what()));
      return;
    } catch (const DegenerateGeometry& e) {
      ++result_.diagnostics.skipped_degenerate;
      result_.diagnostics.events.push_back(stamp_message(t_m, e.what()));
      return;
    }
    result_.ego_velocities.push_back(
        {t_m, ego.v, ego.residual_rms, ego.condition, ego.n_targets});

    const double v_r = forward_speed(ego);
    const double r_v = measurement_variance(ego, cfg_.lsq.r_v_floor);

    // Stage-I refinement and the offset-free acceleration for Stage-II.
    s1_ = update(s1_, v_r, r_v);
    if (!have_prev_epoch_) {
      a_cc_ = 0.0;
      result_.corrected_accel.push_back({t_m, 0.0});
      have_prev_epoch_ = true;
    } else {
      const CorrectedAccel a = corrected_accel(s1_.v, prev_v1_, t_m, prev_epoch_t_,
                                               a_cc_, cfg_.stage1.smoothing_alpha);
      a_cc_ = a.a_cc;
      result_.corrected_accel.push_back(a);
    }
    prev_v1_ = s1_.v;
    prev_epoch_t_ = t_m;

    Stage2Measurement z;
    z.stamp = t_m;
    z.theta_imu = yaw_ahrs_;
    z.v_r = v_r;
    z.r = Eigen::Vector2d(cfg_.stage2.r_theta, r_v).asDiagonal();
    try {
      Stage2Update u = update(s2_, z);
      s2_ = u.state;
      result_.innovations.push_back(u.record);
    } catch (const SingularInnovationCovariance& e) {
      ++result_.diagnostics.skipped_singular;
      result_.diagnostics.events.push_back(stamp_message(t_m, e.what()));
      return;  // prediction kept
    }

    ++result_.diagnostics.accepted_updates;
    last_accepted_t_ = t_m;

    result_.map.register_scan(registration_pose(), merged);
    refresh_trajectory_row();
  }

  void maybe_zupt() {
    if (!cfg_.zupt.enabled) return;
    const double quiet_since =
        std::max({last_accepted_t_, last_loud_accel_t_, start_t_});
    if (t_ - quiet_since < cfg_.zupt.quiet_time) return;
    if (t_ - last_zupt_t_ < cfg_.zupt.period) return;

    s1_ = update(s1_, 0.0, cfg_.zupt.r_v);
    Stage2Measurement z;
    z.stamp = t_;
    z.theta_imu = yaw_ahrs_;
    z.v_r = 0.0;
    z.r = Eigen::Vector2d(cfg_.stage2.r_theta, cfg_.zupt.r_v).asDiagonal();
    try {
      Stage2Update u = update(s2_, z);
      s2_ = u.state;
    } catch (const SingularInnovationCovariance&) {
      return;
    }
    ++result_.diagnostics.zupt_updates;
    last_zupt_t_ = t_;
  }

  Pose registration_pose() const {
    std::optional<Eigen::Quaterniond> roll_pitch;
    if (cfg_.map_use_attitude) {
      // Strip the AHRS yaw; the estimated heading supplies it instead.
      roll_pitch = quat_from_yaw(-yaw_of(attitude_)) * attitude_;
    }
    return pose_to_transform(s2_.x, s2_.y, s2_.theta, roll_pitch);
  }

  void emit_trajectory_row() {
    result_.trajectory.push_back({t_, s2_.x, s2_.y, s2_.v, s2_.theta});
    result_.stage1_trace.push_back({t_, s1_});
  }

  // Radar updates land after the row for t_ was emitted; replace it with the
  // posterior so the exported trajectory carries the best estimate.
  void refresh_trajectory_row() {
    if (!result_.trajectory.empty() && result_.trajectory.back().t == t_) {
      result_.trajectory.back() = {t_, s2_.x, s2_.y, s2_.v, s2_.theta};
      result_.stage1_trace.back() = {t_, s1_};
    }
  }

  PipelineConfig cfg_;
  std::map<int, Extrinsics> rig_by_id_;
  std::mt19937_64 ransac_rng_;

  bool initialized_ = false;
  Timestamp t_ = 0.0;
  Timestamp start_t_ = 0.0;
  Stage1State s1_;
  Stage2State s2_;
  double yaw_ahrs_ = 0.0;
  Eigen::Quaterniond attitude_ = Eigen::Quaterniond::Identity();

  double a_cc_ = 0.0;
  bool have_prev_epoch_ = false;
  double prev_v1_ = 0.0;
  Timestamp prev_epoch_t_ = 0.0;

  Timestamp last_accepted_t_ = 0.0;
  Timestamp last_loud_accel_t_ = 0.0;
  Timestamp last_zupt_t_ = 0.0;

  std::vector<RadarScan> pending_;
  PipelineResult result_;
};

}  // namespace

PipelineResult run_pipeline(const std::vector<DatasetRecord>& events,
                            const std::vector<Extrinsics>& rig,
                            const PipelineConfig& cfg) {
  PipelineRunner runner(rig, cfg);
  return runner.run(events);
}

}  // namespace mrio
