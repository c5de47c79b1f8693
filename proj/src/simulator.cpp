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

#include "mrio/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "mrio/errors.hpp"

namespace mrio {

namespace {

constexpr double kGravity = 9.80665;  // m/s^2
constexpr double kDegToRad = M_PI / 180.0;

}  // namespace

std::vector<TruthSample> generate_truth(const TrajectoryProfile& profile) {
  const double dt = 1.0 / profile.imu_rate;

  std::vector<TruthSample> out;
  TruthSample s;
  s.t = 0.0;
  s.x = profile.start_x;
  s.y = profile.start_y;
  s.v = profile.start_speed;
  s.theta = wrap_angle(profile.start_heading);

  std::size_t step = 0;
  for (const TrajectorySegment& seg : profile.segments) {
    const auto n_steps = static_cast<std::size_t>(std::llround(seg.duration * profile.imu_rate));
    for (std::size_t i = 0; i < n_steps; ++i, ++step) {
      s.accel = seg.accel;
      s.yaw_rate = seg.yaw_rate;
      s.slope_deg = seg.slope_deg;
      out.push_back(s);

      TruthSample next = s;
      next.t = static_cast<double>(step + 1) * dt;
      next.x = s.x + s.v * std::cos(s.theta) * dt;
      next.y = s.y + s.v * std::sin(s.theta) * dt;
      next.v = s.v + s.accel * dt;
      next.theta = wrap_angle(s.theta + s.yaw_rate * dt);
      s = next;
    }
  }
  // Terminal sample carries the last segment's commands (zero for empty profiles).
  out.push_back(s);
  return out;
}

ImuNoisePreset ImuNoisePreset::px4() {
  ImuNoisePreset p;
  p.accel_noise_density = 100e-6 * kGravity;        // 100 ug/sqrt(Hz)
  p.gyro_noise_density = 0.004 * kDegToRad;          // 4 mdps/sqrt(Hz)
  p.yaw_drift_rate = 1e-4;                           // unspecified on the datasheet
  return p;
}

ImuNoisePreset ImuNoisePreset::vectornav() {
  ImuNoisePreset p;
  p.accel_noise_density = 0.14e-3 * kGravity;        // 0.14 mg/sqrt(Hz)
  p.gyro_noise_density = 0.0035 * kDegToRad;         // 0.0035 deg/sqrt(s)
  p.yaw_drift_rate = 3.5 * kDegToRad / 3600.0;       // 3.5 deg/hr bias stability
  return p;
}

ImuNoisePreset ImuNoisePreset::ideal() { return ImuNoisePreset{}; }

std::vector<SimImuRecord> synth_imu(const std::vector<TruthSample>& truth,
                                    const BiasModel& bias, const ImuNoisePreset& preset,
                                    std::uint64_t seed) {
  std::vector<SimImuRecord> out;
  if (truth.size() < 2) return out;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const double dt = truth[1].t - truth[0].t;
  const double rate = 1.0 / dt;
  const double sigma_a = preset.accel_noise_density * std::sqrt(rate);
  const double sigma_g = preset.gyro_noise_density * std::sqrt(rate);
  const double sigma_yaw = preset.gyro_noise_density * std::sqrt(rate);

  // Random-walk state, if that model is selected.
  double walk = 0.0;
  if (const auto* rw = std::get_if<RandomWalkBias>(&bias)) walk = rw->b0;
  std::normal_distribution<double> walk_step(0.0, 1.0);

  out.reserve(truth.size() - 1);
  for (std::size_t k = 1; k < truth.size(); ++k) {
    const TruthSample& prev = truth[k - 1];  // commands over [t_{k-1}, t_k]
    const TruthSample& now = truth[k];

    double b;
    if (const auto* c = std::get_if<ConstantBias>(&bias)) {
      b = c->c;
    } else if (const auto* lin = std::get_if<LinearDrift>(&bias)) {
      b = lin->b0 + lin->slope * now.t;
    } else {
      walk += std::sqrt(std::get<RandomWalkBias>(bias).psd * dt) * walk_step(rng);
      b = walk;
    }

    SimImuRecord rec;
    rec.t = now.t;
    const double gravity_leak = kGravity * std::sin(prev.slope_deg * kDegToRad);
    rec.accel.x() = prev.accel + gravity_leak + b + sigma_a * gauss(rng);
    rec.accel.y() = prev.v * prev.yaw_rate + sigma_a * gauss(rng);  // centripetal
    rec.accel.z() = sigma_a * gauss(rng);
    rec.gyro.x() = sigma_g * gauss(rng);
    rec.gyro.y() = sigma_g * gauss(rng);
    rec.gyro.z() = prev.yaw_rate + sigma_g * gauss(rng);
    rec.yaw_ahrs =
        wrap_angle(now.theta + preset.yaw_drift_rate * now.t + sigma_yaw * gauss(rng));
    out.push_back(rec);
  }
  return out;
}

TunnelWorld build_tunnel_world(const std::vector<TruthSample>& truth, double half_width,
                               double wall_point_spacing, double ceiling_height) {
  TunnelWorld world;
  world.half_width = half_width;
  world.wall_point_spacing = wall_point_spacing;
  world.ceiling_height = ceiling_height;
  if (truth.size() < 2) return world;

  // Resample the path every wall_point_spacing of arc length.
  double carried = 0.0;
  world.centerline.push_back({truth.front().x, truth.front().y, 0.0});
  std::vector<double> headings{truth.front().theta};
  for (std::size_t k = 1; k < truth.size(); ++k) {
    const double dx = truth[k].x - truth[k - 1].x;
    const double dy = truth[k].y - truth[k - 1].y;
    carried += std::hypot(dx, dy);
    if (carried >= wall_point_spacing) {
      world.centerline.push_back({truth[k].x, truth[k].y, 0.0});
      headings.push_back(truth[k].theta);
      carried = 0.0;
    }
  }

  const double h = ceiling_height;
  const std::array<double, 3> wall_heights{0.25 * h, 0.55 * h, 0.85 * h};
  const std::array<double, 3> ceiling_offsets{-0.5 * half_width, 0.0, 0.5 * half_width};

  for (std::size_t i = 0; i < world.centerline.size(); ++i) {
    const Vec3& c = world.centerline[i];
    const double th = headings[i];
    const Vec3 normal(-std::sin(th), std::cos(th), 0.0);
    for (double z : wall_heights) {
      world.surface_points.push_back(c + half_width * normal + Vec3(0, 0, z));
      world.surface_points.push_back(c - half_width * normal + Vec3(0, 0, z));
    }
    for (double off : ceiling_offsets) {
      world.surface_points.push_back(c + off * normal + Vec3(0, 0, h));
    }
  }
  return world;
}

TruthSample interpolate_truth(const std::vector<TruthSample>& truth, Timestamp t) {
  if (truth.empty()) throw Error("interpolate_truth: empty trace");
  if (t <= truth.front().t) return truth.front();
  if (t >= truth.back().t) return truth.back();

  const auto it = std::lower_bound(
      truth.begin(), truth.end(), t,
      [](const TruthSample& s, Timestamp value) { return s.t < value; });
  const TruthSample& hi = *it;
  if (hi.t == t) return hi;
  const TruthSample& lo = *(it - 1);
  const double w = (t - lo.t) / (hi.t - lo.t);

  TruthSample out = lo;
  out.t = t;
  out.x = lo.x + w * (hi.x - lo.x);
  out.y = lo.y + w * (hi.y - lo.y);
  out.v = lo.v + w * (hi.v - lo.v);
  out.theta = wrap_angle(lo.theta + w * wrap_angle(hi.theta - lo.theta));
  return out;
}

std::vector<SimulatedScan> synth_radar(const std::vector<TruthSample>& truth,
                                       const TunnelWorld& world,
                                       const std::vector<Extrinsics>& rig,
                                       const ClutterModel& clutter,
                                       const RadarSimConfig& cfg, std::uint64_t seed) {
  std::vector<SimulatedScan> out;
  if (truth.size() < 2 || rig.empty()) return out;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const double t_end = truth.back().t;
  const double fov = cfg.fov_half_angle_deg * kDegToRad;

  for (std::size_t m = 1;; ++m) {
    const double t_m = static_cast<double>(m) / cfg.radar_rate;
    if (t_m > t_end) break;

    const TruthSample at = interpolate_truth(truth, t_m);
    const Pose body_pose = yaw_pose(at.theta, Vec3(at.x, at.y, 0.0));
    const Vec3 v_body(at.v, 0.0, 0.0);  // non-holonomic: forward axis only
    const bool moving = std::abs(at.v) >= cfg.static_speed_threshold;

    for (const Extrinsics& radar : rig) {
      SimulatedScan sim;
      sim.scan.stamp = t_m;
      sim.scan.radar_id = radar.radar_id;

      const Pose sensor_pose = compose(body_pose, radar.mount);
      const Pose world_to_sensor = inverse(sensor_pose);
      const Vec3 v_sensor = rotate_vector(inverse(radar.mount), v_body);

      if (moving) {
        for (const Vec3& w : world.surface_points) {
          const Vec3 p = transform_point(world_to_sensor, w);
          const double r = p.norm();
          if (r < 1e-3 || r > cfg.max_range) continue;
          // 60x60 cone about the +x boresight: azimuth and elevation bounds.
          const double azimuth = std::atan2(p.y(), p.x());
          const double elevation = std::asin(std::clamp(p.z() / r, -1.0, 1.0));
          if (std::abs(azimuth) > fov || std::abs(elevation) > fov) continue;

          RadarTarget target;
          target.position = p;
          const Vec3 u = p / r;
          target.doppler = -u.dot(v_sensor) + cfg.doppler_sigma * gauss(rng);
          sim.scan.targets.push_back(target);
        }
      }
      sim.clutter_begin = sim.scan.targets.size();

      std::poisson_distribution<int> burst(clutter.rate);
      const int n_clutter = clutter.rate > 0.0 ? burst(rng) : 0;
      for (int i = 0; i < n_clutter; ++i) {
        const double r =
            clutter.radius_min + (clutter.radius_max - clutter.radius_min) * unit(rng);
        const double azimuth = fov * uniform(rng);
        const double elevation = fov * uniform(rng);
        RadarTarget target;
        target.position = r * Vec3(std::cos(elevation) * std::cos(azimuth),
                                   std::cos(elevation) * std::sin(azimuth),
                                   std::sin(elevation));
        target.doppler = clutter.doppler_spread * uniform(rng);
        sim.scan.targets.push_back(target);
      }
      out.push_back(std::move(sim));
    }
  }
  return out;
}

}  // namespace mrio
