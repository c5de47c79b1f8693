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

#include "mrio/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mrio/errors.hpp"

namespace mrio {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

}  // namespace

Config Config::load(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open config " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return from_string(buffer.str());
}

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream stream(text);
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError(line_no, "unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    Entry e;
    e.section = section;
    e.key = trim(t.substr(0, eq));
    e.value = trim(t.substr(eq + 1));
    if (e.key.empty()) throw ParseError(line_no, "empty key");
    cfg.entries_.push_back(std::move(e));
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) {
    return e.section == section && e.key == key;
  });
}

std::string Config::get_str(const std::string& section, const std::string& key,
                            const std::string& def) const {
  // Last occurrence wins, so later lines override earlier ones.
  std::string out = def;
  for (const Entry& e : entries_) {
    if (e.section == section && e.key == key) out = e.value;
  }
  return out;
}

double Config::get(const std::string& section, const std::string& key,
                   double def) const {
  const std::string raw = get_str(section, key, "");
  if (raw.empty()) return def;
  try {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    if (trim(raw.substr(pos)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw Error("config value [" + section + "] " + key + " = '" + raw +
              "' is not a number");
}

bool Config::get_bool(const std::string& section, const std::string& key,
                      bool def) const {
  const std::string raw = get_str(section, key, "");
  if (raw.empty()) return def;
  if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
  if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
  throw Error("config value [" + section + "] " + key + " = '" + raw +
              "' is not a boolean");
}

std::vector<double> Config::get_values(const std::string& section,
                                       const std::string& key) const {
  const std::string raw = get_str(section, key, "");
  std::vector<double> out;
  if (raw.empty()) return out;
  std::istringstream ss(raw);
  double v;
  while (ss >> v) out.push_back(v);
  if (!ss.eof()) {
    throw Error("config value [" + section + "] " + key + " = '" + raw +
                "' is not a numeric list");
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> Config::section_entries(
    const std::string& section) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Entry& e : entries_) {
    if (e.section == section) out.emplace_back(e.key, e.value);
  }
  return out;
}

std::vector<Extrinsics> default_rig() {
  // Co-located mounts: rotation-only, matching the no-lever-arm Doppler model.
  std::vector<Extrinsics> rig;
  rig.push_back({1, pose_from_ypr(0.0, 0.0, 0.0)});
  rig.push_back({2, pose_from_ypr(M_PI / 2.0, 0.0, 0.0)});
  rig.push_back({3, pose_from_ypr(M_PI, 0.0, 0.0)});
  rig.push_back({4, pose_from_ypr(-M_PI / 2.0, 0.0, 0.0)});
  rig.push_back({5, pose_from_ypr(0.0, -M_PI / 4.0, 0.0)});   // fore, 45 deg up
  rig.push_back({6, pose_from_ypr(M_PI, -M_PI / 4.0, 0.0)});  // aft, 45 deg up
  return rig;
}

std::vector<TrajectorySegment> default_loop_segments() {
  const double quarter_turn = (M_PI / 2.0) / 0.6;  // s at 0.6 rad/s
  std::vector<TrajectorySegment> segs;
  segs.push_back({2.4, 0.5, 0.0, 0.0});  // spin-up to 1.2 m/s
  segs.push_back({20.0, 0.0, 0.0, 0.0});
  segs.push_back({quarter_turn, 0.0, 0.6, 0.0});
  segs.push_back({12.0, 0.0, 0.0, 0.0});
  segs.push_back({quarter_turn, 0.0, 0.6, 0.0});
  segs.push_back({20.0, 0.0, 0.0, 0.0});
  segs.push_back({quarter_turn, 0.0, 0.6, 0.0});
  segs.push_back({12.0, 0.0, 0.0, 0.0});
  segs.push_back({quarter_turn, 0.0, 0.6, 0.0});
  segs.push_back({8.0, 0.0, 0.0, 0.0});
  return segs;
}

namespace {

std::vector<Extrinsics> parse_rig(const Config& cfg) {
  std::vector<Extrinsics> rig;
  for (const auto& [key, value] : cfg.section_entries("rig")) {
    if (key.rfind("radar", 0) != 0) continue;
    const int id = std::stoi(key.substr(5));
    std::istringstream ss(value);
    double x, y, z, yaw_deg, pitch_deg, roll_deg;
    if (!(ss >> x >> y >> z >> yaw_deg >> pitch_deg >> roll_deg)) {
      throw Error("rig entry '" + key + "' must be 'x y z yaw_deg pitch_deg roll_deg'");
    }
    Extrinsics e;
    e.radar_id = id;
    e.mount = pose_from_ypr(yaw_deg * kDegToRad, pitch_deg * kDegToRad,
                            roll_deg * kDegToRad, Vec3(x, y, z));
    rig.push_back(e);
  }
  for (std::size_t i = 0; i < rig.size(); ++i) {
    for (std::size_t j = i + 1; j < rig.size(); ++j) {
      if (rig[i].radar_id == rig[j].radar_id) {
        throw Error("duplicate rig radar_id " + std::to_string(rig[i].radar_id));
      }
    }
  }
  return rig.empty() ? default_rig() : rig;
}

BiasModel parse_bias(const Config& cfg) {
  const std::string spec = cfg.get_str("scenario", "bias", "none");
  std::istringstream ss(spec);
  std::string kind;
  ss >> kind;
  if (kind == "none") return ConstantBias{0.0};
  if (kind == "constant") {
    double c = 0.0;
    ss >> c;
    return ConstantBias{c};
  }
  if (kind == "linear") {
    double b0 = 0.0, slope = 0.0;
    ss >> b0 >> slope;
    return LinearDrift{b0, slope};
  }
  if (kind == "random_walk") {
    double b0 = 0.0, psd = 0.0;
    ss >> b0 >> psd;
    return RandomWalkBias{b0, psd};
  }
  throw Error("unknown bias model '" + spec + "'");
}

ImuNoisePreset parse_imu_noise(const Config& cfg) {
  const std::string name = cfg.get_str("scenario", "imu_preset", "px4");
  ImuNoisePreset preset;
  if (name == "px4") {
    preset = ImuNoisePreset::px4();
  } else if (name == "vectornav") {
    preset = ImuNoisePreset::vectornav();
  } else if (name == "ideal") {
    preset = ImuNoisePreset::ideal();
  } else {
    throw Error("unknown imu_preset '" + name + "'");
  }
  preset.accel_noise_density =
      cfg.get("scenario", "accel_noise_density", preset.accel_noise_density);
  preset.gyro_noise_density =
      cfg.get("scenario", "gyro_noise_density", preset.gyro_noise_density);
  preset.yaw_drift_rate = cfg.get("scenario", "yaw_drift_rate", preset.yaw_drift_rate);
  return preset;
}

}  // namespace

SimSettings load_sim_settings(const Config& cfg) {
  SimSettings s;
  s.rig = parse_rig(cfg);

  for (const auto& [key, value] : cfg.section_entries("scenario")) {
    if (key != "segment") continue;
    std::istringstream ss(value);
    TrajectorySegment seg;
    if (!(ss >> seg.duration >> seg.accel >> seg.yaw_rate)) {
      throw Error("segment must be 'duration accel yaw_rate [slope_deg]'");
    }
    ss >> seg.slope_deg;  // optional
    s.profile.segments.push_back(seg);
  }
  if (s.profile.segments.empty()) s.profile.segments = default_loop_segments();

  s.profile.imu_rate = cfg.get("scenario", "imu_rate", 200.0);
  s.profile.radar_rate = cfg.get("scenario", "radar_rate", 10.0);
  s.profile.start_x = cfg.get("scenario", "start_x", 0.0);
  s.profile.start_y = cfg.get("scenario", "start_y", 0.0);
  s.profile.start_heading = cfg.get("scenario", "start_heading", 0.0);
  s.profile.start_speed = cfg.get("scenario", "start_speed", 0.0);
  if (s.profile.imu_rate <= 0.0 || s.profile.radar_rate <= 0.0 ||
      s.profile.imu_rate < s.profile.radar_rate) {
    throw Error("scenario rates must satisfy imu_rate >= radar_rate > 0");
  }

  s.bias = parse_bias(cfg);
  s.imu_noise = parse_imu_noise(cfg);

  s.half_width = cfg.get("scenario", "half_width", 2.0);
  s.wall_point_spacing = cfg.get("scenario", "wall_point_spacing", 0.5);
  s.ceiling_height = cfg.get("scenario", "ceiling_height", 2.5);

  s.clutter.rate = cfg.get("scenario", "clutter_rate", 5.0);
  const std::vector<double> radius = cfg.get_values("scenario", "clutter_radius");
  if (radius.size() == 2) {
    s.clutter.radius_min = radius[0];
    s.clutter.radius_max = radius[1];
  } else if (!radius.empty()) {
    throw Error("clutter_radius must be 'min max'");
  }
  s.clutter.doppler_spread = cfg.get("scenario", "clutter_doppler_spread", 2.0);

  s.radar.radar_rate = s.profile.radar_rate;
  s.radar.max_range = cfg.get("scenario", "max_range", 8.0);
  s.radar.fov_half_angle_deg = cfg.get("scenario", "fov_half_angle_deg", 30.0);
  s.radar.doppler_sigma = cfg.get("scenario", "doppler_sigma", 0.03);
  s.radar.static_speed_threshold =
      cfg.get("scenario", "static_speed_threshold", 0.05);
  return s;
}

RunSettings load_run_settings(const Config& cfg) {
  RunSettings s;
  s.rig = parse_rig(cfg);

  s.pipeline.gate.r_inner = cfg.get("gate", "r_inner", 0.5);
  s.pipeline.gate.r_outer = cfg.get("gate", "r_outer", 8.0);
  if (!(s.pipeline.gate.r_inner >= 0.0 &&
        s.pipeline.gate.r_inner < s.pipeline.gate.r_outer)) {
    throw Error("gate must satisfy 0 <= r_inner < r_outer");
  }

  const std::string rejection =
      cfg.get_str("frontend", "outlier_rejection", "range_gate");
  if (rejection == "range_gate") {
    s.pipeline.outlier = OutlierRejection::kRangeGate;
  } else if (rejection == "ransac") {
    s.pipeline.outlier = OutlierRejection::kRansac;
  } else {
    throw Error("unknown outlier_rejection '" + rejection + "'");
  }
  s.pipeline.ransac.iterations =
      static_cast<int>(cfg.get("frontend", "ransac_iterations", 100));
  s.pipeline.ransac.inlier_threshold = cfg.get("frontend", "ransac_threshold", 0.1);
  s.pipeline.ransac_seed =
      static_cast<std::uint64_t>(cfg.get("frontend", "ransac_seed", 0));
  s.limits.max_doppler = cfg.get("frontend", "max_doppler", 10.0);

  s.pipeline.lsq.min_targets = static_cast<int>(cfg.get("lsq", "min_targets", 3));
  s.pipeline.lsq.max_condition = cfg.get("lsq", "max_condition", 1e4);
  s.pipeline.lsq.r_v_floor = cfg.get("lsq", "r_v_floor", 9e-4);

  s.pipeline.stage1.q_v = cfg.get("stage1", "q_v", s.pipeline.stage1.q_v);
  s.pipeline.stage1.q_b = cfg.get("stage1", "q_b", s.pipeline.stage1.q_b);
  s.pipeline.stage1.r_v = cfg.get("stage1", "r_v", s.pipeline.stage1.r_v);
  s.pipeline.stage1.smoothing_alpha =
      cfg.get("stage1", "smoothing_alpha", s.pipeline.stage1.smoothing_alpha);
  if (s.pipeline.stage1.smoothing_alpha <= 0.0 ||
      s.pipeline.stage1.smoothing_alpha > 1.0) {
    throw Error("stage1 smoothing_alpha must be in (0, 1]");
  }
  s.pipeline.stage1.init_var_v =
      cfg.get("stage1", "init_var_v", s.pipeline.stage1.init_var_v);
  s.pipeline.stage1.init_var_b =
      cfg.get("stage1", "init_var_b", s.pipeline.stage1.init_var_b);

  Stage2Config& s2 = s.pipeline.stage2;
  s2.q_diag(0) = cfg.get("stage2", "q_x", s2.q_diag(0));
  s2.q_diag(1) = cfg.get("stage2", "q_y", s2.q_diag(1));
  s2.q_diag(2) = cfg.get("stage2", "q_v", s2.q_diag(2));
  s2.q_diag(3) = cfg.get("stage2", "q_theta", s2.q_diag(3));
  s2.r_theta = cfg.get("stage2", "r_theta", s2.r_theta);
  s2.init_cov_diag(0) = cfg.get("stage2", "init_var_x", s2.init_cov_diag(0));
  s2.init_cov_diag(1) = cfg.get("stage2", "init_var_y", s2.init_cov_diag(1));
  s2.init_cov_diag(2) = cfg.get("stage2", "init_var_v", s2.init_cov_diag(2));
  s2.init_cov_diag(3) = cfg.get("stage2", "init_var_theta", s2.init_cov_diag(3));

  s.pipeline.zupt.enabled = cfg.get_bool("zupt", "enabled", true);
  s.pipeline.zupt.accel_threshold =
      cfg.get("zupt", "accel_threshold", s.pipeline.zupt.accel_threshold);
  s.pipeline.zupt.quiet_time = cfg.get("zupt", "quiet_time", s.pipeline.zupt.quiet_time);
  s.pipeline.zupt.r_v = cfg.get("zupt", "r_v", s.pipeline.zupt.r_v);
  s.pipeline.zupt.period = cfg.get("zupt", "period", s.pipeline.zupt.period);

  s.pipeline.map_voxel_size = cfg.get("map", "voxel_size", 0.10);
  s.pipeline.map_use_attitude = cfg.get_bool("map", "use_attitude", true);
  return s;
}

}  // namespace mrio
