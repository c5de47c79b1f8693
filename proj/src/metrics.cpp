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

#include "mrio/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mrio/errors.hpp"

namespace mrio {

std::vector<TrajectoryPoint> read_tum(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open trajectory " + path);

  std::vector<TrajectoryPoint> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    double t, x, y, z, qx, qy, qz, qw;
    if (!(ss >> t >> x >> y >> z >> qx >> qy >> qz >> qw)) {
      throw ParseError(line_no, "expected 'stamp x y z qx qy qz qw'");
    }
    TrajectoryPoint p;
    p.t = t;
    p.x = x;
    p.y = y;
    p.z = z;
    p.yaw = yaw_of(Eigen::Quaterniond(qw, qx, qy, qz));
    out.push_back(p);
  }
  return out;
}

void write_tum(const std::string& path, const std::vector<TrajectoryPoint>& traj) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open " + path + " for writing");
  char line[200];
  for (const TrajectoryPoint& p : traj) {
    const Eigen::Quaterniond q = quat_from_yaw(p.yaw);
    std::snprintf(line, sizeof(line), "%.6f %.9f %.9f %.9f %.9f %.9f %.9f %.9f\n", p.t,
                  p.x, p.y, 0.0, q.x(), q.y(), q.z(), q.w());
    file << line;
  }
  if (!file) throw IoError("failed writing " + path);
}

namespace {

struct MatchedPair {
  TrajectoryPoint est;
  TrajectoryPoint gt;
};

// For each estimated pose, the nearest ground-truth pose within max_dt.
std::vector<MatchedPair> match_by_time(const std::vector<TrajectoryPoint>& est,
                                       const std::vector<TrajectoryPoint>& gt,
                                       double max_dt) {
  std::vector<MatchedPair> pairs;
  std::size_t j = 0;
  for (const TrajectoryPoint& e : est) {
    while (j + 1 < gt.size() &&
           std::abs(gt[j + 1].t - e.t) <= std::abs(gt[j].t - e.t)) {
      ++j;
    }
    if (j < gt.size() && std::abs(gt[j].t - e.t) <= max_dt) {
      pairs.push_back({e, gt[j]});
    }
  }
  return pairs;
}

}  // namespace

MetricsReport evaluate(const std::vector<TrajectoryPoint>& est,
                       const std::vector<TrajectoryPoint>& gt, double max_dt) {
  const std::vector<MatchedPair> pairs = match_by_time(est, gt, max_dt);
  if (pairs.size() < 2) {
    throw InsufficientOverlap("only " + std::to_string(pairs.size()) +
                              " matchable pose pairs");
  }

  double sum_sq_2d = 0.0, sum_sq_x = 0.0, sum_sq_y = 0.0, sum_sq_yaw = 0.0;
  for (const MatchedPair& p : pairs) {
    const double dx = p.est.x - p.gt.x;
    const double dy = p.est.y - p.gt.y;
    const double dyaw = wrap_angle(p.est.yaw - p.gt.yaw);
    sum_sq_2d += dx * dx + dy * dy;
    sum_sq_x += dx * dx;
    sum_sq_y += dy * dy;
    sum_sq_yaw += dyaw * dyaw;
  }
  const double n = static_cast<double>(pairs.size());

  MetricsReport report;
  report.rmse_2d = std::sqrt(sum_sq_2d / n);
  report.rmse_x = std::sqrt(sum_sq_x / n);
  report.rmse_y = std::sqrt(sum_sq_y / n);
  report.rmse_yaw_deg = std::sqrt(sum_sq_yaw / n) * 180.0 / M_PI;
  report.n_matched_poses = static_cast<int>(pairs.size());

  // Relative translation error over fixed-length ground-truth path windows.
  double window_len = 0.0;
  std::size_t window_start = 0;
  double err_sum = 0.0;
  int windows = 0;
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    window_len += std::hypot(pairs[i].gt.x - pairs[i - 1].gt.x,
                             pairs[i].gt.y - pairs[i - 1].gt.y);
    if (window_len >= report.rel_window_m) {
      const auto& a = pairs[window_start];
      const auto& b = pairs[i];
      const double drift_x = (b.est.x - a.est.x) - (b.gt.x - a.gt.x);
      const double drift_y = (b.est.y - a.est.y) - (b.gt.y - a.gt.y);
      err_sum += std::hypot(drift_x, drift_y) / window_len;
      ++windows;
      window_start = i;
      window_len = 0.0;
    }
  }
  report.rel_trans_err = windows > 0 ? err_sum / windows : 0.0;
  return report;
}

void write_report_json(const std::string& path, const MetricsReport& report) {
  nlohmann::json j{{"rmse_2d", report.rmse_2d},
                   {"rmse_x", report.rmse_x},
                   {"rmse_y", report.rmse_y},
                   {"rmse_yaw_deg", report.rmse_yaw_deg},
                   {"rel_trans_err", report.rel_trans_err},
                   {"rel_window_m", report.rel_window_m},
                   {"n_matched_poses", report.n_matched_poses}};
  std::ofstream file(path);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << j.dump(2) << '\n';
  if (!file) throw IoError("failed writing " + path);
}

MetricsReport read_report_json(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open report " + path);
  nlohmann::json j;
  file >> j;
  MetricsReport report;
  report.rmse_2d = j.at("rmse_2d").get<double>();
  report.rmse_x = j.at("rmse_x").get<double>();
  report.rmse_y = j.at("rmse_y").get<double>();
  report.rmse_yaw_deg = j.at("rmse_yaw_deg").get<double>();
  report.rel_trans_err = j.at("rel_trans_err").get<double>();
  report.rel_window_m = j.at("rel_window_m").get<double>();
  report.n_matched_poses = j.at("n_matched_poses").get<int>();
  return report;
}

}  // namespace mrio
