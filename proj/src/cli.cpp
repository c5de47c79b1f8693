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

#include "mrio/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mrio/config.hpp"
#include "mrio/dataset.hpp"
#include "mrio/errors.hpp"
#include "mrio/mapping.hpp"
#include "mrio/metrics.hpp"
#include "mrio/pipeline.hpp"
#include "mrio/simulator.hpp"

namespace mrio {

namespace {

std::vector<TrajectoryPoint> truth_to_trajectory(const std::vector<TruthSample>& truth) {
  std::vector<TrajectoryPoint> out;
  out.reserve(truth.size());
  for (const TruthSample& s : truth) out.push_back({s.t, s.x, s.y, 0.0, s.theta});
  return out;
}

void write_points_ply(const std::string& path, const std::vector<Vec3>& points) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << "ply\nformat ascii 1.0\nelement vertex " << points.size()
       << "\nproperty float x\nproperty float y\nproperty float z\nend_header\n";
  char line[96];
  for (const Vec3& p : points) {
    std::snprintf(line, sizeof(line), "%.9g %.9g %.9g\n",
                  static_cast<double>(static_cast<float>(p.x())),
                  static_cast<double>(static_cast<float>(p.y())),
                  static_cast<double>(static_cast<float>(p.z())));
    file << line;
  }
  if (!file) throw IoError("failed writing " + path);
}

int run_simulate(const std::string& config_path, const std::string& out_path,
                 const std::string& gt_path, std::uint64_t seed,
                 const std::string& world_path) {
  const Config cfg = Config::load(config_path);
  const SimSettings sim = load_sim_settings(cfg);

  const std::vector<TruthSample> truth = generate_truth(sim.profile);
  const std::vector<SimImuRecord> imu = synth_imu(truth, sim.bias, sim.imu_noise, seed);
  const TunnelWorld world = build_tunnel_world(truth, sim.half_width,
                                               sim.wall_point_spacing, sim.ceiling_height);
  const std::vector<SimulatedScan> scans =
      synth_radar(truth, world, sim.rig, sim.clutter, sim.radar, seed + 1);

  std::vector<DatasetRecord> records;
  records.reserve(imu.size() + scans.size());
  for (const SimImuRecord& r : imu) {
    const Eigen::Quaterniond q = quat_from_yaw(r.yaw_ahrs);
    ImuRecord rec;
    rec.t = r.t;
    rec.ax = r.accel.x();
    rec.ay = r.accel.y();
    rec.az = r.accel.z();
    rec.gx = r.gyro.x();
    rec.gy = r.gyro.y();
    rec.gz = r.gyro.z();
    rec.qw = q.w();
    rec.qx = q.x();
    rec.qy = q.y();
    rec.qz = q.z();
    records.emplace_back(rec);
  }
  for (const SimulatedScan& s : scans) records.emplace_back(s.scan);
  std::stable_sort(records.begin(), records.end(),
                   [](const DatasetRecord& a, const DatasetRecord& b) {
                     const double ta = record_time(a);
                     const double tb = record_time(b);
                     if (ta != tb) return ta < tb;
                     return is_imu(a) && !is_imu(b);
                   });

  write_dataset(out_path, records);
  write_tum(gt_path, truth_to_trajectory(truth));
  if (!world_path.empty()) write_points_ply(world_path, world.surface_points);

  std::cout << "simulate: " << imu.size() << " imu records, " << scans.size()
            << " radar scans, " << truth.back().t << " s\n";
  return 0;
}

int run_estimator(const std::string& dataset_path, const std::string& config_path,
                  const std::string& traj_path, const std::string& map_path,
                  const std::string& stage1_csv, bool baseline_no_stage1) {
  const Config cfg = Config::load(config_path);
  RunSettings settings = load_run_settings(cfg);
  settings.pipeline.bypass_stage1 = baseline_no_stage1;

  const std::vector<DatasetRecord> records = load_dataset(dataset_path, settings.limits);
  PipelineResult result = run_pipeline(records, settings.rig, settings.pipeline);

  std::vector<TrajectoryPoint> traj;
  traj.reserve(result.trajectory.size());
  for (const TrajectoryEstimate& p : result.trajectory) {
    traj.push_back({p.t, p.x, p.y, 0.0, p.theta});
  }
  write_tum(traj_path, traj);
  export_ply(result.map, map_path);

  if (!stage1_csv.empty()) {
    std::ofstream csv(stage1_csv);
    if (!csv) throw IoError("cannot open " + stage1_csv + " for writing");
    csv << "stamp,v,b,cov_vv,cov_bb\n";
    char line[160];
    for (const Stage1TracePoint& p : result.stage1_trace) {
      std::snprintf(line, sizeof(line), "%.6f,%.9g,%.9g,%.9g,%.9g\n", p.t, p.state.v,
                    p.state.b, p.state.cov(0, 0), p.state.cov(1, 1));
      csv << line;
    }
    if (!csv) throw IoError("failed writing " + stage1_csv);
  }

  const PipelineDiagnostics& d = result.diagnostics;
  std::cout << "run: " << d.imu_samples << " imu samples, " << d.radar_epochs
            << " radar epochs, " << d.accepted_updates << " updates accepted, "
            << d.skipped_insufficient + d.skipped_degenerate + d.skipped_singular
            << " skipped, " << d.zupt_updates << " zero-velocity holds, map "
            << result.map.size() << " points\n";
  return 0;
}

int run_eval(const std::string& est_path, const std::string& gt_path, double max_dt,
             const std::string& report_path) {
  const std::vector<TrajectoryPoint> est = read_tum(est_path);
  const std::vector<TrajectoryPoint> gt = read_tum(gt_path);
  const MetricsReport report = evaluate(est, gt, max_dt);
  if (!report_path.empty()) write_report_json(report_path, report);

  std::printf(
      "eval: 2D RMSE %.4f m | RMSE x %.4f m | RMSE y %.4f m | yaw RMSE %.4f deg | "
      "rel. trans. err %.6f m/m (%.0f m windows) | %d matched poses\n",
      report.rmse_2d, report.rmse_x, report.rmse_y, report.rmse_yaw_deg,
      report.rel_trans_err, report.rel_window_m, report.n_matched_poses);
  return 0;
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
  CLI::App app{"Multi-radar inertial odometry: simulator, estimator, evaluator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string gt_path;
  std::string world_path;
  std::uint64_t seed = 0;
  CLI::App* simulate = app.add_subcommand("simulate", "Generate a synthetic tunnel run");
  simulate->add_option("--config", config_path, "Config file")->required();
  simulate->add_option("--out", out_path, "Output dataset (JSONL)")->required();
  simulate->add_option("--gt", gt_path, "Output ground-truth trajectory (TUM)")
      ->required();
  simulate->add_option("--seed", seed, "RNG seed")->default_val(0);
  simulate->add_option("--world", world_path, "Optional surface-point PLY dump");

  std::string dataset_path;
  std::string traj_path;
  std::string map_path;
  std::string stage1_csv;
  std::string baseline;
  CLI::App* run = app.add_subcommand("run", "Run the estimator over a dataset");
  run->add_option("--dataset", dataset_path, "Input dataset (JSONL)")->required();
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out-traj", traj_path, "Output trajectory (TUM)")->required();
  run->add_option("--out-map", map_path, "Output map (PLY)")->required();
  run->add_option("--stage1-trace", stage1_csv, "Optional Stage-I trace CSV");
  run->add_option("--baseline", baseline, "Ablation baseline")
      ->check(CLI::IsMember({"no-stage1"}));

  std::string est_path;
  double max_dt = 0.05;
  std::string report_path;
  CLI::App* eval = app.add_subcommand("eval", "Compare a trajectory to ground truth");
  eval->add_option("--est", est_path, "Estimated trajectory (TUM)")->required();
  eval->add_option("--gt", gt_path, "Ground-truth trajectory (TUM)")->required();
  eval->add_option("--max-dt", max_dt, "Timestamp matching tolerance, s")
      ->default_val(0.05);
  eval->add_option("--report", report_path, "Output metrics report (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help requested: exit 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (simulate->parsed()) {
      return run_simulate(config_path, out_path, gt_path, seed, world_path);
    }
    if (run->parsed()) {
      return run_estimator(dataset_path, config_path, traj_path, map_path, stage1_csv,
                           baseline == "no-stage1");
    }
    return run_eval(est_path, gt_path, max_dt, report_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace mrio
