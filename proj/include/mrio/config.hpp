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

/// \file config.hpp
/// Flat sectioned key-value config file shared by the simulator and the
/// estimator, plus the built-in defaults (rig layout, gate, filter noise,
/// and the ~100 m loop scenario). Any key absent from the file keeps its
/// default.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mrio/pipeline.hpp"
#include "mrio/simulator.hpp"

namespace mrio {

/// Minimal INI-style parser: `[section]`, `key = value`, `#`/`;` comments.
/// Repeated keys are preserved in order (used for trajectory segments).
class Config {
 public:
  static Config load(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  double get(const std::string& section, const std::string& key, double def) const;
  bool get_bool(const std::string& section, const std::string& key, bool def) const;
  std::string get_str(const std::string& section, const std::string& key,
                      const std::string& def) const;
  /// Whitespace-separated numeric list; empty when the key is absent.
  std::vector<double> get_values(const std::string& section,
                                 const std::string& key) const;
  /// All (key, value) entries of a section, in file order.
  std::vector<std::pair<std::string, std::string>> section_entries(
      const std::string& section) const;

 private:
  struct Entry {
    std::string section;
    std::string key;
    std::string value;
  };
  std::vector<Entry> entries_;
};

/// Six-radar layout: four planar radars at 90-degree yaw intervals and two
/// tilted 45 degrees up, facing fore and aft.
std::vector<Extrinsics> default_rig();

/// Rounded-rectangle loop of roughly 100 m at speeds up to 1.2 m/s.
std::vector<TrajectorySegment> default_loop_segments();

struct SimSettings {
  TrajectoryProfile profile;
  BiasModel bias = ConstantBias{0.0};
  ImuNoisePreset imu_noise = ImuNoisePreset::px4();
  double half_width = 2.0;
  double wall_point_spacing = 0.5;
  double ceiling_height = 2.5;
  ClutterModel clutter;
  RadarSimConfig radar;
  std::vector<Extrinsics> rig = default_rig();
};

struct RunSettings {
  std::vector<Extrinsics> rig = default_rig();
  PipelineConfig pipeline;
  DatasetLimits limits;
};

SimSettings load_sim_settings(const Config& cfg);
RunSettings load_run_settings(const Config& cfg);

}  // namespace mrio
