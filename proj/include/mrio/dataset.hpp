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

/// \file dataset.hpp
/// JSONL dataset schema and loader. One record per line with a `type` field:
///   {"type":"imu","t":..,"ax":..,"ay":..,"az":..,"gx":..,"gy":..,"gz":..,
///    "qw":..,"qx":..,"qy":..,"qz":..}
///   {"type":"radar","t":..,"radar_id":..,"targets":[{"x":..,"y":..,"z":..,
///    "vd":..},...]}
/// Each stream must be time-ordered in the file (IMU strictly increasing,
/// each radar strictly increasing); the loader merges them into one stream
/// ordered by t with ties broken IMU-before-radar.

#pragma once

#include <string>
#include <variant>
#include <vector>

#include "mrio/geometry.hpp"
#include "mrio/radar_frontend.hpp"

namespace mrio {

struct ImuRecord {
  Timestamp t = 0.0;
  double ax = 0.0, ay = 0.0, az = 0.0;  // m/s^2, gravity-compensated body frame
  double gx = 0.0, gy = 0.0, gz = 0.0;  // rad/s
  double qw = 1.0, qx = 0.0, qy = 0.0, qz = 0.0;  // AHRS orientation
};

using DatasetRecord = std::variant<ImuRecord, RadarScan>;

Timestamp record_time(const DatasetRecord& r);
bool is_imu(const DatasetRecord& r);

struct DatasetLimits {
  double max_doppler = 10.0;  // m/s, Table-class sensor bound
};

/// Parses, validates, and merges the two streams. Throws ParseError or
/// NonMonotonicTime with the offending 1-based line number.
std::vector<DatasetRecord> load_dataset(const std::string& path,
                                        const DatasetLimits& limits = {});

/// Writes records as JSONL in the given order (numbers round-trip exactly).
void write_dataset(const std::string& path, const std::vector<DatasetRecord>& records);

}  // namespace mrio
