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

#include "mrio/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "mrio/errors.hpp"

namespace mrio {

using nlohmann::json;

Timestamp record_time(const DatasetRecord& r) {
  if (const auto* imu = std::get_if<ImuRecord>(&r)) return imu->t;
  return std::get<RadarScan>(r).stamp;
}

bool is_imu(const DatasetRecord& r) { return std::holds_alternative<ImuRecord>(r); }

namespace {

double require_number(const json& j, const char* key, std::size_t line) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw ParseError(line, std::string("missing or non-numeric field '") + key + "'");
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) {
    throw ParseError(line, std::string("non-finite field '") + key + "'");
  }
  return v;
}

ImuRecord parse_imu(const json& j, std::size_t line) {
  ImuRecord rec;
  rec.t = require_number(j, "t", line);
  rec.ax = require_number(j, "ax", line);
  rec.ay = require_number(j, "ay", line);
  rec.az = require_number(j, "az", line);
  rec.gx = require_number(j, "gx", line);
  rec.gy = require_number(j, "gy", line);
  rec.gz = require_number(j, "gz", line);
  rec.qw = require_number(j, "qw", line);
  rec.qx = require_number(j, "qx", line);
  rec.qy = require_number(j, "qy", line);
  rec.qz = require_number(j, "qz", line);
  const double norm =
      std::sqrt(rec.qw * rec.qw + rec.qx * rec.qx + rec.qy * rec.qy + rec.qz * rec.qz);
  if (std::abs(norm - 1.0) > 1e-6) {
    throw ParseError(line, "orientation quaternion is not unit-norm");
  }
  return rec;
}

RadarScan parse_radar(const json& j, std::size_t line, const DatasetLimits& limits) {
  RadarScan scan;
  scan.stamp = require_number(j, "t", line);
  const auto id_it = j.find("radar_id");
  if (id_it == j.end() || !id_it->is_number_integer()) {
    throw ParseError(line, "missing or non-integer field 'radar_id'");
  }
  scan.radar_id = id_it->get<int>();

  const auto targets_it = j.find("targets");
  if (targets_it == j.end() || !targets_it->is_array()) {
    throw ParseError(line, "missing or non-array field 'targets'");
  }
  scan.targets.reserve(targets_it->size());
  for (const json& tj : *targets_it) {
    RadarTarget t;
    t.position.x() = require_number(tj, "x", line);
    t.position.y() = require_number(tj, "y", line);
    t.position.z() = require_number(tj, "z", line);
    t.doppler = require_number(tj, "vd", line);
    if (t.position.norm() <= 0.0) {
      throw ParseError(line, "zero-range radar return");
    }
    if (std::abs(t.doppler) > limits.max_doppler) {
      throw ParseError(line, "doppler " + std::to_string(t.doppler) +
                                 " exceeds bound " + std::to_string(limits.max_doppler));
    }
    scan.targets.push_back(t);
  }
  return scan;
}

}  // namespace

std::vector<DatasetRecord> load_dataset(const std::string& path,
                                        const DatasetLimits& limits) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open dataset " + path);

  std::vector<DatasetRecord> records;
  std::string line_text;
  std::size_t line_no = 0;
  double last_imu_t = -1.0;
  std::map<int, double> last_radar_t;

  while (std::getline(file, line_text)) {
    ++line_no;
    if (line_text.empty()) continue;

    json j;
    try {
      j = json::parse(line_text);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, e.what());
    }
    if (!j.is_object()) throw ParseError(line_no, "record is not a JSON object");
    const auto type_it = j.find("type");
    if (type_it == j.end() || !type_it->is_string()) {
      throw ParseError(line_no, "missing 'type' field");
    }
    const std::string type = type_it->get<std::string>();

    if (type == "imu") {
      ImuRecord rec = parse_imu(j, line_no);
      if (rec.t < 0.0) throw ParseError(line_no, "negative timestamp");
      if (rec.t <= last_imu_t) {
        throw NonMonotonicTime("line " + std::to_string(line_no) +
                                   ": imu stream timestamps must strictly increase",
                               line_no);
      }
      last_imu_t = rec.t;
      records.emplace_back(rec);
    } else if (type == "radar") {
      RadarScan scan = parse_radar(j, line_no, limits);
      if (scan.stamp < 0.0) throw ParseError(line_no, "negative timestamp");
      const auto it = last_radar_t.find(scan.radar_id);
      if (it != last_radar_t.end() && scan.stamp <= it->second) {
        throw NonMonotonicTime("line " + std::to_string(line_no) + ": radar " +
                                   std::to_string(scan.radar_id) +
                                   " timestamps must strictly increase",
                               line_no);
      }
      last_radar_t[scan.radar_id] = scan.stamp;
      records.emplace_back(std::move(scan));
    } else {
      throw ParseError(line_no, "unknown record type '" + type + "'");
    }
  }

  // Cross-stream interleave is re-sorted; ties put IMU before radar.
  std::stable_sort(records.begin(), records.end(),
                   [](const DatasetRecord& a, const DatasetRecord& b) {
                     const double ta = record_time(a);
                     const double tb = record_time(b);
                     if (ta != tb) return ta < tb;
                     return is_imu(a) && !is_imu(b);
                   });
  return records;
}

void write_dataset(const std::string& path, const std::vector<DatasetRecord>& records) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot open " + path + " for writing");

  for (const DatasetRecord& r : records) {
    json j;
    if (const auto* imu = std::get_if<ImuRecord>(&r)) {
      j = json{{"type", "imu"}, {"t", imu->t},  {"ax", imu->ax}, {"ay", imu->ay},
               {"az", imu->az}, {"gx", imu->gx}, {"gy", imu->gy}, {"gz", imu->gz},
               {"qw", imu->qw}, {"qx", imu->qx}, {"qy", imu->qy}, {"qz", imu->qz}};
    } else {
      const RadarScan& scan = std::get<RadarScan>(r);
      json targets = json::array();
      for (const RadarTarget& t : scan.targets) {
        targets.push_back({{"x", t.position.x()},
                           {"y", t.position.y()},
                           {"z", t.position.z()},
                           {"vd", t.doppler}});
      }
      j = json{{"type", "radar"},
               {"t", scan.stamp},
               {"radar_id", scan.radar_id},
               {"targets", std::move(targets)}};
    }
    file << j.dump() << '\n';
  }
  if (!file) throw IoError("failed writing " + path);
}

}  // namespace mrio
