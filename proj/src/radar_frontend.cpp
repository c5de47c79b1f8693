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

#include "mrio/radar_frontend.hpp"

#include <algorithm>

#include "mrio/errors.hpp"

namespace mrio {

RadarScan range_gate(const RadarScan& scan, const GateConfig& cfg) {
  RadarScan out;
  out.stamp = scan.stamp;
  out.radar_id = scan.radar_id;
  out.targets.reserve(scan.targets.size());
  for (const RadarTarget& t : scan.targets) {
    const double r = t.position.norm();
    if (r >= cfg.r_inner && r <= cfg.r_outer) {
      out.targets.push_back(t);
    }
  }
  return out;
}

std::vector<BodyTarget> to_body(const RadarScan& scan, const Extrinsics& ext) {
  if (scan.radar_id != ext.radar_id) {
    throw MismatchedRadarId(scan.radar_id, ext.radar_id);
  }
  std::vector<BodyTarget> out;
  out.reserve(scan.targets.size());
  for (const RadarTarget& t : scan.targets) {
    BodyTarget b;
    b.position = transform_point(ext.mount, t.position);
    b.los = rotate_vector(ext.mount, t.position.normalized());
    b.doppler = t.doppler;
    b.radar_id = scan.radar_id;
    out.push_back(b);
  }
  return out;
}

MergedScan merge_scans(const std::vector<BodyScan>& scans) {
  MergedScan out;
  std::size_t total = 0;
  for (const BodyScan& s : scans) total += s.targets.size();
  out.targets.reserve(total);
  for (const BodyScan& s : scans) {
    out.stamp = std::max(out.stamp, s.stamp);
    out.targets.insert(out.targets.end(), s.targets.begin(), s.targets.end());
  }
  return out;
}

namespace {

// Exact 3x3 solve of (sum u u') v = sum (-d) u over the sampled triple.
bool fit_velocity_from_triple(const BodyTarget& a, const BodyTarget& b,
                              const BodyTarget& c, Vec3* v) {
  Eigen::Matrix3d h;
  h.row(0) = a.los.transpose();
  h.row(1) = b.los.transpose();
  h.row(2) = c.los.transpose();
  if (std::abs(h.determinant()) < 1e-8) return false;
  Vec3 y(-a.doppler, -b.doppler, -c.doppler);
  *v = h.partialPivLu().solve(y);
  return v->allFinite();
}

}  // namespace

std::vector<BodyTarget> ransac_reject(const std::vector<BodyTarget>& targets,
                                      const RansacConfig& cfg, std::mt19937_64& rng) {
  const std::size_t n = targets.size();
  if (n < 3) return targets;

  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<char> best_mask(n, 1);
  std::size_t best_count = 0;

  for (int it = 0; it < cfg.iterations; ++it) {
    const std::size_t i = pick(rng);
    const std::size_t j = pick(rng);
    const std::size_t k = pick(rng);
    if (i == j || j == k || i == k) continue;
    Vec3 v;
    if (!fit_velocity_from_triple(targets[i], targets[j], targets[k], &v)) continue;

    std::vector<char> mask(n, 0);
    std::size_t count = 0;
    for (std::size_t m = 0; m < n; ++m) {
      const double residual = targets[m].los.dot(v) + targets[m].doppler;
      if (std::abs(residual) <= cfg.inlier_threshold) {
        mask[m] = 1;
        ++count;
      }
    }
    if (count > best_count) {
      best_count = count;
      best_mask.swap(mask);
    }
  }

  if (best_count < 3) return targets;  // no usable consensus; let the solver decide
  std::vector<BodyTarget> out;
  out.reserve(best_count);
  for (std::size_t m = 0; m < n; ++m) {
    if (best_mask[m]) out.push_back(targets[m]);
  }
  return out;
}

}  // namespace mrio
