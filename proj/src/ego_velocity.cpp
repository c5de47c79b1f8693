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

#include "mrio/ego_velocity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "mrio/errors.hpp"

namespace mrio {

DopplerSystem build_system(const std::vector<BodyTarget>& targets) {
  DopplerSystem sys;
  const Eigen::Index n = static_cast<Eigen::Index>(targets.size());
  sys.los_rows.resize(n, 3);
  sys.rhs.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    sys.los_rows.row(j) = targets[static_cast<std::size_t>(j)].los.transpose();
    sys.rhs(j) = -targets[static_cast<std::size_t>(j)].doppler;
  }
  return sys;
}

EgoVelocity solve(const DopplerSystem& sys, int min_targets, double max_condition) {
  const Eigen::Index n = sys.size();
  if (n < min_targets) {
    throw InsufficientTargets("need at least " + std::to_string(min_targets) +
                              " targets, got " + std::to_string(n));
  }

  const Eigen::Matrix3d hth = sys.los_rows.transpose() * sys.los_rows;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(hth);
  const double lmin = eig.eigenvalues()(0);
  const double lmax = eig.eigenvalues()(2);
  if (!(lmin > 0.0) || !std::isfinite(lmax)) {
    throw DegenerateGeometry("normal-equation matrix is singular");
  }
  const double condition = lmax / lmin;
  if (condition > max_condition) {
    throw DegenerateGeometry("ill-conditioned geometry: cond(H'H) = " +
                             std::to_string(condition));
  }

  EgoVelocity out;
  // Orthogonal factorization rather than a literal normal-equation inverse.
  out.v = sys.los_rows.colPivHouseholderQr().solve(sys.rhs);
  out.residual_rms =
      (sys.los_rows * out.v - sys.rhs).norm() / std::sqrt(static_cast<double>(n));
  out.condition = condition;
  out.n_targets = static_cast<int>(n);
  if (!out.v.allFinite()) {
    throw DegenerateGeometry("least-squares solution is not finite");
  }
  return out;
}

double forward_speed(const EgoVelocity& ego) { return ego.v.x(); }

double measurement_variance(const EgoVelocity& ego, double floor) {
  return std::max(ego.residual_rms * ego.residual_rms, floor);
}

}  // namespace mrio
