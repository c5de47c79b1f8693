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

/// \file ego_velocity.hpp
/// Least-squares body-frame ego-velocity from merged Doppler returns, with
/// degeneracy diagnostics. The stacked system is H v = y with one unit line
/// of sight per row and y_j = -doppler_j, so a body velocity v satisfying
/// u'v = -doppler for every static target solves it exactly.

#pragma once

#include <Eigen/Core>
#include <vector>

#include "mrio/radar_frontend.hpp"

namespace mrio {

struct DopplerSystem {
  Eigen::Matrix<double, Eigen::Dynamic, 3> los_rows;  // H, unit rows
  Eigen::VectorXd rhs;                                // y, y_j = -doppler_j

  Eigen::Index size() const { return rhs.size(); }
};

struct EgoVelocity {
  Vec3 v = Vec3::Zero();      // body-frame velocity estimate
  double residual_rms = 0.0;  // |Hv - y| / sqrt(N), m/s
  double condition = 1.0;     // condition number of H'H
  int n_targets = 0;
};

struct LsqConfig {
  int min_targets = 3;
  double max_condition = 1e4;
  double r_v_floor = 9e-4;  // (0.03 m/s)^2, Doppler velocity resolution floor
};

DopplerSystem build_system(const std::vector<BodyTarget>& targets);

/// Minimizes |Hv - y| via a Householder QR factorization; mathematically
/// identical to the normal-equation solution (H'H)^-1 H'y. Throws
/// InsufficientTargets when N < min_targets and DegenerateGeometry when H'H
/// is singular or its condition number exceeds max_condition.
EgoVelocity solve(const DopplerSystem& sys, int min_targets = 3,
                  double max_condition = 1e4);

/// Body forward-axis component, the scalar speed both EKF stages consume.
double forward_speed(const EgoVelocity& ego);

/// Measurement variance handed to the filters: max(residual_rms^2, floor).
double measurement_variance(const EgoVelocity& ego, double floor);

}  // namespace mrio
