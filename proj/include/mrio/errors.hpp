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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mrio {

/// Base class for all recoverable toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scan fed to the wrong extrinsics entry.
struct MismatchedRadarId : Error {
  MismatchedRadarId(int scan_id, int ext_id)
      : Error("radar_id mismatch: scan has radar_id " + std::to_string(scan_id) +
              " but extrinsics are for radar_id " + std::to_string(ext_id)),
        scan_id(scan_id),
        ext_id(ext_id) {}
  explicit MismatchedRadarId(const std::string& what) : Error(what), scan_id(0), ext_id(0) {}
  int scan_id;
  int ext_id;
};

/// Fewer Doppler rows than the least-squares solve requires.
struct InsufficientTargets : Error {
  using Error::Error;
};

/// Normal-equation matrix is singular or too ill-conditioned to trust.
struct DegenerateGeometry : Error {
  using Error::Error;
};

/// Non-positive time step, or out-of-order timestamps in a stream.
struct NonMonotonicTime : Error {
  explicit NonMonotonicTime(const std::string& what, std::size_t line = 0)
      : Error(what), line(line) {}
  std::size_t line;  // 1-based input line when raised by the dataset loader, else 0
};

/// Time step above the IMU-rate guard.
struct DtTooLarge : Error {
  using Error::Error;
};

/// Innovation covariance not invertible to working precision.
struct SingularInnovationCovariance : Error {
  using Error::Error;
};

/// Malformed dataset or config content.
struct ParseError : Error {
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line(line) {}
  std::size_t line;
};

/// Filesystem failure while reading or writing an artifact.
struct IoError : Error {
  using Error::Error;
};

/// Too few matchable pose pairs for trajectory evaluation.
struct InsufficientOverlap : Error {
  using Error::Error;
};

}  // namespace mrio
