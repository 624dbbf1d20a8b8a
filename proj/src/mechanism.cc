//
// Copyright 2026 The PolyPlace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "polyplace/mechanism.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "polyplace/laplace_distribution.h"

namespace polyplace {
namespace {

absl::Status ValidateSmoothSensitivity(double smooth_sensitivity) {
  if (!std::isfinite(smooth_sensitivity) || smooth_sensitivity < 0) {
    return absl::OutOfRangeError(absl::StrCat(
        "Smooth sensitivity must be finite and >= 0, got ",
        smooth_sensitivity));
  }
  return absl::OkStatus();
}

ReleaseResult ExactRelease(double query_value, NoiseKind kind) {
  ReleaseResult result;
  result.noisy_value = query_value;
  result.noise_scale_used = 0.0;
  result.distribution_tag = kind;
  result.exact = true;
  return result;
}

}  // namespace

absl::Status ValidateForPolyPlace(const MechanismSpec& spec) {
  if (!std::isfinite(spec.epsilon) || spec.epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be finite and > 0, got ", spec.epsilon));
  }
  if (!std::isfinite(spec.gamma) || spec.gamma <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must be finite and > 0, got ", spec.gamma));
  }
  if (spec.gamma >= spec.epsilon) {
    return absl::InvalidArgumentError(
        absl::StrCat("PolyPlace requires gamma < epsilon, got gamma=",
                     spec.gamma, " epsilon=", spec.epsilon));
  }
  return absl::OkStatus();
}

absl::Status ValidateForLaplaceSmooth(const MechanismSpec& spec) {
  if (!std::isfinite(spec.epsilon) || spec.epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be finite and > 0, got ", spec.epsilon));
  }
  if (!std::isfinite(spec.gamma) || spec.gamma <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must be finite and > 0, got ", spec.gamma));
  }
  if (!spec.delta.has_value() || !(*spec.delta > 0 && *spec.delta < 1)) {
    return absl::InvalidArgumentError(
        "Smooth-sensitivity Laplace requires delta in (0, 1)");
  }
  const double remaining = spec.epsilon - spec.gamma * std::log(2.0 / *spec.delta);
  if (!(remaining > 0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Budget exhausted: epsilon - gamma ln(2/delta) = ", remaining));
  }
  return absl::OkStatus();
}

std::string_view NoiseKindName(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::kPolyPlace:
      return "polyplace";
    case NoiseKind::kLaplaceGlobal:
      return "laplace_global";
    case NoiseKind::kLaplaceSmooth:
      return "laplace_smooth";
  }
  return "unknown";
}

absl::StatusOr<PolyPlaceParams> PolyPlaceNoiseParams(
    double smooth_sensitivity, const MechanismSpec& spec) {
  if (absl::Status status = ValidateForPolyPlace(spec); !status.ok()) {
    return status;
  }
  return PolyPlaceParams::Create(smooth_sensitivity / spec.gamma,
                                 spec.epsilon / spec.gamma);
}

absl::StatusOr<ReleaseResult> ReleasePolyPlace(double query_value,
                                               double smooth_sensitivity,
                                               const MechanismSpec& spec,
                                               SeededRandom& random) {
  if (absl::Status status = ValidateForPolyPlace(spec); !status.ok()) {
    return status;
  }
  if (absl::Status status = ValidateSmoothSensitivity(smooth_sensitivity);
      !status.ok()) {
    return status;
  }
  if (smooth_sensitivity == 0) {
    return ExactRelease(query_value, NoiseKind::kPolyPlace);
  }
  absl::StatusOr<PolyPlaceParams> params =
      PolyPlaceNoiseParams(smooth_sensitivity, spec);
  if (!params.ok()) return params.status();

  const PolyPlaceDistribution noise(*params);
  ReleaseResult result;
  result.noisy_value = query_value + noise.Sample(random);
  result.noise_scale_used = params->scale();
  result.distribution_tag = NoiseKind::kPolyPlace;
  result.infinite_variance = params->shape() <= 2.0;
  return result;
}

absl::StatusOr<ReleaseResult> ReleaseLaplaceGlobal(double query_value,
                                                   double global_sensitivity,
                                                   double epsilon,
                                                   SeededRandom& random) {
  if (!std::isfinite(global_sensitivity) || global_sensitivity <= 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Global sensitivity must be finite and > 0, got ", global_sensitivity));
  }
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be finite and > 0, got ", epsilon));
  }
  absl::StatusOr<LaplaceDistribution> noise =
      LaplaceDistribution::Create(global_sensitivity / epsilon);
  if (!noise.ok()) return noise.status();

  ReleaseResult result;
  result.noisy_value = query_value + noise->Sample(random);
  result.noise_scale_used = noise->scale();
  result.distribution_tag = NoiseKind::kLaplaceGlobal;
  return result;
}

absl::StatusOr<double> LaplaceSmoothScale(double smooth_sensitivity,
                                          const MechanismSpec& spec) {
  if (absl::Status status = ValidateForLaplaceSmooth(spec); !status.ok()) {
    return status;
  }
  if (absl::Status status = ValidateSmoothSensitivity(smooth_sensitivity);
      !status.ok()) {
    return status;
  }
  return smooth_sensitivity /
         (spec.epsilon - spec.gamma * std::log(2.0 / *spec.delta));
}

absl::StatusOr<ReleaseResult> ReleaseLaplaceSmooth(double query_value,
                                                   double smooth_sensitivity,
                                                   const MechanismSpec& spec,
                                                   SeededRandom& random) {
  absl::StatusOr<double> scale = LaplaceSmoothScale(smooth_sensitivity, spec);
  if (!scale.ok()) return scale.status();
  if (*scale == 0) return ExactRelease(query_value, NoiseKind::kLaplaceSmooth);

  absl::StatusOr<LaplaceDistribution> noise = LaplaceDistribution::Create(*scale);
  if (!noise.ok()) return noise.status();
  ReleaseResult result;
  result.noisy_value = query_value + noise->Sample(random);
  result.noise_scale_used = *scale;
  result.distribution_tag = NoiseKind::kLaplaceSmooth;
  return result;
}

}  // namespace polyplace
