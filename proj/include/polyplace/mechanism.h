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

#ifndef POLYPLACE_MECHANISM_H_
#define POLYPLACE_MECHANISM_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "polyplace/polyplace_distribution.h"
#include "polyplace/random.h"

namespace polyplace {

// Privacy parameters of one release. `delta` is only consulted by the
// smooth-sensitivity Laplace baseline, which is (epsilon, delta)-DP.
struct MechanismSpec {
  double epsilon = 1.0;
  double gamma = 0.1;
  std::optional<double> delta;
};

// Requires 0 < gamma < epsilon.
absl::Status ValidateForPolyPlace(const MechanismSpec& spec);
// Requires gamma > 0, delta in (0, 1) and epsilon - gamma ln(2/delta) > 0.
absl::Status ValidateForLaplaceSmooth(const MechanismSpec& spec);

enum class NoiseKind { kPolyPlace, kLaplaceGlobal, kLaplaceSmooth };

std::string_view NoiseKindName(NoiseKind kind);

struct ReleaseResult {
  double noisy_value = 0.0;
  // Scale of the noise distribution; 0 for an exact release.
  double noise_scale_used = 0.0;
  NoiseKind distribution_tag = NoiseKind::kPolyPlace;
  // Set when the smooth sensitivity is zero and no noise was added.
  bool exact = false;
  // PolyPlace with shape epsilon/gamma <= 2 is still epsilon-DP but has no
  // finite variance.
  bool infinite_variance = false;
};

// Noise distribution used by ReleasePolyPlace:
// PolyPlace(smooth_sensitivity / gamma, epsilon / gamma). Requires
// smooth_sensitivity > 0.
absl::StatusOr<PolyPlaceParams> PolyPlaceNoiseParams(
    double smooth_sensitivity, const MechanismSpec& spec);

// Pure epsilon-DP release of `query_value` with noise calibrated to the
// gamma-smooth sensitivity. A zero smooth sensitivity means the query is
// constant on the whole dataset universe and the value is released exactly.
absl::StatusOr<ReleaseResult> ReleasePolyPlace(double query_value,
                                               double smooth_sensitivity,
                                               const MechanismSpec& spec,
                                               SeededRandom& random);

// Classic Laplace mechanism, Lap(global_sensitivity / epsilon).
absl::StatusOr<ReleaseResult> ReleaseLaplaceGlobal(double query_value,
                                                   double global_sensitivity,
                                                   double epsilon,
                                                   SeededRandom& random);

// Laplace noise scaled to smooth sensitivity,
// b = SS / (epsilon - gamma ln(2/delta)). Only (epsilon, delta)-DP.
absl::StatusOr<double> LaplaceSmoothScale(double smooth_sensitivity,
                                          const MechanismSpec& spec);
absl::StatusOr<ReleaseResult> ReleaseLaplaceSmooth(double query_value,
                                                   double smooth_sensitivity,
                                                   const MechanismSpec& spec,
                                                   SeededRandom& random);

}  // namespace polyplace

#endif  // POLYPLACE_MECHANISM_H_
