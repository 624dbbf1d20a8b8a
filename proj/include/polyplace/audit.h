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

#ifndef POLYPLACE_AUDIT_H_
#define POLYPLACE_AUDIT_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "polyplace/mechanism.h"
#include "polyplace/polyplace_distribution.h"

namespace polyplace {

// Effect of moving from D to a neighbor D', normalized to SS(D) = 1:
// SS(D') / SS(D) = exp(lambda_r gamma) and q(D) - q(D') = lambda_s SS(D).
//
// Smoothness of SS gives |lambda_r| <= 1. Since |q(D) - q(D')| is bounded by
// both local sensitivities, and hence by min(SS(D), SS(D')), realizable pairs
// satisfy |lambda_s| <= min(1, exp(lambda_r gamma)). This set is closed under
// exchanging D and D'.
struct NeighborScenario {
  double lambda_r = 0.0;
  double lambda_s = 0.0;
};

// Largest admissible |lambda_s| for the given lambda_r.
double MaxQueryShift(double lambda_r, double gamma);

absl::Status ValidateScenario(const NeighborScenario& scenario, double gamma);

// The same pair seen from D': lambda_r -> -lambda_r and the shift re-expressed
// in units of SS(D').
NeighborScenario MirrorScenario(const NeighborScenario& scenario, double gamma);
// The output value x (in D-normalized coordinates) in D'-normalized ones.
double MirrorPoint(double x, const NeighborScenario& scenario, double gamma);

// log of p_{M(D')}(x) / p_{M(D)}(x) with q(D) = 0 and SS(D) = 1:
//   log f_{e^{lambda_r gamma}/gamma, eps/gamma}(x + lambda_s)
//     - log f_{1/gamma, eps/gamma}(x).
absl::StatusOr<double> LogDensityRatio(const MechanismSpec& spec,
                                       const NeighborScenario& scenario,
                                       double x);
absl::StatusOr<double> DensityRatio(const MechanismSpec& spec,
                                    const NeighborScenario& scenario,
                                    double x);

struct AuditFinding {
  NeighborScenario scenario;
  double x = 0.0;
  double ratio = 0.0;
};

struct AuditReport {
  double epsilon = 0.0;
  double gamma = 0.0;
  // Largest ratio seen; 1 for an empty grid.
  double max_ratio = 1.0;
  NeighborScenario argmax_scenario;
  double argmax_x = 0.0;
  size_t grid_size = 0;
  // Points with ratio > e^epsilon (1 + kAuditSlack). Empty iff max_ratio is
  // within that bound.
  std::vector<AuditFinding> violations;
};

inline constexpr double kAuditSlack = 1e-8;

// `per_axis` values of lambda_r in [-1, 1] and, for each, `per_axis` values
// of lambda_s spread over [-MaxQueryShift, MaxQueryShift] so that the
// boundary of the admissible set is always included.
std::vector<NeighborScenario> DefaultScenarioGrid(double gamma,
                                                  int per_axis = 41);

// `points` equally spaced values covering [lo, hi].
std::vector<double> UniformGrid(double lo, double hi, int points);

// 2001 points on [-20, 20].
std::vector<double> DefaultAuditXGrid();

// Exhaustive search for the worst density ratio over scenarios x outputs.
absl::StatusOr<AuditReport> AuditPrivacy(
    const MechanismSpec& spec, std::span<const NeighborScenario> scenarios,
    std::span<const double> x_grid);

// Closed-form derivatives of log f_{s,alpha}, valid for x != 0, on the given
// branch:
//   d/dx log f(x)               = sgn(x) (alpha - 1) / (|x| - s)    core
//                                 sgn(x) (-alpha - 1) / (|x| + s)   tail
//   d/dl log f_{e^{l/s} s}(x)   = -1/s + (alpha - 1)|x| / (s (s - |x|))  core
//                                 -1/s + (alpha + 1)|x| / (s (s + |x|))  tail
double LogPdfLocationDerivative(const PolyPlaceParams& params, double x,
                                Branch branch);
double LogPdfScaleDerivative(const PolyPlaceParams& params, double x,
                             Branch branch);

// Max relative error of both closed forms against central finite differences
// of LogPdf (step 1e-6 s in x, 1e-6 in the exponential scale parameter), for
// the mechanism's noise distribution at unit smooth sensitivity. Every grid
// point must be nonzero and at least 1e-4 s away from the breakpoint.
absl::StatusOr<double> CheckDerivativeFormulas(const MechanismSpec& spec,
                                               std::span<const double> x_grid);

// |d/dl log f_{1/gamma}(x + l)| + |d/dl log f_{e^{l gamma}/gamma}(x)| at l = 0
// on the given branch. Equals epsilon.
double DifferentialIdentitySum(const MechanismSpec& spec, double x,
                               Branch branch);

// max over the grid of |DifferentialIdentitySum - epsilon|, each point on the
// branch the density uses there. Requires x != 0.
absl::StatusOr<double> CheckDifferentialIdentity(
    const MechanismSpec& spec, std::span<const double> x_grid);

struct ConvergenceRow {
  double gamma = 0.0;
  // max_x |f_{a/gamma, eps/gamma}(x) / f_{Lap(a/eps)}(x) - 1|
  double max_deviation = 0.0;
};

// Requires a strictly decreasing gamma sequence with all entries in
// (0, epsilon).
absl::StatusOr<std::vector<ConvergenceRow>> CheckConvergenceToLaplace(
    double a, double epsilon, std::span<const double> gammas,
    std::span<const double> x_grid);

// E[X^2] of the distribution by adaptive quadrature of x^2 f(x).
double VarianceByQuadrature(const PolyPlaceParams& params);

// max |closed form - quadrature| / closed form over the grid. Every shape
// must exceed 2.1.
absl::StatusOr<double> CheckVarianceQuadrature(
    std::span<const PolyPlaceParams> params_grid);

}  // namespace polyplace

#endif  // POLYPLACE_AUDIT_H_
