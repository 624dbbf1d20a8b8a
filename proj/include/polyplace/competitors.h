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

#ifndef POLYPLACE_COMPETITORS_H_
#define POLYPLACE_COMPETITORS_H_

#include <optional>
#include <vector>

#include "absl/status/statusor.h"

namespace polyplace {

// Standard deviations of the noise each smooth-sensitivity mechanism adds for
// unit smooth sensitivity. Multiply by the smooth sensitivity for a concrete
// release. Infinite values mean the variance does not exist or no valid
// calibration exists for the given parameters.

// PolyPlace(1/gamma, epsilon/gamma). Infinite when epsilon/gamma <= 2.
absl::StatusOr<double> StddevPolyPlace(double gamma, double epsilon);

// Generalized Cauchy with density proportional to 1 / (1 + |y|^c). Finite
// only for c > 3 and gamma < epsilon / (c + 1).
double StddevCauchy(double c, double gamma, double epsilon);

// Student's T with d degrees of freedom. Finite only for d > 2 and
// gamma < epsilon / (d + 1).
double StddevStudentT(double d, double gamma, double epsilon);

// Laplace scaled to smooth sensitivity, sqrt(2) / (epsilon - gamma ln(2/delta)).
// nullopt when the budget is exhausted or delta is outside (0, 1).
std::optional<double> StddevLaplaceSmooth(double gamma, double epsilon,
                                          double delta);

// Laplace scaled to unit global sensitivity.
double StddevLaplaceGlobal(double epsilon);

enum class ShapeFamily { kCauchy, kStudentT };

struct ShapeOptimum {
  // nullopt when no shape admits a finite standard deviation.
  std::optional<double> shape;
  double stddev;
};

// Minimizes the family's standard deviation over its valid shape interval,
// c in (3, epsilon/gamma - 1) or d in (2, epsilon/gamma - 1), by
// golden-section search in log(shape). Both objectives diverge at either end
// of the interval.
ShapeOptimum OptimizeShape(ShapeFamily family, double gamma, double epsilon);

struct ComparisonRow {
  double gamma = 0.0;
  double stddev_polyplace = 0.0;
  double stddev_student_t_opt = 0.0;
  std::optional<double> t_shape_opt;
  double stddev_cauchy_opt = 0.0;
  std::optional<double> cauchy_shape_opt;
  std::optional<double> stddev_laplace_smooth;
  double stddev_laplace_global = 0.0;
};

// Requires 0 < gamma < epsilon.
absl::StatusOr<ComparisonRow> CompareAt(double gamma, double epsilon,
                                        double delta);

// `points` log-spaced values from 0.005 epsilon to 0.99 epsilon inclusive.
std::vector<double> LogSpacedGammaGrid(double epsilon, int points = 50);

}  // namespace polyplace

#endif  // POLYPLACE_COMPETITORS_H_
