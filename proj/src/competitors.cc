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

#include "polyplace/competitors.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "polyplace/mechanism.h"
#include "polyplace/polyplace_distribution.h"

namespace polyplace {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kBracketMargin = 1e-6;
constexpr double kShapeTolerance = 1e-6;

double ShapeObjective(ShapeFamily family, double shape, double gamma,
                      double epsilon) {
  return family == ShapeFamily::kCauchy ? StddevCauchy(shape, gamma, epsilon)
                                        : StddevStudentT(shape, gamma, epsilon);
}

}  // namespace

absl::StatusOr<double> StddevPolyPlace(double gamma, double epsilon) {
  MechanismSpec spec;
  spec.epsilon = epsilon;
  spec.gamma = gamma;
  absl::StatusOr<PolyPlaceParams> params = PolyPlaceNoiseParams(1.0, spec);
  if (!params.ok()) return params.status();
  return std::sqrt(PolyPlaceVariance(params->scale(), params->shape()));
}

double StddevCauchy(double c, double gamma, double epsilon) {
  if (!(c > 3) || !(gamma > 0) || !(gamma < epsilon / (c + 1))) {
    return kInfinity;
  }
  return (c + 1) / ((epsilon - gamma * (c + 1)) *
                    std::sqrt(2 * std::cos(2 * std::numbers::pi / c) + 1));
}

double StddevStudentT(double d, double gamma, double epsilon) {
  if (!(d > 2) || !(gamma > 0) || !(gamma < epsilon / (d + 1))) {
    return kInfinity;
  }
  return std::sqrt(d / (d - 2)) * (d + 1) /
         (2 * std::sqrt(d) * (epsilon - gamma * (d + 1)));
}

std::optional<double> StddevLaplaceSmooth(double gamma, double epsilon,
                                          double delta) {
  if (!(delta > 0 && delta < 1)) return std::nullopt;
  const double remaining = epsilon - gamma * std::log(2.0 / delta);
  if (!(remaining > 0)) return std::nullopt;
  return std::numbers::sqrt2 / remaining;
}

double StddevLaplaceGlobal(double epsilon) {
  return std::numbers::sqrt2 / epsilon;
}

ShapeOptimum OptimizeShape(ShapeFamily family, double gamma, double epsilon) {
  const double lower =
      (family == ShapeFamily::kCauchy ? 3.0 : 2.0) + kBracketMargin;
  const double upper = epsilon / gamma - 1.0 - kBracketMargin;
  if (!(gamma > 0) || !(upper > lower)) return {std::nullopt, kInfinity};

  auto objective = [&](double log_shape) {
    return ShapeObjective(family, std::exp(log_shape), gamma, epsilon);
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(lower);
  double b = std::log(upper);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  // The width in log space is the relative width in shape.
  while (b - a > kShapeTolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  const double shape = std::exp(0.5 * (a + b));
  const double stddev = ShapeObjective(family, shape, gamma, epsilon);
  if (!std::isfinite(stddev)) return {std::nullopt, kInfinity};
  return {shape, stddev};
}

absl::StatusOr<ComparisonRow> CompareAt(double gamma, double epsilon,
                                        double delta) {
  absl::StatusOr<double> polyplace = StddevPolyPlace(gamma, epsilon);
  if (!polyplace.ok()) return polyplace.status();

  ComparisonRow row;
  row.gamma = gamma;
  row.stddev_polyplace = *polyplace;
  const ShapeOptimum t = OptimizeShape(ShapeFamily::kStudentT, gamma, epsilon);
  row.stddev_student_t_opt = t.stddev;
  row.t_shape_opt = t.shape;
  const ShapeOptimum cauchy =
      OptimizeShape(ShapeFamily::kCauchy, gamma, epsilon);
  row.stddev_cauchy_opt = cauchy.stddev;
  row.cauchy_shape_opt = cauchy.shape;
  row.stddev_laplace_smooth = StddevLaplaceSmooth(gamma, epsilon, delta);
  row.stddev_laplace_global = StddevLaplaceGlobal(epsilon);
  return row;
}

std::vector<double> LogSpacedGammaGrid(double epsilon, int points) {
  std::vector<double> grid;
  if (points <= 0) return grid;
  const double lo = std::log(0.005 * epsilon);
  const double hi = std::log(0.99 * epsilon);
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    grid.push_back(std::exp(lo + t * (hi - lo)));
  }
  return grid;
}

}  // namespace polyplace
