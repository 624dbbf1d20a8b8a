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

#include "polyplace/audit.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "boost/math/quadrature/gauss_kronrod.hpp"
#include "boost/math/quadrature/tanh_sinh.hpp"
#include "polyplace/laplace_distribution.h"

namespace polyplace {
namespace {

constexpr double kScenarioTolerance = 1e-12;
constexpr double kLocationStep = 1e-6;  // times s
constexpr double kScaleStep = 1e-6;
constexpr double kBreakpointExclusion = 1e-4;  // times s
constexpr double kMinQuadratureShape = 2.1;

// Noise distribution at unit smooth sensitivity with the smooth sensitivity
// of the evaluated dataset scaled by exp(log_scale_factor).
absl::StatusOr<PolyPlaceDistribution> NoiseAt(const MechanismSpec& spec,
                                              double log_scale_factor) {
  absl::StatusOr<PolyPlaceParams> params =
      PolyPlaceNoiseParams(std::exp(log_scale_factor), spec);
  if (!params.ok()) return params.status();
  return PolyPlaceDistribution(*params);
}

double Sign(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

}  // namespace

double MaxQueryShift(double lambda_r, double gamma) {
  return std::min(1.0, std::exp(lambda_r * gamma));
}

absl::Status ValidateScenario(const NeighborScenario& scenario, double gamma) {
  if (!std::isfinite(scenario.lambda_r) ||
      std::abs(scenario.lambda_r) > 1.0 + kScenarioTolerance) {
    return absl::OutOfRangeError(absl::StrCat(
        "lambda_r must lie in [-1, 1], got ", scenario.lambda_r));
  }
  const double bound = MaxQueryShift(scenario.lambda_r, gamma);
  if (!std::isfinite(scenario.lambda_s) ||
      std::abs(scenario.lambda_s) > bound * (1.0 + kScenarioTolerance)) {
    return absl::OutOfRangeError(
        absl::StrCat("|lambda_s| must be at most ", bound, " for lambda_r=",
                     scenario.lambda_r, ", got ", scenario.lambda_s));
  }
  return absl::OkStatus();
}

NeighborScenario MirrorScenario(const NeighborScenario& scenario,
                                double gamma) {
  NeighborScenario mirrored;
  mirrored.lambda_r = -scenario.lambda_r;
  mirrored.lambda_s =
      -scenario.lambda_s * std::exp(-scenario.lambda_r * gamma);
  return mirrored;
}

double MirrorPoint(double x, const NeighborScenario& scenario, double gamma) {
  return (x + scenario.lambda_s) * std::exp(-scenario.lambda_r * gamma);
}

absl::StatusOr<double> LogDensityRatio(const MechanismSpec& spec,
                                       const NeighborScenario& scenario,
                                       double x) {
  if (absl::Status status = ValidateForPolyPlace(spec); !status.ok()) {
    return status;
  }
  if (absl::Status status = ValidateScenario(scenario, spec.gamma);
      !status.ok()) {
    return status;
  }
  absl::StatusOr<PolyPlaceDistribution> here = NoiseAt(spec, 0.0);
  if (!here.ok()) return here.status();
  absl::StatusOr<PolyPlaceDistribution> neighbor =
      NoiseAt(spec, scenario.lambda_r * spec.gamma);
  if (!neighbor.ok()) return neighbor.status();
  return neighbor->LogPdf(x + scenario.lambda_s) - here->LogPdf(x);
}

absl::StatusOr<double> DensityRatio(const MechanismSpec& spec,
                                    const NeighborScenario& scenario,
                                    double x) {
  absl::StatusOr<double> log_ratio = LogDensityRatio(spec, scenario, x);
  if (!log_ratio.ok()) return log_ratio.status();
  return std::exp(*log_ratio);
}

std::vector<NeighborScenario> DefaultScenarioGrid(double gamma, int per_axis) {
  std::vector<NeighborScenario> grid;
  const std::vector<double> unit = UniformGrid(-1.0, 1.0, per_axis);
  for (double lambda_r : unit) {
    const double bound = MaxQueryShift(lambda_r, gamma);
    for (double fraction : unit) {
      grid.push_back({lambda_r, fraction * bound});
    }
  }
  return grid;
}

std::vector<double> UniformGrid(double lo, double hi, int points) {
  std::vector<double> grid;
  if (points <= 0) return grid;
  if (points == 1) return {lo};
  grid.reserve(points);
  for (int i = 0; i < points; ++i) {
    // Written as a blend so both endpoints are exact.
    const double t = static_cast<double>(i) / (points - 1);
    grid.push_back(lo * (1.0 - t) + hi * t);
  }
  return grid;
}

std::vector<double> DefaultAuditXGrid() { return UniformGrid(-20, 20, 2001); }

absl::StatusOr<AuditReport> AuditPrivacy(
    const MechanismSpec& spec, std::span<const NeighborScenario> scenarios,
    std::span<const double> x_grid) {
  if (absl::Status status = ValidateForPolyPlace(spec); !status.ok()) {
    return status;
  }
  AuditReport report;
  report.epsilon = spec.epsilon;
  report.gamma = spec.gamma;
  report.grid_size = scenarios.size() * x_grid.size();
  if (report.grid_size == 0) return report;

  absl::StatusOr<PolyPlaceDistribution> here = NoiseAt(spec, 0.0);
  if (!here.ok()) return here.status();
  std::vector<double> base_log_pdf(x_grid.size());
  for (size_t i = 0; i < x_grid.size(); ++i) {
    base_log_pdf[i] = here->LogPdf(x_grid[i]);
  }

  const double log_bound = spec.epsilon + std::log1p(kAuditSlack);
  double max_log_ratio = -std::numeric_limits<double>::infinity();
  for (const NeighborScenario& scenario : scenarios) {
    if (absl::Status status = ValidateScenario(scenario, spec.gamma);
        !status.ok()) {
      return status;
    }
    absl::StatusOr<PolyPlaceDistribution> neighbor =
        NoiseAt(spec, scenario.lambda_r * spec.gamma);
    if (!neighbor.ok()) return neighbor.status();
    for (size_t i = 0; i < x_grid.size(); ++i) {
      const double log_ratio =
          neighbor->LogPdf(x_grid[i] + scenario.lambda_s) - base_log_pdf[i];
      if (log_ratio > max_log_ratio) {
        max_log_ratio = log_ratio;
        report.argmax_scenario = scenario;
        report.argmax_x = x_grid[i];
      }
      if (log_ratio > log_bound) {
        report.violations.push_back(
            {scenario, x_grid[i], std::exp(log_ratio)});
      }
    }
  }
  report.max_ratio = std::exp(max_log_ratio);
  return report;
}

double LogPdfLocationDerivative(const PolyPlaceParams& params, double x,
                                Branch branch) {
  const double s = params.scale();
  const double alpha = params.shape();
  const double ax = std::abs(x);
  if (branch == Branch::kCore) return Sign(x) * (alpha - 1.0) / (ax - s);
  return Sign(x) * (-alpha - 1.0) / (ax + s);
}

double LogPdfScaleDerivative(const PolyPlaceParams& params, double x,
                             Branch branch) {
  const double s = params.scale();
  const double alpha = params.shape();
  const double ax = std::abs(x);
  if (branch == Branch::kCore) {
    return -1.0 / s + (alpha - 1.0) * ax / (s * (s - ax));
  }
  return -1.0 / s + (alpha + 1.0) * ax / (s * (s + ax));
}

absl::StatusOr<double> CheckDerivativeFormulas(const MechanismSpec& spec,
                                               std::span<const double> x_grid) {
  absl::StatusOr<PolyPlaceParams> params = PolyPlaceNoiseParams(1.0, spec);
  if (!params.ok()) return params.status();
  const double s = params->scale();
  const double alpha = params->shape();
  const PolyPlaceDistribution dist(*params);
  // Neighbors in the exponential scale parameter l, at scale s e^{+-h/s}.
  const PolyPlaceDistribution scaled_up(
      *PolyPlaceParams::Create(s * std::exp(kScaleStep / s), alpha));
  const PolyPlaceDistribution scaled_down(
      *PolyPlaceParams::Create(s * std::exp(-kScaleStep / s), alpha));

  const double h = kLocationStep * s;
  double max_error = 0.0;
  for (double x : x_grid) {
    if (x == 0 || std::abs(std::abs(x) - params->breakpoint()) <
                      kBreakpointExclusion * s) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Derivative check point ", x,
          " is zero or too close to the breakpoint ", params->breakpoint()));
    }
    const Branch branch = dist.BranchAt(x);

    const double location_closed = LogPdfLocationDerivative(*params, x, branch);
    const double location_fd =
        (dist.LogPdf(x + h) - dist.LogPdf(x - h)) / (2.0 * h);
    max_error = std::max(max_error, std::abs(location_closed - location_fd) /
                                        std::abs(location_closed));

    const double scale_closed = LogPdfScaleDerivative(*params, x, branch);
    const double scale_fd =
        (scaled_up.LogPdf(x) - scaled_down.LogPdf(x)) / (2.0 * kScaleStep);
    max_error = std::max(max_error, std::abs(scale_closed - scale_fd) /
                                        std::abs(scale_closed));
  }
  return max_error;
}

double DifferentialIdentitySum(const MechanismSpec& spec, double x,
                               Branch branch) {
  absl::StatusOr<PolyPlaceParams> params = PolyPlaceNoiseParams(1.0, spec);
  if (!params.ok()) return std::nan("");
  // l e^{l gamma}/gamma is the exponential parametrization s e^{l/s} with
  // s = 1/gamma.
  return std::abs(LogPdfLocationDerivative(*params, x, branch)) +
         std::abs(LogPdfScaleDerivative(*params, x, branch));
}

absl::StatusOr<double> CheckDifferentialIdentity(
    const MechanismSpec& spec, std::span<const double> x_grid) {
  absl::StatusOr<PolyPlaceParams> params = PolyPlaceNoiseParams(1.0, spec);
  if (!params.ok()) return params.status();
  const PolyPlaceDistribution dist(*params);
  double max_deviation = 0.0;
  for (double x : x_grid) {
    if (x == 0) {
      return absl::InvalidArgumentError(
          "Differential identity is undefined at x = 0");
    }
    const double sum = DifferentialIdentitySum(spec, x, dist.BranchAt(x));
    max_deviation = std::max(max_deviation, std::abs(sum - spec.epsilon));
  }
  return max_deviation;
}

absl::StatusOr<std::vector<ConvergenceRow>> CheckConvergenceToLaplace(
    double a, double epsilon, std::span<const double> gammas,
    std::span<const double> x_grid) {
  if (!(a > 0) || !std::isfinite(a)) {
    return absl::InvalidArgumentError(absl::StrCat("a must be > 0, got ", a));
  }
  absl::StatusOr<LaplaceDistribution> laplace =
      LaplaceDistribution::Create(a / epsilon);
  if (!laplace.ok()) return laplace.status();

  std::vector<ConvergenceRow> rows;
  for (size_t i = 0; i < gammas.size(); ++i) {
    const double gamma = gammas[i];
    if (i > 0 && !(gamma < gammas[i - 1])) {
      return absl::InvalidArgumentError(
          "gamma sequence must be strictly decreasing");
    }
    if (!(gamma > 0 && gamma < epsilon)) {
      return absl::InvalidArgumentError(
          absl::StrCat("gamma must lie in (0, epsilon), got ", gamma));
    }
    absl::StatusOr<PolyPlaceParams> params =
        PolyPlaceParams::Create(a / gamma, epsilon / gamma);
    if (!params.ok()) return params.status();
    const PolyPlaceDistribution dist(*params);
    ConvergenceRow row;
    row.gamma = gamma;
    for (double x : x_grid) {
      row.max_deviation =
          std::max(row.max_deviation,
                   std::abs(std::expm1(dist.LogPdf(x) - laplace->LogPdf(x))));
    }
    rows.push_back(row);
  }
  return rows;
}

double VarianceByQuadrature(const PolyPlaceParams& params) {
  const PolyPlaceDistribution dist(params);
  const double s = params.scale();
  const double b = params.breakpoint();

  using boost::math::quadrature::gauss_kronrod;
  const double core = gauss_kronrod<double, 61>::integrate(
      [&](double x) { return x * x * dist.Pdf(x); }, 0.0, b, 15, 1e-14);

  // Tail in t = s / (s + x) on (0, t_b]; x^2 f(x) dx = x^2 f(x) s / t^2 dt.
  // Evaluated in log space since x grows without bound as t -> 0.
  const double t_b = s / (s + b);
  boost::math::quadrature::tanh_sinh<double> tanh_sinh;
  const double tail = tanh_sinh.integrate(
      [&](double t) {
        if (t <= 0) return 0.0;
        const double x = s * (1.0 - t) / t;
        if (!(x > 0) || !std::isfinite(x)) return 0.0;
        return std::exp(2.0 * std::log(x) + dist.LogPdf(x) + std::log(s) -
                        2.0 * std::log(t));
      },
      0.0, t_b, 1e-13);
  return 2.0 * (core + tail);
}

absl::StatusOr<double> CheckVarianceQuadrature(
    std::span<const PolyPlaceParams> params_grid) {
  double max_error = 0.0;
  for (const PolyPlaceParams& params : params_grid) {
    if (!(params.shape() > kMinQuadratureShape)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Variance quadrature check needs shape > ", kMinQuadratureShape,
          ", got ", params.shape()));
    }
    const double closed = PolyPlaceVariance(params.scale(), params.shape());
    const double numeric = VarianceByQuadrature(params);
    max_error = std::max(max_error, std::abs(closed - numeric) / closed);
  }
  return max_error;
}

}  // namespace polyplace
