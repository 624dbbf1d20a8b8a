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

#include "polyplace/polyplace_distribution.h"

#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace polyplace {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Closed-form inversion is accepted if it reproduces p to this tolerance.
constexpr double kQuantileCheckTolerance = 1e-12;
constexpr double kBisectionBracket = 1e6;
constexpr double kBisectionTolerance = 1e-13;

}  // namespace

absl::StatusOr<PolyPlaceParams> PolyPlaceParams::Create(double scale,
                                                        double shape) {
  if (!std::isfinite(scale) || scale <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("PolyPlace scale must be finite and > 0, got ", scale));
  }
  if (!std::isfinite(shape) || shape <= 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("PolyPlace shape must be finite and > 1, got ", shape));
  }
  return PolyPlaceParams(scale, shape);
}

PolyPlaceParams::PolyPlaceParams(double scale, double shape)
    : scale_(scale), shape_(shape) {
  log_core_power_ = shape * std::log1p(-1.0 / shape);
  log_tail_power_ = shape * std::log1p(-1.0 / (shape * shape));
  denominator_ = 2.0 * (2.0 * std::exp(log_core_power_) + shape - 1.0);
  normalizer_ = shape / (denominator_ * scale);
}

Branch PolyPlaceDistribution::BranchAt(double x) const {
  // |x|/s < 1/alpha, written without division.
  return std::abs(x) * params_.shape_ < params_.scale_ ? Branch::kCore
                                                       : Branch::kTail;
}

double PolyPlaceDistribution::Pdf(double x) const {
  const double alpha = params_.shape_;
  const double y = std::abs(x) / params_.scale_;
  if (BranchAt(x) == Branch::kCore) {
    return params_.normalizer_ * (alpha - 1.0) *
           std::exp((alpha - 1.0) * std::log1p(-y));
  }
  return params_.normalizer_ * (alpha + 1.0) *
         std::exp(params_.log_tail_power_ - (alpha + 1.0) * std::log1p(y));
}

double PolyPlaceDistribution::LogPdf(double x) const {
  return LogPdfOnBranch(x, BranchAt(x));
}

double PolyPlaceDistribution::LogPdfOnBranch(double x, Branch branch) const {
  const double alpha = params_.shape_;
  const double y = std::abs(x) / params_.scale_;
  const double log_n = std::log(params_.normalizer_);
  if (branch == Branch::kCore) {
    // Outside the support of the core formula the density would be zero.
    if (y >= 1.0) return -kInfinity;
    return log_n + std::log(alpha - 1.0) + (alpha - 1.0) * std::log1p(-y);
  }
  return log_n + std::log(alpha + 1.0) + params_.log_tail_power_ -
         (alpha + 1.0) * std::log1p(y);
}

double PolyPlaceDistribution::UpperTailFromStandardized(double y) const {
  const double alpha = params_.shape_;
  const double k = params_.denominator_;
  if (y * alpha < 1.0) {
    // 1/2 - (alpha - 1) (1 - (1 - y)^alpha) / K
    return 0.5 + (alpha - 1.0) * std::expm1(alpha * std::log1p(-y)) / k;
  }
  // (alpha + 1) (1 - 1/alpha^2)^alpha (1 + y)^(-alpha) / K
  return (alpha + 1.0) *
         std::exp(params_.log_tail_power_ - alpha * std::log1p(y)) / k;
}

double PolyPlaceDistribution::Survival(double x) const {
  if (std::isnan(x)) return x;
  const double y = std::abs(x) / params_.scale_;
  const double upper = UpperTailFromStandardized(y);
  return x >= 0 ? upper : 1.0 - upper;
}

double PolyPlaceDistribution::Cdf(double x) const {
  if (std::isnan(x)) return x;
  const double y = std::abs(x) / params_.scale_;
  const double upper = UpperTailFromStandardized(y);
  return x >= 0 ? 1.0 - upper : upper;
}

double PolyPlaceDistribution::TailMassAtBreakpoint() const {
  const double alpha = params_.shape_;
  return (alpha + 1.0) * std::exp(params_.log_core_power_) /
         params_.denominator_;
}

absl::StatusOr<double> PolyPlaceDistribution::Quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    return absl::OutOfRangeError(
        absl::StrCat("Quantile requires 0 < p < 1, got ", p));
  }
  return QuantileUnchecked(p);
}

double PolyPlaceDistribution::QuantileUnchecked(double p) const {
  if (p == 0.5) return 0.0;
  const double alpha = params_.shape_;
  const double k = params_.denominator_;
  // Mass beyond |x| on the side p falls in. 1 - p is exact for p >= 1/2.
  const double mass = p < 0.5 ? p : 1.0 - p;
  const double sign = p < 0.5 ? -1.0 : 1.0;

  double y;
  if (mass <= TailMassAtBreakpoint()) {
    // Solve (alpha + 1) C (1 + y)^(-alpha) / K = mass.
    const double log_base =
        std::log(mass * k / (alpha + 1.0)) - params_.log_tail_power_;
    y = std::expm1(-log_base / alpha);
  } else {
    // Solve 1/2 - mass = (alpha - 1) (1 - (1 - y)^alpha) / K.
    const double log_w = std::log1p(-(0.5 - mass) * k / (alpha - 1.0));
    y = -std::expm1(log_w / alpha);
  }
  const double x = sign * params_.scale_ * y;

  const double reproduced = p < 0.5 ? Cdf(x) : 1.0 - Survival(x);
  if (std::abs(reproduced - p) <= kQuantileCheckTolerance) return x;
  return QuantileByBisection(p);
}

double PolyPlaceDistribution::QuantileByBisection(double p) const {
  double lo = -kBisectionBracket * params_.scale_;
  double hi = kBisectionBracket * params_.scale_;
  const double tolerance = kBisectionTolerance * params_.scale_;
  for (int i = 0; i < 200 && hi - lo > tolerance; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (Cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double PolyPlaceDistribution::Sample(SeededRandom& random) const {
  return QuantileUnchecked(random.UniformOpen());
}

double PolyPlaceDistribution::Variance() const {
  return PolyPlaceVariance(params_.scale_, params_.shape_);
}

double PolyPlaceVariance(double scale, double shape) {
  const double alpha = shape;
  if (alpha <= 2.0) return kInfinity;
  const double core_power = std::exp(alpha * std::log1p(-1.0 / alpha));
  const double tail_power =
      std::exp(alpha * std::log1p(-1.0 / (alpha * alpha)));
  const double inv_growth = std::exp(-alpha * std::log1p(1.0 / alpha));
  // (1 + 1/alpha)^-alpha ((19 alpha^2 + 5) (1 - 1/alpha^2)^alpha
  //                       + (alpha - 2)(alpha - 1)^2 (1 + 1/alpha)^alpha)
  const double numerator =
      (19.0 * alpha * alpha + 5.0) * tail_power * inv_growth +
      (alpha - 2.0) * (alpha - 1.0) * (alpha - 1.0);
  // alpha^4 - 5 alpha^2 + 4 in factored form; the expanded polynomial cancels
  // catastrophically near alpha = 2.
  const double quartic =
      (alpha - 1.0) * (alpha + 1.0) * (alpha - 2.0) * (alpha + 2.0);
  const double half_denominator = 2.0 * core_power + alpha - 1.0;
  return 2.0 * scale * scale * numerator / (half_denominator * quartic);
}

}  // namespace polyplace
