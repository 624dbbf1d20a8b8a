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

#ifndef POLYPLACE_POLYPLACE_DISTRIBUTION_H_
#define POLYPLACE_POLYPLACE_DISTRIBUTION_H_

#include "absl/status/statusor.h"
#include "polyplace/random.h"

namespace polyplace {

// Parameters of the PolyPlace(s, alpha) distribution. The density is
// polynomial on |x| < s / alpha and has a Pareto-like tail of exponent
// alpha + 1 beyond it:
//
//   f(x) = N (alpha - 1) (1 - |x|/s)^(alpha - 1)                 |x|/s < 1/alpha
//   f(x) = N (alpha + 1) (1 - 1/alpha^2)^alpha (1 + |x|/s)^(-alpha - 1)  else
//
// with N = alpha / (2 (2 ((alpha - 1)/alpha)^alpha + alpha - 1) s).
//
// Instances are immutable and can be shared between threads.
class PolyPlaceParams {
 public:
  // Requires scale > 0 and shape > 1 (both finite).
  static absl::StatusOr<PolyPlaceParams> Create(double scale, double shape);

  double scale() const { return scale_; }
  double shape() const { return shape_; }

  // |x| at which the density switches from the polynomial core to the tail.
  double breakpoint() const { return scale_ / shape_; }

  // Normalizing constant N_{s,alpha}.
  double normalizer() const { return normalizer_; }

 private:
  PolyPlaceParams(double scale, double shape);

  friend class PolyPlaceDistribution;

  double scale_;
  double shape_;
  double normalizer_;
  // 2 (2 ((alpha - 1)/alpha)^alpha + alpha - 1), the scale-free part of 1/N.
  double denominator_;
  // ((alpha - 1)/alpha)^alpha and (1 - 1/alpha^2)^alpha in log space.
  double log_core_power_;
  double log_tail_power_;
};

// Which closed-form branch of the density applies at a given |x|.
enum class Branch { kCore, kTail };

class PolyPlaceDistribution {
 public:
  explicit PolyPlaceDistribution(PolyPlaceParams params) : params_(params) {}

  const PolyPlaceParams& params() const { return params_; }

  // Branch selection. The core uses the strict inequality |x|/s < 1/alpha, so
  // |x| == s/alpha is evaluated on the tail branch; both agree there.
  Branch BranchAt(double x) const;

  double Pdf(double x) const;
  double LogPdf(double x) const;
  // Evaluates the given branch formula regardless of where x lies.
  double LogPdfOnBranch(double x, Branch branch) const;

  double Cdf(double x) const;
  // P(X > x), computed without cancellation for large x.
  double Survival(double x) const;

  // Inverse of Cdf on (0, 1).
  absl::StatusOr<double> Quantile(double p) const;

  // Inverse-transform sample; consumes exactly one draw from `random`.
  double Sample(SeededRandom& random) const;

  double Mean() const { return 0.0; }
  // +infinity for shape <= 2.
  double Variance() const;

 private:
  // Mass of the upper tail beyond the breakpoint, P(X >= s/alpha).
  double TailMassAtBreakpoint() const;
  // P(X > y s) for standardized y >= 0.
  double UpperTailFromStandardized(double y) const;
  double QuantileUnchecked(double p) const;
  double QuantileByBisection(double p) const;

  PolyPlaceParams params_;
};

// Closed-form variance of PolyPlace(scale, shape); +infinity for shape <= 2.
// Arguments are not validated.
double PolyPlaceVariance(double scale, double shape);

}  // namespace polyplace

#endif  // POLYPLACE_POLYPLACE_DISTRIBUTION_H_
