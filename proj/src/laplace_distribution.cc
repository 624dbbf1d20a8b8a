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

#include "polyplace/laplace_distribution.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace polyplace {

absl::StatusOr<LaplaceDistribution> LaplaceDistribution::Create(double scale) {
  if (!std::isfinite(scale) || scale <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be finite and > 0, got ", scale));
  }
  return LaplaceDistribution(scale);
}

double LaplaceDistribution::Pdf(double x) const {
  return std::exp(-std::abs(x) / scale_) / (2.0 * scale_);
}

double LaplaceDistribution::LogPdf(double x) const {
  return -std::abs(x) / scale_ - std::log(2.0 * scale_);
}

double LaplaceDistribution::Cdf(double x) const {
  const double half_tail = 0.5 * std::exp(-std::abs(x) / scale_);
  return x < 0 ? half_tail : 1.0 - half_tail;
}

absl::StatusOr<double> LaplaceDistribution::Quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    return absl::OutOfRangeError(
        absl::StrCat("Quantile requires 0 < p < 1, got ", p));
  }
  return QuantileUnchecked(p);
}

double LaplaceDistribution::QuantileUnchecked(double p) const {
  if (p < 0.5) return scale_ * std::log(2.0 * p);
  return -scale_ * std::log(2.0 * (1.0 - p));
}

double LaplaceDistribution::Sample(SeededRandom& random) const {
  return QuantileUnchecked(random.UniformOpen());
}

}  // namespace polyplace
