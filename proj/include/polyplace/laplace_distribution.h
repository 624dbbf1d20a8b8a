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

#ifndef POLYPLACE_LAPLACE_DISTRIBUTION_H_
#define POLYPLACE_LAPLACE_DISTRIBUTION_H_

#include "absl/status/statusor.h"
#include "polyplace/random.h"

namespace polyplace {

// Zero-centered Laplace distribution with scale b, density exp(-|x|/b) / 2b.
class LaplaceDistribution {
 public:
  static absl::StatusOr<LaplaceDistribution> Create(double scale);

  double scale() const { return scale_; }

  double Pdf(double x) const;
  double LogPdf(double x) const;
  double Cdf(double x) const;
  absl::StatusOr<double> Quantile(double p) const;
  double Sample(SeededRandom& random) const;
  double Variance() const { return 2.0 * scale_ * scale_; }

 private:
  explicit LaplaceDistribution(double scale) : scale_(scale) {}

  double QuantileUnchecked(double p) const;

  double scale_;
};

}  // namespace polyplace

#endif  // POLYPLACE_LAPLACE_DISTRIBUTION_H_
