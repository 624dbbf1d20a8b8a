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

#ifndef POLYPLACE_SENSITIVITY_H_
#define POLYPLACE_SENSITIVITY_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace polyplace {

// A fixed-size collection of real records known to lie in
// [lower_bound, upper_bound]. The bounds are part of the privacy model.
class Dataset {
 public:
  // Fails if `values` is empty, the bounds are not ordered, or a value lies
  // outside them.
  static absl::StatusOr<Dataset> Create(std::vector<double> values,
                                        double lower_bound, double upper_bound);

  std::span<const double> values() const { return values_; }
  double lower_bound() const { return lower_bound_; }
  double upper_bound() const { return upper_bound_; }
  size_t size() const { return values_.size(); }

 private:
  Dataset(std::vector<double> values, double lower_bound, double upper_bound)
      : values_(std::move(values)),
        lower_bound_(lower_bound),
        upper_bound_(upper_bound) {}

  std::vector<double> values_;
  double lower_bound_;
  double upper_bound_;
};

// Replace-one adjacency: neighbors differ in exactly one position, and the
// induced distance is the number of differing positions. Brute-force
// operations additionally need a finite grid of replacement values.
struct AdjacencyModel {
  enum class Kind { kReplaceOne };

  Kind kind = Kind::kReplaceOne;
  std::optional<std::vector<double>> domain;
};

struct SensitivityReport {
  double local_sensitivity = 0.0;
  double smooth_sensitivity = 0.0;
  double gamma = 0.0;
  // Entry k is A(k), the largest local sensitivity over datasets within
  // distance k. Nondecreasing in k.
  std::vector<double> per_distance_max;
};

using Query = std::function<double(std::span<const double>)>;

// Lower middle order statistic; equals the usual median for odd sizes.
double Median(std::span<const double> values);

// Number of values in [lo, hi].
Query CountInRange(double lo, double hi);

// max_k exp(-gamma k) A(k).
double SmoothFromPerDistanceMax(std::span<const double> per_distance_max,
                                double gamma);

// Exact local sensitivity by enumerating every replace-one neighbor with
// values from the adjacency grid that lie within the dataset bounds.
// Feasible for n <= 20 and at most 32 grid values.
absl::StatusOr<double> LocalSensitivityBruteForce(
    const Dataset& dataset, const Query& query, const AdjacencyModel& adjacency);

// Exact gamma-smooth sensitivity over all grid datasets within
// `max_distance` of `dataset`. Each dataset at distance k is generated once
// by choosing k positions and a differing grid value for each. Fails with
// ResourceExhausted rather than truncating when the number of candidates
// exceeds 10^7.
absl::StatusOr<SensitivityReport> SmoothSensitivityBruteForce(
    const Dataset& dataset, const Query& query, const AdjacencyModel& adjacency,
    double gamma, int max_distance);

// gamma-smooth sensitivity of Median under replace-one adjacency with
// replacements confined to the dataset bounds. With sorted values
// x_1 <= ... <= x_n, padded by x_i = lower for i < 1 and x_i = upper for
// i > n, and median index m:
//
//   A(k) = max_{0 <= t <= k+1} (x_{m+t} - x_{m+t-k-1}).
absl::StatusOr<SensitivityReport> MedianSmoothSensitivity(
    const Dataset& dataset, double gamma);

// Every dataset of a fixed size over a finite grid, with the query, local
// sensitivity and per-distance maxima tabulated for all of them at once.
// Datasets are addressed by their mixed-radix index over grid positions.
class DatasetUniverse {
 public:
  // Fails if grid^size exceeds 10^7 datasets.
  static absl::StatusOr<DatasetUniverse> Build(const Query& query, int size,
                                               std::vector<double> grid);

  int dataset_size() const { return size_; }
  size_t num_datasets() const { return query_values_.size(); }
  std::span<const double> grid() const { return grid_; }

  std::vector<double> Values(size_t index) const;
  // Index of the dataset whose position `position` holds grid value
  // `grid_index`, all other positions as in `index`.
  size_t Replace(size_t index, int position, int grid_index) const;

  double QueryValue(size_t index) const { return query_values_[index]; }
  double LocalSensitivity(size_t index) const { return per_distance_[0][index]; }
  SensitivityReport SmoothSensitivity(size_t index, double gamma) const;

 private:
  DatasetUniverse() = default;

  int size_ = 0;
  std::vector<double> grid_;
  std::vector<size_t> strides_;
  std::vector<double> query_values_;
  // per_distance_[k][index] = A(k) for that dataset.
  std::vector<std::vector<double>> per_distance_;
};

}  // namespace polyplace

#endif  // POLYPLACE_SENSITIVITY_H_
