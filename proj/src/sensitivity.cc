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

#include "polyplace/sensitivity.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace polyplace {
namespace {

constexpr double kMaxCandidates = 1e7;
constexpr size_t kMaxLocalSize = 20;
constexpr size_t kMaxLocalDomain = 32;

absl::Status ValidateGamma(double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must be finite and > 0, got ", gamma));
  }
  return absl::OkStatus();
}

// Grid values usable as replacements for this dataset.
absl::StatusOr<std::vector<double>> ReplacementGrid(
    const Dataset& dataset, const AdjacencyModel& adjacency) {
  if (!adjacency.domain.has_value() || adjacency.domain->empty()) {
    return absl::FailedPreconditionError(
        "Brute-force sensitivity requires a domain discretization");
  }
  std::vector<double> grid;
  for (double v : *adjacency.domain) {
    if (v >= dataset.lower_bound() && v <= dataset.upper_bound()) {
      grid.push_back(v);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double LocalSensitivityOnGrid(std::vector<double>& values,
                              std::span<const double> grid,
                              const Query& query) {
  const double base = query(values);
  double max_change = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    const double original = values[i];
    for (double v : grid) {
      values[i] = v;
      max_change = std::max(max_change, std::abs(query(values) - base));
    }
    values[i] = original;
  }
  return max_change;
}

}  // namespace

absl::StatusOr<Dataset> Dataset::Create(std::vector<double> values,
                                        double lower_bound,
                                        double upper_bound) {
  if (values.empty()) {
    return absl::InvalidArgumentError("Dataset must be nonempty");
  }
  if (!(lower_bound <= upper_bound)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Dataset bounds out of order: [", lower_bound, ", ", upper_bound, "]"));
  }
  for (double v : values) {
    if (!(v >= lower_bound && v <= upper_bound)) {
      return absl::OutOfRangeError(absl::StrCat(
          "Value ", v, " outside [", lower_bound, ", ", upper_bound, "]"));
    }
  }
  return Dataset(std::move(values), lower_bound, upper_bound);
}

double Median(std::span<const double> values) {
  if (values.empty()) return std::nan("");
  std::vector<double> copy(values.begin(), values.end());
  const size_t m = (copy.size() - 1) / 2;
  std::nth_element(copy.begin(), copy.begin() + m, copy.end());
  return copy[m];
}

Query CountInRange(double lo, double hi) {
  return [lo, hi](std::span<const double> values) {
    return static_cast<double>(std::count_if(
        values.begin(), values.end(),
        [lo, hi](double v) { return v >= lo && v <= hi; }));
  };
}

double SmoothFromPerDistanceMax(std::span<const double> per_distance_max,
                                double gamma) {
  double smooth = 0.0;
  for (size_t k = 0; k < per_distance_max.size(); ++k) {
    smooth = std::max(smooth, std::exp(-gamma * static_cast<double>(k)) *
                                  per_distance_max[k]);
  }
  return smooth;
}

absl::StatusOr<double> LocalSensitivityBruteForce(
    const Dataset& dataset, const Query& query,
    const AdjacencyModel& adjacency) {
  absl::StatusOr<std::vector<double>> grid = ReplacementGrid(dataset, adjacency);
  if (!grid.ok()) return grid.status();
  if (dataset.size() > kMaxLocalSize || grid->size() > kMaxLocalDomain) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "Local sensitivity enumeration limited to n <= ", kMaxLocalSize,
        " and |domain| <= ", kMaxLocalDomain));
  }
  std::vector<double> values(dataset.values().begin(), dataset.values().end());
  return LocalSensitivityOnGrid(values, *grid, query);
}

absl::StatusOr<SensitivityReport> SmoothSensitivityBruteForce(
    const Dataset& dataset, const Query& query, const AdjacencyModel& adjacency,
    double gamma, int max_distance) {
  if (absl::Status status = ValidateGamma(gamma); !status.ok()) return status;
  if (max_distance < 0) {
    return absl::InvalidArgumentError("max_distance must be >= 0");
  }
  absl::StatusOr<std::vector<double>> grid = ReplacementGrid(dataset, adjacency);
  if (!grid.ok()) return grid.status();

  const std::span<const double> original = dataset.values();
  const int n = static_cast<int>(original.size());
  const int max_k = std::min(max_distance, n);

  // Per position, the grid values that differ from the original record.
  std::vector<std::vector<double>> alternatives(n);
  for (int i = 0; i < n; ++i) {
    for (double v : *grid) {
      if (v != original[i]) alternatives[i].push_back(v);
    }
  }

  // Count candidates by distance before enumerating: sum over position
  // subsets of the product of alternative counts.
  std::vector<double> count_by_distance(max_k + 1, 0.0);
  count_by_distance[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const double a = static_cast<double>(alternatives[i].size());
    for (int k = max_k; k >= 1; --k) {
      count_by_distance[k] += count_by_distance[k - 1] * a;
    }
  }
  double total = 0.0;
  for (double c : count_by_distance) total += c;
  if (total > kMaxCandidates) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "Smooth sensitivity enumeration needs ", total,
        " candidate datasets, limit is ", kMaxCandidates));
  }

  std::vector<double> candidate(original.begin(), original.end());
  std::vector<double> per_distance(max_k + 1, 0.0);
  per_distance[0] = LocalSensitivityOnGrid(candidate, *grid, query);

  for (int k = 1; k <= max_k; ++k) {
    double best = per_distance[k - 1];
    // Positions chosen as a sorted k-subset, advanced lexicographically.
    std::vector<int> positions(k);
    for (int j = 0; j < k; ++j) positions[j] = j;
    while (true) {
      bool feasible = true;
      for (int p : positions) feasible &= !alternatives[p].empty();
      if (feasible) {
        std::vector<size_t> digit(k, 0);
        while (true) {
          for (int j = 0; j < k; ++j) {
            candidate[positions[j]] = alternatives[positions[j]][digit[j]];
          }
          best = std::max(best, LocalSensitivityOnGrid(candidate, *grid, query));
          int j = k - 1;
          while (j >= 0 && ++digit[j] == alternatives[positions[j]].size()) {
            digit[j] = 0;
            --j;
          }
          if (j < 0) break;
        }
        for (int p : positions) candidate[p] = original[p];
      }
      int j = k - 1;
      while (j >= 0 && positions[j] == n - k + j) --j;
      if (j < 0) break;
      ++positions[j];
      for (int t = j + 1; t < k; ++t) positions[t] = positions[t - 1] + 1;
    }
    per_distance[k] = best;
  }

  SensitivityReport report;
  report.gamma = gamma;
  report.local_sensitivity = per_distance[0];
  report.smooth_sensitivity = SmoothFromPerDistanceMax(per_distance, gamma);
  report.per_distance_max = std::move(per_distance);
  return report;
}

absl::StatusOr<SensitivityReport> MedianSmoothSensitivity(
    const Dataset& dataset, double gamma) {
  if (absl::Status status = ValidateGamma(gamma); !status.ok()) return status;
  if (dataset.size() == 0) {
    return absl::OutOfRangeError("Median of an empty dataset");
  }
  const double lower = dataset.lower_bound();
  const double upper = dataset.upper_bound();
  std::vector<double> sorted(dataset.values().begin(), dataset.values().end());
  for (double& v : sorted) v = std::clamp(v, lower, upper);
  std::sort(sorted.begin(), sorted.end());

  const int n = static_cast<int>(sorted.size());
  const int m = (n + 1) / 2;  // 1-based index of the lower median
  auto order_stat = [&](int i) {
    if (i < 1) return lower;
    if (i > n) return upper;
    return sorted[i - 1];
  };

  std::vector<double> per_distance(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double widest = 0.0;
    for (int t = 0; t <= k + 1; ++t) {
      widest = std::max(widest, order_stat(m + t) - order_stat(m + t - k - 1));
    }
    per_distance[k] = widest;
  }

  SensitivityReport report;
  report.gamma = gamma;
  report.local_sensitivity = per_distance[0];
  report.smooth_sensitivity = SmoothFromPerDistanceMax(per_distance, gamma);
  report.per_distance_max = std::move(per_distance);
  return report;
}

absl::StatusOr<DatasetUniverse> DatasetUniverse::Build(
    const Query& query, int size, std::vector<double> grid) {
  if (size < 1) return absl::InvalidArgumentError("Dataset size must be >= 1");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.empty()) return absl::InvalidArgumentError("Grid must be nonempty");
  const double count = std::pow(static_cast<double>(grid.size()), size);
  if (count > kMaxCandidates) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "Universe of ", count, " datasets exceeds limit ", kMaxCandidates));
  }

  DatasetUniverse universe;
  universe.size_ = size;
  universe.grid_ = std::move(grid);
  const size_t m = universe.grid_.size();
  const size_t total = static_cast<size_t>(count);
  universe.strides_.resize(size);
  size_t stride = 1;
  for (int i = size - 1; i >= 0; --i) {
    universe.strides_[i] = stride;
    stride *= m;
  }

  universe.query_values_.resize(total);
  for (size_t index = 0; index < total; ++index) {
    universe.query_values_[index] = query(universe.Values(index));
  }

  std::vector<double> local(total, 0.0);
  for (size_t index = 0; index < total; ++index) {
    double widest = 0.0;
    for (int p = 0; p < size; ++p) {
      for (size_t g = 0; g < m; ++g) {
        const size_t neighbor = universe.Replace(index, p, static_cast<int>(g));
        widest = std::max(widest, std::abs(universe.query_values_[neighbor] -
                                           universe.query_values_[index]));
      }
    }
    local[index] = widest;
  }
  universe.per_distance_.push_back(std::move(local));

  // The distance-k ball is k replace-one steps, so A(k) is a max over
  // neighbors of A(k-1).
  for (int k = 1; k <= size; ++k) {
    const std::vector<double>& previous = universe.per_distance_.back();
    std::vector<double> next(previous);
    for (size_t index = 0; index < total; ++index) {
      for (int p = 0; p < size; ++p) {
        for (size_t g = 0; g < m; ++g) {
          next[index] = std::max(
              next[index],
              previous[universe.Replace(index, p, static_cast<int>(g))]);
        }
      }
    }
    universe.per_distance_.push_back(std::move(next));
  }
  return universe;
}

std::vector<double> DatasetUniverse::Values(size_t index) const {
  std::vector<double> values(size_);
  for (int i = 0; i < size_; ++i) {
    values[i] = grid_[(index / strides_[i]) % grid_.size()];
  }
  return values;
}

size_t DatasetUniverse::Replace(size_t index, int position,
                                int grid_index) const {
  const size_t stride = strides_[position];
  const size_t current = (index / stride) % grid_.size();
  return index - current * stride + static_cast<size_t>(grid_index) * stride;
}

SensitivityReport DatasetUniverse::SmoothSensitivity(size_t index,
                                                     double gamma) const {
  SensitivityReport report;
  report.gamma = gamma;
  report.local_sensitivity = per_distance_[0][index];
  for (const std::vector<double>& level : per_distance_) {
    report.per_distance_max.push_back(level[index]);
  }
  report.smooth_sensitivity =
      SmoothFromPerDistanceMax(report.per_distance_max, gamma);
  return report;
}

}  // namespace polyplace
