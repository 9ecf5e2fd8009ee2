// Copyright 2026 The bgt Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bgt {

double normal_cdf(double x);
// Inverse of normal_cdf; accurate to full double precision via a
// rational approximation polished with one Newton step.
double normal_quantile(double p);

// model[i] - reference[i]; throws DimensionMismatch on length mismatch
// and EmptyInput on empty input.
std::vector<double> paired_differences(const std::vector<double>& model,
                                       const std::vector<double>& reference);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Bias-corrected accelerated bootstrap interval for the mean.
// Deterministic given seed: resampling is chunked with per-chunk
// derived seeds, so the stream does not depend on how many workers
// consume it. Degenerate samples (all equal) collapse to a point
// interval. resamples must be >= 1000.
Interval bca_interval(const std::vector<double>& samples, double level,
                      int resamples = 10000, std::uint64_t seed = 0,
                      int jobs = 1);

struct ComparisonRow {
  std::string model;
  double mean_diff = 0.0;
  double lo68 = 0.0, hi68 = 0.0;
  double lo95 = 0.0, hi95 = 0.0;
};

// Paired-difference summary of per-split losses against a reference
// model. The 68% and 95% intervals come from the same bootstrap
// stream, so they nest.
ComparisonRow compare_paired(const std::string& name,
                             const std::vector<double>& model_losses,
                             const std::vector<double>& reference_losses,
                             int resamples = 10000, std::uint64_t seed = 0,
                             int jobs = 1);

}  // namespace bgt
