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

#include "bgt/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <numbers>
#include <numeric>
#include <random>

#include "bgt/common.hpp"

namespace bgt {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace {

// Acklam's rational approximation of the probit function; relative
// error below 1.2e-9 everywhere, which the Newton step below reduces to
// machine precision.
double probit_estimate(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double lo = 0.02425;
  if (p < lo) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - lo) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
          a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double sorted_quantile(const std::vector<double>& sorted, double alpha) {
  const auto n = sorted.size();
  if (alpha <= 0.0) return sorted.front();
  if (alpha >= 1.0) return sorted.back();
  const double pos = alpha * static_cast<double>(n - 1);
  const auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= n) return sorted.back();
  const double frac = pos - static_cast<double>(i);
  return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw BadConstants("quantile probability outside [0, 1]");
  }
  double x = probit_estimate(p);
  // One Newton step on normal_cdf(x) = p.
  const double err = normal_cdf(x) - p;
  const double pdf =
      std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  if (pdf > 0.0) x -= err / pdf;
  return x;
}

std::vector<double> paired_differences(const std::vector<double>& model,
                                       const std::vector<double>& reference) {
  if (model.empty()) throw EmptyInput("no paired losses");
  if (model.size() != reference.size()) {
    throw DimensionMismatch("paired loss lists differ in length");
  }
  std::vector<double> diff(model.size());
  for (std::size_t i = 0; i < model.size(); ++i) {
    diff[i] = model[i] - reference[i];
  }
  return diff;
}

Interval bca_interval(const std::vector<double>& samples, double level,
                      int resamples, std::uint64_t seed, int jobs) {
  if (samples.empty()) throw EmptyInput("bootstrap over an empty sample");
  if (!(level > 0.0 && level < 1.0)) {
    throw BadConstants("confidence level must lie in (0, 1)");
  }
  if (resamples < 1000) {
    throw BadConstants("need at least 1000 bootstrap resamples");
  }
  const auto n = samples.size();
  const double observed =
      std::accumulate(samples.begin(), samples.end(), 0.0) /
      static_cast<double>(n);
  const bool degenerate =
      std::all_of(samples.begin(), samples.end(),
                  [&](double x) { return x == samples.front(); });
  if (degenerate || n == 1) return {observed, observed};

  // Chunked resampling: chunk c always uses splitmix64(seed ^ c), so the
  // bootstrap stream is identical no matter how many workers run.
  constexpr int kChunk = 2048;
  std::vector<double> boot(resamples);
  const int chunks = (resamples + kChunk - 1) / kChunk;
  auto run_chunk = [&](int c) {
    std::mt19937_64 rng(splitmix64(seed ^ static_cast<std::uint64_t>(c)));
    const int begin = c * kChunk;
    const int end = std::min(resamples, begin + kChunk);
    for (int b = begin; b < end; ++b) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        total += samples[rng() % n];
      }
      boot[b] = total / static_cast<double>(n);
    }
  };
  if (jobs <= 1) {
    for (int c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int c = next++; c < chunks; c = next++) run_chunk(c);
    };
    std::vector<std::future<void>> futures;
    for (int j = 0; j < std::min(jobs, chunks); ++j) {
      futures.push_back(std::async(std::launch::async, worker));
    }
    for (auto& f : futures) f.get();
  }

  // Bias correction from the fraction of resampled means below the
  // observed mean, clamped away from 0 and 1.
  auto below = static_cast<double>(
      std::count_if(boot.begin(), boot.end(),
                    [&](double x) { return x < observed; }));
  below = std::clamp(below, 1.0, static_cast<double>(resamples) - 1.0);
  const double z0 =
      normal_quantile(below / static_cast<double>(resamples));

  // Acceleration from the jackknife skewness of the mean.
  const double total = observed * static_cast<double>(n);
  std::vector<double> jack(n);
  for (std::size_t i = 0; i < n; ++i) {
    jack[i] = (total - samples[i]) / static_cast<double>(n - 1);
  }
  const double jack_mean =
      std::accumulate(jack.begin(), jack.end(), 0.0) / static_cast<double>(n);
  double d2 = 0.0, d3 = 0.0;
  for (double j : jack) {
    const double d = jack_mean - j;
    d2 += d * d;
    d3 += d * d * d;
  }
  const double accel = d2 > 0.0 ? d3 / (6.0 * std::pow(d2, 1.5)) : 0.0;

  std::sort(boot.begin(), boot.end());
  const double alpha = (1.0 - level) / 2.0;
  auto adjusted = [&](double z_alpha) {
    const double z = z0 + z_alpha;
    const double denom = 1.0 - accel * z;
    if (denom <= 0.0) {
      // Extreme skew pushes the endpoint to the tail of the bootstrap
      // distribution.
      return z_alpha < 0.0 ? 0.0 : 1.0;
    }
    return normal_cdf(z0 + z / denom);
  };
  return {sorted_quantile(boot, adjusted(normal_quantile(alpha))),
          sorted_quantile(boot, adjusted(normal_quantile(1.0 - alpha)))};
}

ComparisonRow compare_paired(const std::string& name,
                             const std::vector<double>& model_losses,
                             const std::vector<double>& reference_losses,
                             int resamples, std::uint64_t seed, int jobs) {
  const auto diff = paired_differences(model_losses, reference_losses);
  ComparisonRow row;
  row.model = name;
  row.mean_diff = std::accumulate(diff.begin(), diff.end(), 0.0) /
                  static_cast<double>(diff.size());
  const Interval i68 = bca_interval(diff, 0.68, resamples, seed, jobs);
  const Interval i95 = bca_interval(diff, 0.95, resamples, seed, jobs);
  row.lo68 = i68.lo;
  row.hi68 = i68.hi;
  row.lo95 = i95.lo;
  row.hi95 = i95.hi;
  return row;
}

}  // namespace bgt
