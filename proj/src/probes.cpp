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

#include "bgt/probes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bgt/heuristics.hpp"
#include "bgt/qch.hpp"

namespace bgt {

int find_dominant_row(const Game& g, double zeta) {
  int found = -1;
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    bool dominant = true;
    for (Eigen::Index other = 0; other < g.rows() && dominant; ++other) {
      if (other == i) continue;
      for (Eigen::Index j = 0; j < g.cols(); ++j) {
        if (!(g.u1(i, j) > g.u1(other, j) + zeta)) {
          dominant = false;
          break;
        }
      }
    }
    if (dominant) {
      if (found >= 0) return -1;  // two dominant rows cannot happen
      found = static_cast<int>(i);
    }
  }
  return found;
}

DominantGame gen_zeta_dominant(int n, int m, double zeta,
                               std::mt19937_64& rng) {
  if (n < 2 || m < 1) throw BadConstants("need at least two row actions");
  if (zeta < 0.0) throw BadConstants("negative dominance margin");
  std::uniform_real_distribution<double> payoff(-1.0, 1.0);
  std::uniform_real_distribution<double> margin(0.05, 1.0);
  Matrix u1(n, m), u2(n, m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      u1(i, j) = payoff(rng);
      u2(i, j) = payoff(rng);
    }
  }
  std::uniform_int_distribution<int> row(0, n - 1);
  const int dominant = row(rng);
  for (int j = 0; j < m; ++j) {
    double best_other = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (i != dominant) best_other = std::max(best_other, u1(i, j));
    }
    u1(dominant, j) = best_other + zeta + margin(rng);
  }
  return {Game(std::move(u1), std::move(u2)), dominant};
}

DominanceReport dominance_probe(const BehavioralModel& model, int n, int m,
                                const std::vector<double>& zetas, int trials,
                                std::uint64_t seed) {
  if (trials < 1) throw BadConstants("need at least one trial");
  std::mt19937_64 rng(seed);
  DominanceReport report;
  report.zetas = zetas;
  report.min_prob.assign(zetas.size(),
                         std::numeric_limits<double>::infinity());
  report.modal_fraction.assign(zetas.size(), 0.0);
  for (std::size_t z = 0; z < zetas.size(); ++z) {
    int modal = 0;
    for (int t = 0; t < trials; ++t) {
      const DominantGame dg = gen_zeta_dominant(n, m, zetas[z], rng);
      const Behavior b = model(dg.game);
      report.min_prob[z] = std::min(report.min_prob[z], b(dg.dominant_row));
      // Responsiveness asks for a strict winner, so a tie at the top
      // does not count as a mode on the dominant action.
      bool strict = true;
      for (Eigen::Index i = 0; i < b.size() && strict; ++i) {
        strict = i == dg.dominant_row || b(i) < b(dg.dominant_row);
      }
      if (strict) ++modal;
    }
    report.modal_fraction[z] = static_cast<double>(modal) / trials;
  }
  return report;
}

OtherResponseReport other_responsiveness_probe(const BehavioralModel& model,
                                               int random_pairs,
                                               std::uint64_t seed,
                                               double tol) {
  OtherResponseReport report;
  auto consider = [&](const Game& g, const Game& gp) {
    const Behavior out = model(g);
    const Behavior out_p = model(gp);
    const double gap = (out - out_p).cwiseAbs().maxCoeff();
    if (gap > report.max_output_gap) {
      report.max_output_gap = gap;
      report.g = g;
      report.g_prime = gp;
    }
    if (gap > tol) report.responsive = true;
    return report.responsive;
  };

  // Matching pennies payoffs for the row player; the opponent prefers
  // the left column in one game and the right column in the other, so
  // any model that reasons about the opponent must move.
  Matrix own(2, 2), left(2, 2), right(2, 2);
  own << 1, 0, 0, 1;
  left << 1, 0, 1, 0;
  right << 0, 1, 0, 1;
  if (consider(Game(own, left), Game(own, right))) return report;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> payoff(-1.0, 1.0);
  std::uniform_int_distribution<int> side(2, 4);
  for (int p = 0; p < random_pairs; ++p) {
    const int n = side(rng), m = side(rng);
    Matrix u1(n, m), a(n, m), b(n, m);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        u1(i, j) = payoff(rng);
        a(i, j) = payoff(rng);
        b(i, j) = payoff(rng);
      }
    }
    if (consider(Game(u1, a), Game(u1, b))) return report;
  }
  return report;
}

Game sample_gapped_game(int n, int m, double cmax, double cgap,
                        bool negative_payoffs, std::mt19937_64& rng) {
  if (n < 1 || m < 1) throw BadConstants("empty game shape");
  if (cmax <= 0.0 || cgap <= 0.0) {
    throw BadConstants("payoff cap and gap must be positive");
  }
  const int k = 2 * n * m;
  const double range = negative_payoffs ? 2.0 * cmax : cmax;
  const double slack = range - static_cast<double>(k - 1) * cgap;
  if (slack <= 0.0) {
    throw BadConstants("gap too large: no game of this shape exists");
  }
  // Draw the k values directly with the gaps built in: sorted uniforms
  // over the slack, then spread by cgap, then shuffled over the cells.
  // 1 - U keeps the draws strictly positive, which the open lower bound
  // of the positive class needs.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> values(k);
  for (double& v : values) v = (1.0 - unit(rng)) * slack;
  std::sort(values.begin(), values.end());
  const double offset = negative_payoffs ? -cmax : 0.0;
  for (int i = 0; i < k; ++i) {
    values[i] += offset + static_cast<double>(i) * cgap;
  }
  std::shuffle(values.begin(), values.end(), rng);
  Matrix u1(n, m), u2(n, m);
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      u1(i, j) = values[idx++];
      u2(i, j) = values[idx++];
    }
  }
  return Game(std::move(u1), std::move(u2));
}

EmulationReport qbr_maxmax_deviation(const BehavioralModel& model,
                                     double cmax, double cgap,
                                     bool negative_payoffs, int trials,
                                     std::uint64_t seed, double tol) {
  if (trials < 0) throw BadConstants("negative trial count");
  EmulationReport report;
  report.trials = trials;
  if (trials == 0) {
    report.ok = true;
    report.warning = "no trials requested; nothing was checked";
    return report;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> side(2, 5);
  for (int t = 0; t < trials; ++t) {
    const Game g =
        sample_gapped_game(side(rng), side(rng), cmax, cgap, negative_payoffs,
                           rng);
    // The reference response: precision-1 quantal response to the
    // opponent's highest-payoff action.
    const Behavior target = qbr(g, maxmax(transpose_for_column(g)), 1.0);
    report.max_deviation = std::max(
        report.max_deviation, (model(g) - target).cwiseAbs().maxCoeff());
  }
  report.ok = report.max_deviation < tol;
  return report;
}

EmulationReport theorem31_emulation_check(double cmax, double cgap,
                                          bool negative_payoffs, int trials,
                                          std::uint64_t seed, double tol) {
  const CertificateModel cert =
      theorem31_certificate(cmax, cgap, negative_payoffs);
  const BehavioralModel network = [&cert](const Game& g) {
    return feature_forward(cert.config, cert.params, cert.prefix, g);
  };
  return qbr_maxmax_deviation(network, cmax, cgap, negative_payoffs, trials,
                              seed, tol);
}

BottleneckPair make_bottleneck_pair(const Vector& theta, double b) {
  if (theta.size() != 2) {
    throw DimensionMismatch("potential needs two coefficients");
  }
  if (theta(1) == 0.0) {
    throw BadConstants(
        "a potential that ignores the opponent cannot be probed this way");
  }
  if (b <= 0.0) throw BadConstants("pair scale must be positive");
  // phi(x) = phi(x') = 0 while the own payoff swings by 2b.
  const double own = 2.0 * b;
  const double other = -own * theta(0) / theta(1);
  Matrix u1(2, 2), u2(2, 2);
  u1 << 0, 0, own, own;
  u2 << 0, 0, other, other;
  BottleneckPair pair;
  pair.g = Game(u1, u2);
  u1 << own, own, 0, 0;
  u2 << other, other, 0, 0;
  pair.g_prime = Game(u1, u2);
  pair.dominant_row_g = 1;
  pair.dominant_row_g_prime = 0;
  const double norm = std::hypot(theta(0), theta(1));
  pair.potential_gap =
      std::abs((theta(0) * own + theta(1) * other) / norm);
  return pair;
}

}  // namespace bgt
