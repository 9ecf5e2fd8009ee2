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

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bgt/common.hpp"
#include "bgt/game.hpp"
#include "bgt/gamenet.hpp"

namespace bgt {

// Anything that maps a game to a row-player distribution can be probed.
using BehavioralModel = std::function<Behavior(const Game&)>;

// A row action that beats every other row by more than zeta against
// every column. Returns the unique such row or -1. Exhaustive scan,
// exact comparisons.
int find_dominant_row(const Game& g, double zeta);

struct DominantGame {
  Game game;
  int dominant_row = -1;
};

// Random game with exactly one zeta-dominant row action. Other entries
// are uniform on [-1, 1]; the dominant row clears the field by zeta
// plus a positive margin.
DominantGame gen_zeta_dominant(int n, int m, double zeta,
                               std::mt19937_64& rng);

struct DominanceReport {
  std::vector<double> zetas;
  // Worst case over trials of the probability put on the dominant
  // action, one entry per zeta.
  std::vector<double> min_prob;
  // Share of trials whose strict mode was the dominant action; ties
  // count as failures.
  std::vector<double> modal_fraction;
};

// Samples fresh dominant-action games at every zeta and records how the
// model treats the dominant action.
DominanceReport dominance_probe(const BehavioralModel& model, int n, int m,
                                const std::vector<double>& zetas, int trials,
                                std::uint64_t seed);

struct OtherResponseReport {
  bool responsive = false;
  // Witness pair: identical own payoffs, different opponent payoffs.
  Game g;
  Game g_prime;
  double max_output_gap = 0.0;
};

// Hunts for a pair of games that differ only in the opponent's payoffs
// yet get different predictions. Starts from a canonical 2x2 pair in
// which the opponent's dominant column flips sides, then tries random
// pairs. A model that never responds is, on this evidence,
// non-strategic in the other-responsiveness sense.
OtherResponseReport other_responsiveness_probe(const BehavioralModel& model,
                                               int random_pairs,
                                               std::uint64_t seed,
                                               double tol = 1e-9);

// Sampler for the certificate's game class: every one of the 2nm
// payoffs is pairwise at least cgap apart, entries in (0, cmax] (or
// [-cmax, cmax] with negative_payoffs). Throws BadConstants when the
// class is empty for the requested shape.
Game sample_gapped_game(int n, int m, double cmax, double cgap,
                        bool negative_payoffs, std::mt19937_64& rng);

struct EmulationReport {
  int trials = 0;
  double max_deviation = 0.0;
  bool ok = false;
  std::string warning;
};

// Largest gap between the probed model and the quantal response to the
// opponent's highest-payoff action, over random games of the gapped
// class with sides 2..5. Zero trials succeeds vacuously but carries a
// warning.
EmulationReport qbr_maxmax_deviation(const BehavioralModel& model,
                                     double cmax, double cgap,
                                     bool negative_payoffs, int trials,
                                     std::uint64_t seed, double tol = 1e-9);

// Same comparison for the hand-set certificate network, which is
// supposed to match the closed form exactly.
EmulationReport theorem31_emulation_check(double cmax, double cgap,
                                          bool negative_payoffs, int trials,
                                          std::uint64_t seed,
                                          double tol = 1e-9);

struct BottleneckPair {
  Game g;
  Game g_prime;
  int dominant_row_g = -1;
  int dominant_row_g_prime = -1;
  // |phi(x) - phi(x')| for the probed potential; zero by construction
  // up to roundoff.
  double potential_gap = 0.0;
};

// The adversarial construction behind the elementary-model dominance
// bound: two payoff pairs x = (0,0) and x' = (2b, -2b t0/t1) that the
// potential cannot tell apart, arranged so the dominant row flips
// between the pair. Requires t1 != 0.
BottleneckPair make_bottleneck_pair(const Vector& theta, double b);

}  // namespace bgt
