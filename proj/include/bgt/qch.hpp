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

#include "bgt/common.hpp"
#include "bgt/game.hpp"

namespace bgt {

// Quantal best response of the row player against an opponent mixed
// strategy: probabilities proportional to exp(precision * expected
// payoff). precision = 0 is uniform; as precision grows the response
// approaches a best reply. Throws DimensionMismatch when opp does not
// have one entry per column.
Behavior qbr(const Game& g, const Behavior& opp, double precision);

// Truncated level weights D(0..max_level).
// Poisson: D(k) proportional to rate^k / k!, renormalized over the
// truncated support. Histogram: softmax of free logits.
Vector poisson_levels(double rate, int max_level);
Vector histogram_levels(const Vector& logits);

}  // namespace bgt
