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

#include "bgt/gamenet.hpp"

#include <cmath>

namespace bgt {

std::vector<Matrix> pool_channels(const std::vector<Matrix>& channels) {
  std::vector<Matrix> pooled;
  pooled.reserve(3 * channels.size());
  for (const Matrix& h : channels) pooled.push_back(h);
  for (const Matrix& h : channels) {
    pooled.push_back(h.rowwise().maxCoeff().replicate(1, h.cols()));
  }
  for (const Matrix& h : channels) {
    pooled.push_back(h.colwise().maxCoeff().replicate(h.rows(), 1));
  }
  return pooled;
}

void init_feature_params(const std::string& prefix, int in_channels,
                         const FeatureLayerConfig& config,
                         std::mt19937_64& rng, ParameterSet* out) {
  if (config.widths.empty()) {
    throw BadConstants("feature stack needs at least one layer");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  int prev = in_channels;
  for (std::size_t l = 0; l < config.widths.size(); ++l) {
    const int width = config.widths[l];
    if (width < 1) throw BadConstants("layer width must be positive");
    const int fan_in = 3 * prev;
    const double sd = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Param w;
    w.value.resize(width, fan_in);
    for (Eigen::Index i = 0; i < w.value.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.value.cols(); ++j) {
        w.value(i, j) = sd * gauss(rng);
      }
    }
    w.l1_penalized = true;
    Param b;
    b.value = Matrix::Zero(width, 1);
    const std::string idx = std::to_string(l + 1);
    (*out)[prefix + ".w" + idx] = std::move(w);
    (*out)[prefix + ".b" + idx] = std::move(b);
    prev = width;
  }
  Param mix;
  mix.value = Matrix::Constant(prev, 1, 1.0 / static_cast<double>(prev));
  mix.constraint = Constraint::kSimplex;
  (*out)[prefix + ".out"] = std::move(mix);
}

NodeId build_feature_stack(Tape& tape, const std::string& prefix,
                           const FeatureLayerConfig& config,
                           const std::vector<NodeId>& input_channels,
                           const FeatureBuildOptions& opts) {
  if (config.widths.empty()) {
    throw BadConstants("feature stack needs at least one layer");
  }
  const bool drop = opts.training && opts.dropout > 0.0;
  if (drop && opts.rng == nullptr) {
    throw Error("dropout requires an rng");
  }
  std::vector<NodeId> channels = input_channels;
  for (std::size_t l = 0; l < config.widths.size(); ++l) {
    std::vector<NodeId> pooled;
    pooled.reserve(3 * channels.size());
    for (NodeId c : channels) pooled.push_back(c);
    for (NodeId c : channels) pooled.push_back(tape.rowmax(c));
    for (NodeId c : channels) pooled.push_back(tape.colmax(c));

    const std::string idx = std::to_string(l + 1);
    const NodeId w = tape.parameter(prefix + ".w" + idx);
    const NodeId b = tape.parameter(prefix + ".b" + idx);
    std::vector<NodeId> next(config.widths[l]);
    for (int c = 0; c < config.widths[l]; ++c) {
      NodeId h = tape.relu(tape.channel_combine(w, b, c, pooled));
      if (drop) {
        std::bernoulli_distribution dropped(opts.dropout);
        const double scale =
            dropped(*opts.rng) ? 0.0 : 1.0 / (1.0 - opts.dropout);
        h = tape.affine(h, scale, 0.0);
      }
      next[c] = h;
    }
    channels = std::move(next);
  }
  std::vector<NodeId> distributions;
  distributions.reserve(channels.size());
  for (NodeId c : channels) {
    distributions.push_back(tape.softmax(tape.rowsum(c)));
  }
  return tape.mix(tape.parameter(prefix + ".out"), distributions);
}

Behavior feature_forward(const FeatureLayerConfig& config,
                         const ParameterSet& params, const std::string& prefix,
                         const Game& g) {
  Tape tape(&params);
  const NodeId u1 = tape.constant(g.u1);
  const NodeId u2 = tape.constant(g.u2);
  const NodeId out = build_feature_stack(tape, prefix, config, {u1, u2},
                                         FeatureBuildOptions{});
  tape.forward();
  return tape.value(out);
}

CertificateModel theorem31_certificate(double cmax, double cgap,
                                       bool negative_payoffs) {
  if (cmax <= 0.0 || cgap <= 0.0) {
    throw BadConstants("certificate constants must be positive");
  }
  CertificateModel cert;
  cert.config.widths = {2, 2, 1};

  // Pooled unit order per layer: [channels, rowmax of each, colmax of
  // each]. Layer 1 sees [U1, U2, rmax U1, rmax U2, cmax U1, cmax U2].
  //
  // Channel 1 copies the row player's payoffs; channel 2 extracts the
  // column player's best payoff per column. The shifted variant adds
  // cmax to both so the relus pass the values through unchanged.
  Matrix w1 = Matrix::Zero(2, 6);
  w1(0, 0) = 1.0;
  w1(1, 5) = 1.0;
  Matrix b1 = Matrix::Zero(2, 1);
  if (negative_payoffs) {
    b1(0, 0) = cmax;
    b1(1, 0) = cmax;
  }

  // Channel 2 becomes the indicator of the opponent's favorite column:
  // relu((colbest - globalbest)/cgap + 1) is 1 there and 0 elsewhere,
  // because distinct payoffs differ by at least cgap.
  Matrix w2 = Matrix::Zero(2, 6);
  w2(0, 0) = 1.0;
  w2(1, 1) = 1.0 / cgap;
  w2(1, 3) = -1.0 / cgap;
  Matrix b2 = Matrix::Zero(2, 1);
  b2(1, 0) = 1.0;

  // Keeps the row player's payoffs inside the indicated column and
  // drives everything else to zero. The shifted variant needs a bias of
  // 2*cmax to cancel the worst case u1 + cmax.
  const double gate = negative_payoffs ? 2.0 * cmax : cmax;
  Matrix w3 = Matrix::Zero(1, 6);
  w3(0, 0) = 1.0;
  w3(0, 1) = gate;
  Matrix b3 = Matrix::Zero(1, 1);
  b3(0, 0) = -gate;

  auto set = [&cert](const std::string& name, Matrix value, bool l1,
                     Constraint constraint) {
    Param p;
    p.value = std::move(value);
    p.l1_penalized = l1;
    p.constraint = constraint;
    cert.params[name] = std::move(p);
  };
  set(cert.prefix + ".w1", std::move(w1), true, Constraint::kFree);
  set(cert.prefix + ".b1", std::move(b1), false, Constraint::kFree);
  set(cert.prefix + ".w2", std::move(w2), true, Constraint::kFree);
  set(cert.prefix + ".b2", std::move(b2), false, Constraint::kFree);
  set(cert.prefix + ".w3", std::move(w3), true, Constraint::kFree);
  set(cert.prefix + ".b3", std::move(b3), false, Constraint::kFree);
  set(cert.prefix + ".out", Matrix::Ones(1, 1), false, Constraint::kSimplex);
  return cert;
}

}  // namespace bgt
