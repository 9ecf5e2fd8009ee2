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

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "bgt/common.hpp"

namespace bgt {

// How the optimizer must treat a parameter tensor.
//  kFree:     unconstrained.
//  kSimplex:  projected onto the probability simplex after every step.
//  kLogSpace: unconstrained; consumers exponentiate it, so the stored
//             value is a logarithm and must stay finite.
enum class Constraint { kFree, kSimplex, kLogSpace };

struct Param {
  Matrix value;
  Constraint constraint = Constraint::kFree;
  // True only for network weight matrices; the L1 penalty never touches
  // biases, mixing weights, potential coefficients or QCH parameters.
  bool l1_penalized = false;
};

// Parameters are addressed by name. std::map keeps iteration order
// deterministic, which the optimizer and the serializers rely on.
using ParameterSet = std::map<std::string, Param>;
using GradientMap = std::map<std::string, Matrix>;

using NodeId = int;

// Reverse-mode differentiation over a small fixed op vocabulary. All
// values are dense double matrices; column vectors are n x 1 and
// scalars 1 x 1. Nodes are created in topological order, forward()
// evaluates them in creation order and backward(root) accumulates
// adjoints in reverse. The tape reads parameter values through the
// ParameterSet it was constructed with, so callers can update
// parameters in place and re-run forward() without rebuilding.
//
// Nondifferentiable points follow fixed conventions: relu and |.| use
// subgradient 0 at the kink, and rowmax/colmax route all gradient to
// the lowest-index maximizer.
class Tape {
 public:
  explicit Tape(const ParameterSet* params) : params_(params) {}

  NodeId constant(Matrix value);
  // Dedupes by name: asking for the same parameter twice returns the
  // same node. Throws Error when the name is missing from the set.
  NodeId parameter(const std::string& name);

  NodeId add(NodeId a, NodeId b);
  NodeId sub(NodeId a, NodeId b);
  // scale * a + shift, both compile-time constants of the graph.
  NodeId affine(NodeId a, double scale, double shift);
  // sum_i coeffs[i] * xs[i] over same-shaped inputs.
  NodeId lincomb(const std::vector<NodeId>& xs,
                 const std::vector<double>& coeffs);
  NodeId relu(NodeId a);
  NodeId exp(NodeId a);
  NodeId square(NodeId a);
  // Every entry of row i becomes max_j a(i,j); colmax transposes the
  // roles. Shape is preserved.
  NodeId rowmax(NodeId a);
  NodeId colmax(NodeId a);
  NodeId rowsum(NodeId a);  // n x m -> n x 1
  NodeId sum(NodeId a);     // -> 1 x 1
  NodeId abs_sum(NodeId a); // -> 1 x 1
  // Numerically stable softmax of a column vector.
  NodeId softmax(NodeId v);
  NodeId matvec(NodeId a, NodeId v);
  // a * s and a / s where s is 1 x 1.
  NodeId mul_scalar(NodeId a, NodeId s);
  NodeId div_scalar(NodeId a, NodeId s);
  // sum_k w(c,k) * inputs[k] + b(c): one output channel of a pooled
  // feature layer. w is C x K, b is C x 1, 0 <= c < C.
  NodeId channel_combine(NodeId w, NodeId b, int channel,
                         const std::vector<NodeId>& inputs);
  // sum_k w(k) * inputs[k] using the first inputs.size() entries of w.
  NodeId mix(NodeId w, const std::vector<NodeId>& inputs);
  // Like mix but renormalized by sum_k w(k); falls back to inputs[0]
  // when that sum is not positive.
  NodeId normalized_mix(NodeId w, const std::vector<NodeId>& inputs);
  // (theta(0) * own + theta(1) * other) / ||theta||. theta is a 2 x 1
  // node; own/other are fixed payoff matrices. Throws ZeroCoefficients
  // at forward() when theta is exactly (0,0).
  NodeId linear_potential(NodeId theta, Matrix own, Matrix other);

  void forward();
  // Root must be 1 x 1 (NotScalarRoot otherwise) and forward() must
  // have run since the last structural change.
  void backward(NodeId root);

  const Matrix& value(NodeId id) const { return nodes_[id].value; }
  Eigen::Index rows(NodeId id) const { return nodes_[id].r; }
  Eigen::Index cols(NodeId id) const { return nodes_[id].c; }
  const GradientMap& gradients() const { return grads_; }
  std::size_t size() const { return nodes_.size(); }

  // Distance from the nearest nondifferentiable point seen during the
  // last forward(): min over relu/|.| inputs of |x| and over
  // rowmax/colmax rows(columns) of best-minus-runner-up. +inf when the
  // graph has no kinked ops.
  double min_kink_margin() const { return kink_margin_; }

 private:
  enum class Op {
    kConstant, kParameter, kAdd, kSub, kAffine, kLincomb, kRelu, kExp,
    kSquare, kRowmax, kColmax, kRowsum, kSum, kAbsSum, kSoftmax, kMatvec,
    kMulScalar, kDivScalar, kChannelCombine, kMix, kNormalizedMix,
    kLinearPotential,
  };

  struct Node {
    Op op;
    int r = 0, c = 0;
    std::vector<NodeId> in;
    std::vector<double> coeffs;
    double scale = 1.0, shift = 0.0;
    int channel = -1;
    double denom = 0.0;
    std::vector<int> arg;
    Matrix aux1, aux2;
    const Param* param = nullptr;
    std::string pname;
    bool needs_grad = false;
    Matrix value;
    Matrix adjoint;
  };

  NodeId push(Node n);
  const Node& at(NodeId id) const;
  void require_same_shape(NodeId a, NodeId b, const char* op) const;
  void require_scalar(NodeId s, const char* op) const;

  void eval(Node& n);
  void pull(const Node& n);  // adjoint of n into adjoints of n.in

  const ParameterSet* params_;
  std::vector<Node> nodes_;
  std::map<std::string, NodeId> param_nodes_;
  GradientMap grads_;
  double kink_margin_ = std::numeric_limits<double>::infinity();
  bool forwarded_ = false;
};

// Central-difference check of backward() at the current parameter
// values. Perturbs every coordinate of every parameter by +-eps,
// reruns forward() and compares (L+ - L-) / 2eps against the analytic
// gradient. The relative error denominator is max(1, |fd|, |analytic|).
// `params` must be the set the tape reads from.
struct GradCheckResult {
  double max_rel_err = 0.0;
  std::string worst_coordinate;
};
GradCheckResult grad_check(Tape& tape, NodeId root, ParameterSet& params,
                           double eps);

}  // namespace bgt
