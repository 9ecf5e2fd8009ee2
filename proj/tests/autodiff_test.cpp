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

#include "bgt/autodiff.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "bgt/common.hpp"

namespace bgt {
namespace {

Param free_param(Matrix v) {
  Param p;
  p.value = std::move(v);
  return p;
}

TEST_CASE("square gradient is 2x") {
  ParameterSet params;
  Matrix w(2, 2);
  w << 1, 2, 3, 4;
  params["w"] = free_param(w);
  Tape tape(&params);
  NodeId loss = tape.sum(tape.square(tape.parameter("w")));
  tape.forward();
  CHECK(tape.value(loss)(0, 0) == doctest::Approx(30.0));
  tape.backward(loss);
  CHECK((tape.gradients().at("w") - 2.0 * w).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("relu subgradient at the kink is zero") {
  ParameterSet params;
  params["x"] = free_param(Matrix::Zero(1, 3));
  params.at("x").value << -0.5, 0.0, 0.5;
  Tape tape(&params);
  NodeId loss = tape.sum(tape.relu(tape.parameter("x")));
  tape.forward();
  CHECK(tape.value(loss)(0, 0) == doctest::Approx(0.5));
  CHECK(tape.min_kink_margin() == 0.0);  // an input sits exactly on 0
  tape.backward(loss);
  Matrix want(1, 3);
  want << 0, 0, 1;
  CHECK(tape.gradients().at("x") == want);
}

TEST_CASE("rowmax and colmax route ties to the lowest index") {
  ParameterSet params;
  Matrix x(2, 2);
  x << 2, 2,
       3, 1;
  params["x"] = free_param(x);
  Tape tape(&params);
  NodeId rm = tape.rowmax(tape.parameter("x"));
  NodeId loss = tape.sum(rm);
  tape.forward();
  Matrix want_val(2, 2);
  want_val << 2, 2, 3, 3;
  CHECK(tape.value(rm) == want_val);
  tape.backward(loss);
  // Row 0 is tied: both pooled entries credit column 0.
  Matrix want_grad(2, 2);
  want_grad << 2, 0,
               2, 0;
  CHECK(tape.gradients().at("x") == want_grad);

  Tape tape2(&params);
  NodeId loss2 = tape2.sum(tape2.colmax(tape2.parameter("x")));
  tape2.forward();
  tape2.backward(loss2);
  Matrix want2(2, 2);
  want2 << 0, 2,
           2, 0;
  CHECK(tape2.gradients().at("x") == want2);
}

TEST_CASE("abs_sum uses sign(0) = 0") {
  ParameterSet params;
  params["x"] = free_param(Matrix::Zero(1, 3));
  params.at("x").value << 0.0, -2.0, 1.5;
  Tape tape(&params);
  NodeId loss = tape.abs_sum(tape.parameter("x"));
  tape.forward();
  CHECK(tape.value(loss)(0, 0) == doctest::Approx(3.5));
  tape.backward(loss);
  Matrix want(1, 3);
  want << 0, -1, 1;
  CHECK(tape.gradients().at("x") == want);
}

TEST_CASE("softmax matches the closed form") {
  ParameterSet params;
  params["v"] = free_param(Matrix::Zero(2, 1));
  params.at("v").value << 0.5, 0.0;
  Tape tape(&params);
  NodeId s = tape.softmax(tape.parameter("v"));
  tape.forward();
  const double e = std::exp(0.5);
  CHECK(tape.value(s)(0, 0) == doctest::Approx(e / (e + 1.0)).epsilon(1e-15));
  CHECK(tape.value(s)(0, 0) == doctest::Approx(0.6224593312018546).epsilon(1e-15));
  CHECK(tape.value(s)(0, 0) + tape.value(s)(1, 0) == doctest::Approx(1.0));

  // Invariant under constant shifts, including large ones.
  params.at("v").value.array() += 700.0;
  tape.forward();
  CHECK(tape.value(s)(0, 0) == doctest::Approx(0.6224593312018546).epsilon(1e-12));
}

TEST_CASE("matvec, scalar ops and affine compose") {
  ParameterSet params;
  Matrix a(2, 2);
  a << 1, 2, 3, 4;
  params["a"] = free_param(a);
  Tape tape(&params);
  NodeId v = tape.constant((Matrix(2, 1) << 5, 6).finished());
  NodeId mv = tape.matvec(tape.parameter("a"), v);
  NodeId scaled = tape.affine(mv, 2.0, -1.0);
  tape.forward();
  CHECK(tape.value(mv)(0, 0) == 17.0);
  CHECK(tape.value(mv)(1, 0) == 39.0);
  CHECK(tape.value(scaled)(0, 0) == 33.0);
  CHECK(tape.value(scaled)(1, 0) == 77.0);

  NodeId denom = tape.constant(Matrix::Constant(1, 1, 4.0));
  NodeId d = tape.div_scalar(scaled, denom);
  NodeId m = tape.mul_scalar(d, denom);
  tape.forward();
  CHECK(tape.value(d)(1, 0) == doctest::Approx(77.0 / 4.0));
  CHECK(tape.value(m)(1, 0) == doctest::Approx(77.0));
}

TEST_CASE("normalized_mix falls back when weights sum to zero") {
  ParameterSet params;
  params["w"] = free_param(Matrix::Zero(2, 1));
  Tape tape(&params);
  NodeId a = tape.constant(Matrix::Constant(2, 1, 3.0));
  NodeId b = tape.constant(Matrix::Constant(2, 1, 9.0));
  NodeId out = tape.normalized_mix(tape.parameter("w"), {a, b});
  tape.forward();
  CHECK(tape.value(out) == Matrix::Constant(2, 1, 3.0));

  params.at("w").value << 1.0, 3.0;
  tape.forward();
  CHECK(tape.value(out)(0, 0) == doctest::Approx(0.25 * 3.0 + 0.75 * 9.0));
}

TEST_CASE("linear_potential normalizes by the coefficient norm") {
  ParameterSet params;
  params["theta"] = free_param((Matrix(2, 1) << 3.0, 4.0).finished());
  Tape tape(&params);
  Matrix own = Matrix::Constant(1, 1, 1.0);
  Matrix other = Matrix::Constant(1, 1, 1.0);
  NodeId pot = tape.linear_potential(tape.parameter("theta"), own, other);
  tape.forward();
  CHECK(tape.value(pot)(0, 0) == doctest::Approx(1.4).epsilon(1e-15));

  // Scaling theta does not change the potential.
  params.at("theta").value *= 10.0;
  tape.forward();
  CHECK(tape.value(pot)(0, 0) == doctest::Approx(1.4).epsilon(1e-15));

  params.at("theta").value.setZero();
  CHECK_THROWS_AS(tape.forward(), ZeroCoefficients);
}

TEST_CASE("shape and root validation") {
  ParameterSet params;
  params["a"] = free_param(Matrix::Zero(2, 2));
  params["v"] = free_param(Matrix::Zero(3, 1));
  Tape tape(&params);
  NodeId a = tape.parameter("a");
  NodeId v = tape.parameter("v");
  CHECK_THROWS_AS(tape.add(a, v), ShapeMismatch);
  CHECK_THROWS_AS(tape.matvec(a, v), ShapeMismatch);
  CHECK_THROWS_AS(tape.softmax(a), ShapeMismatch);
  tape.forward();
  CHECK_THROWS_AS(tape.backward(a), NotScalarRoot);
  CHECK_THROWS_AS(tape.parameter("missing"), Error);
}

TEST_CASE("parameter nodes dedupe and reread updated values") {
  ParameterSet params;
  params["w"] = free_param(Matrix::Constant(1, 1, 2.0));
  Tape tape(&params);
  NodeId w1 = tape.parameter("w");
  NodeId w2 = tape.parameter("w");
  CHECK(w1 == w2);
  NodeId loss = tape.sum(tape.square(w1));
  tape.forward();
  CHECK(tape.value(loss)(0, 0) == 4.0);
  params.at("w").value(0, 0) = 5.0;
  tape.forward();
  CHECK(tape.value(loss)(0, 0) == 25.0);
  tape.backward(loss);
  CHECK(tape.gradients().at("w")(0, 0) == 10.0);
}

TEST_CASE("constants carry no gradient") {
  ParameterSet params;
  params["w"] = free_param(Matrix::Constant(1, 1, 2.0));
  Tape tape(&params);
  NodeId c = tape.constant(Matrix::Constant(1, 1, 7.0));
  NodeId loss = tape.sum(tape.add(tape.square(tape.parameter("w")), c));
  tape.forward();
  tape.backward(loss);
  CHECK(tape.gradients().size() == 1);
  CHECK(tape.gradients().count("w") == 1);
}

TEST_CASE("kink margin tracks the nearest nondifferentiable point") {
  ParameterSet params;
  params["x"] = free_param((Matrix(1, 2) << 1.0, 0.7).finished());
  Tape tape(&params);
  tape.sum(tape.rowmax(tape.parameter("x")));
  tape.forward();
  CHECK(tape.min_kink_margin() == doctest::Approx(0.3));

  // A smooth graph reports an infinite margin.
  Tape smooth(&params);
  smooth.sum(smooth.square(smooth.parameter("x")));
  smooth.forward();
  CHECK(std::isinf(smooth.min_kink_margin()));
}

TEST_CASE("exact zero plateaus in pooling do not count as kinks") {
  // Dead relu cells produce exact zero ties under rowmax; those are
  // stable plateaus, not finite-difference hazards.
  ParameterSet params;
  params["x"] = free_param((Matrix(1, 2) << -1.0, -2.0).finished());
  Tape tape(&params);
  tape.sum(tape.rowmax(tape.relu(tape.parameter("x"))));
  tape.forward();
  CHECK(tape.min_kink_margin() == 1.0);  // from the relu inputs only
}

TEST_CASE("grad_check agrees with finite differences on a composite graph") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd;
  ParameterSet params;
  Matrix w(3, 3), b(3, 1), theta(2, 1), mixw(2, 1);
  for (int i = 0; i < w.size(); ++i) w(i) = nd(rng);
  for (int i = 0; i < 3; ++i) b(i) = nd(rng);
  theta << 1.2, -0.7;
  mixw << 0.6, 0.4;
  params["w"] = free_param(w);
  params["b"] = free_param(b);
  params["theta"] = free_param(theta);
  params["mix"] = free_param(mixw);

  Matrix own(3, 3), other(3, 3);
  for (int i = 0; i < own.size(); ++i) {
    own(i) = nd(rng);
    other(i) = nd(rng);
  }

  Tape tape(&params);
  NodeId pot = tape.linear_potential(tape.parameter("theta"), own, other);
  NodeId pooled1 = tape.rowmax(pot);
  NodeId pooled2 = tape.colmax(pot);
  NodeId h = tape.channel_combine(tape.parameter("w"), tape.parameter("b"), 0,
                                  {pot, pooled1, pooled2});
  NodeId act = tape.relu(h);
  NodeId scores = tape.rowsum(act);
  NodeId probs = tape.softmax(scores);
  NodeId alt = tape.softmax(tape.rowsum(tape.exp(tape.affine(pot, 0.3, 0.1))));
  NodeId mixed = tape.normalized_mix(tape.parameter("mix"), {probs, alt});
  NodeId penalty = tape.abs_sum(tape.parameter("w"));
  NodeId loss = tape.add(tape.sum(tape.square(mixed)),
                         tape.mul_scalar(penalty, tape.constant(Matrix::Constant(1, 1, 1e-3))));
  tape.forward();
  REQUIRE(tape.min_kink_margin() > 1e-4);
  GradCheckResult rc = grad_check(tape, loss, params, 1e-6);
  CHECK(rc.max_rel_err < 1e-7);
}

}  // namespace
}  // namespace bgt
