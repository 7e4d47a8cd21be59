// Copyright 2026 The EikGCRL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "eikgcrl/checks/finite_difference.h"
#include "eikgcrl/diffcore/adam.h"
#include "eikgcrl/diffcore/checkpoint.h"
#include "eikgcrl/diffcore/dual.h"
#include "eikgcrl/diffcore/mlp.h"
#include "eikgcrl/diffcore/tape.h"
#include "eikgcrl/errors.h"

namespace eikgcrl::diffcore {
namespace {

using checks::CentralDifferenceAt;
using checks::CentralDifferenceGrad;
using checks::MaxRelativeError;

Matrix RandomMatrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng,
                    double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
  return m;
}

// Perturbs biases away from zero so they carry gradient signal in checks.
ParameterSet RandomParams(const MlpSpec& spec, std::uint64_t seed) {
  ParameterSet p = InitParams(spec, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t i = 0; i < p.size(); ++i) {
    p.mutable_values(i) += RandomMatrix(p.values(i).rows(), p.values(i).cols(),
                                        rng, 0.1);
  }
  return p;
}

MlpSpec SmallSpec(int in, Activation act = Activation::kTanh) {
  MlpSpec spec;
  spec.input_dim = in;
  spec.hidden_dims = {5, 4};
  spec.output_dim = 1;
  spec.activation = act;
  return spec;
}

TEST(InitParamsTest, DeterministicForSeed) {
  MlpSpec spec{2, {4}, 1, Activation::kTanh};
  EXPECT_EQ(InitParams(spec, 7), InitParams(spec, 7));
}

TEST(InitParamsTest, BiasesAreZero) {
  MlpSpec spec{3, {8, 6}, 2, Activation::kSoftplus};
  ParameterSet p = InitParams(spec, 11);
  for (const auto& e : p.entries()) {
    if (e.name[0] == 'b') {
      EXPECT_TRUE(e.values.isZero(0.0)) << e.name;
    }
  }
}

TEST(InitParamsTest, SeedSensitive) {
  MlpSpec spec{2, {4}, 1, Activation::kTanh};
  EXPECT_GT(MaxAbsDifference(InitParams(spec, 7), InitParams(spec, 8)), 0.0);
}

TEST(InitParamsTest, FanInScaledBounds) {
  MlpSpec spec{16, {32}, 1, Activation::kTanh};
  ParameterSet p = InitParams(spec, 3);
  EXPECT_LE(p.values("w0").cwiseAbs().maxCoeff(), std::sqrt(3.0 / 16));
  EXPECT_LE(p.values("w1").cwiseAbs().maxCoeff(), std::sqrt(3.0 / 32));
}

TEST(ForwardTest, ZeroNetworkGivesZero) {
  MlpSpec spec{3, {4, 4}, 2, Activation::kTanh};
  ParameterSet p = InitParams(spec, 1).ZerosLike();
  Matrix x = Matrix::Random(5, 3);
  EXPECT_TRUE(Forward(p, spec, x).isZero(0.0));
}

TEST(ForwardTest, IdentityLinearNetwork) {
  MlpSpec spec{1, {}, 1, Activation::kTanh};
  ParameterSet p;
  p.Add("w0", {1, 1}, Matrix::Ones(1, 1));
  p.Add("b0", {1}, Matrix::Zero(1, 1));
  Vector x(1);
  x << 2.5;
  EXPECT_EQ(Forward(p, spec, x)(0), 2.5);
}

TEST(ForwardTest, Deterministic) {
  MlpSpec spec = SmallSpec(4);
  ParameterSet p = InitParams(spec, 5);
  Matrix x = Matrix::Random(3, 4);
  Matrix a = Forward(p, spec, x);
  Matrix b = Forward(p, spec, x);
  EXPECT_EQ(0, std::memcmp(a.data(), b.data(), sizeof(double) * a.size()));
}

TEST(ForwardTest, RejectsWrongWidthAndNonFinite) {
  MlpSpec spec = SmallSpec(4);
  ParameterSet p = InitParams(spec, 5);
  EXPECT_THROW(Forward(p, spec, Matrix(Matrix::Zero(2, 3))), InvalidArgument);
  Matrix bad = Matrix::Zero(2, 4);
  bad(1, 2) = std::nan("");
  EXPECT_THROW(Forward(p, spec, bad), NumericalError);
}

TEST(ForwardTest, TapeMatchesPlainEvaluation) {
  for (Activation act : {Activation::kTanh, Activation::kSoftplus,
                         Activation::kRelu}) {
    MlpSpec spec = SmallSpec(3, act);
    ParameterSet p = RandomParams(spec, 21);
    Matrix x = Matrix::Random(6, 3);
    Tape tape;
    MlpTrace trace = MlpForward(BindParams(tape, p, spec, true), spec,
                                tape.Constant(x));
    EXPECT_LT((trace.out.value() - Forward(p, spec, x)).norm(), 1e-14);
  }
}

TEST(GradParamsTest, SumOfSquares) {
  MlpSpec spec{3, {4}, 2, Activation::kTanh};
  ParameterSet p = RandomParams(spec, 2);
  LossAndGrad lg = GradParams(
      [](Tape&, std::span<const Var> params) {
        Var total = Sum(Square(params[0]));
        for (std::size_t i = 1; i < params.size(); ++i) {
          total = total + Sum(Square(params[i]));
        }
        return total;
      },
      p);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_LT((lg.grad.values(i) - 2.0 * p.values(i)).norm(), 1e-14);
  }
}

// Squared-error regression loss on a random batch; the oracle evaluates it
// with the plain (tape-free) forward pass.
TEST(GradParamsTest, MatchesCentralDifferencesOnRandomNets) {
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    std::mt19937_64 rng(1000 + c);
    const Activation act = c % 2 ? Activation::kSoftplus : Activation::kTanh;
    MlpSpec spec{3, {6, 5}, 1, act};
    ParameterSet p = RandomParams(spec, 1000 + c);
    Matrix x = RandomMatrix(7, 3, rng);
    Matrix y = RandomMatrix(7, 1, rng);
    LossAndGrad lg = GradParams(
        [&](Tape& tape, std::span<const Var> leaves) {
          MlpVars vars;
          for (int l = 0; l < spec.num_layers(); ++l) {
            vars.weights.push_back(leaves[2 * l]);
            vars.biases.push_back(leaves[2 * l + 1]);
          }
          Var out = MlpForward(vars, spec, tape.Constant(x)).out;
          return Mean(Square(Sub(out, tape.Constant(y))));
        },
        p);
    ParameterSet fd = CentralDifferenceGrad(
        [&](const ParameterSet& q) {
          return (Forward(q, spec, x) - y).array().square().mean();
        },
        p);
    worst = std::max(worst, MaxRelativeError(lg.grad, fd));
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(GradParamsTest, StopGradientBlocksTargetBranch) {
  MlpSpec spec = SmallSpec(2);
  ParameterSet online = RandomParams(spec, 1);
  ParameterSet target = RandomParams(spec, 2);
  ParameterSet both;
  both.Merge(online, "online/");
  both.Merge(target, "target/");
  Matrix x = Matrix::Random(4, 2);
  LossAndGrad lg = GradParams(
      [&](Tape& tape, std::span<const Var> leaves) {
        MlpVars on, tg;
        for (int l = 0; l < spec.num_layers(); ++l) {
          on.weights.push_back(leaves[2 * l]);
          on.biases.push_back(leaves[2 * l + 1]);
          tg.weights.push_back(leaves[2 * spec.num_layers() + 2 * l]);
          tg.biases.push_back(leaves[2 * spec.num_layers() + 2 * l + 1]);
        }
        Var xv = tape.Constant(x);
        Var v = MlpForward(on, spec, xv).out;
        Var t = StopGradient(MlpForward(tg, spec, xv).out);
        return Mean(Square(Sub(AddScalar(t, -1.0), v)));
      },
      both);
  ParameterSet tgrad = lg.grad.WithPrefixStripped("target/");
  ParameterSet ograd = lg.grad.WithPrefixStripped("online/");
  for (std::size_t i = 0; i < tgrad.size(); ++i) {
    EXPECT_TRUE(tgrad.values(i).isZero(0.0));
  }
  EXPECT_GT(ograd.values("w0").norm(), 0.0);
}

TEST(GradParamsTest, UnsupportedPrimitiveOnDifferentiablePath) {
  ParameterSet p;
  p.Add("w", {3}, Matrix::Constant(1, 3, 0.5));
  EXPECT_THROW(GradParams([](Tape&, std::span<const Var> leaves) {
                 return Sum(Step(leaves[0]));
               },
               p),
               UnsupportedPrimitive);
  // Behind a stop-gradient the same primitive is fine.
  EXPECT_NO_THROW(GradParams(
      [](Tape&, std::span<const Var> leaves) {
        return Sum(Mul(StopGradient(Step(leaves[0])), leaves[0]));
      },
      p));
}

TEST(GradParamsTest, ClipSqrtExpLogPrimitivesMatchFiniteDifferences) {
  ParameterSet p;
  p.Add("a", {2, 3}, (Matrix(2, 3) << 0.3, -1.2, 2.5, 0.7, 1.1, -0.4).finished());
  p.Add("r", {3}, (Matrix(1, 3) << 0.9, 1.3, 0.6).finished());
  auto build = [](Tape& tape, Var a, Var r) {
    Var clipped = Clip(a, -1.0, 1.0);
    Var row = MulRow(clipped, Exp(r));
    Var s = Sqrt(AddScalar(Square(row), 0.5));
    Var col = SumCols(Log(AddScalar(s, 1.0)));
    Var t = MulCol(Sigmoid(Transpose(Transpose(row))), col);
    (void)tape;
    return Mean(ConcatCols(Softplus(t), SliceCols(Tanh(a), 1, 2)));
  };
  LossAndGrad lg = GradParams(
      [&](Tape& tape, std::span<const Var> v) { return build(tape, v[0], v[1]); },
      p);
  ParameterSet fd = CentralDifferenceGrad(
      [&](const ParameterSet& q) {
        Tape tape;
        return build(tape, tape.Constant(q.values(0)), tape.Constant(q.values(1)))
            .scalar();
      },
      p);
  EXPECT_LT(MaxRelativeError(lg.grad, fd), 1e-6);
}

TEST(GradInputTest, LinearHeadGivesWeights) {
  MlpSpec spec{4, {}, 1, Activation::kTanh};
  ParameterSet p;
  p.Add("w0", {4, 1}, (Matrix(4, 1) << 0.6, -0.8, 0.3, 0.1).finished());
  p.Add("b0", {1}, Matrix::Constant(1, 1, 0.2));
  Matrix s = Matrix::Random(5, 2);
  Matrix g = Matrix::Random(5, 2);
  Matrix grad = GradInput(p, spec, s, g);
  ASSERT_EQ(grad.cols(), 2);
  for (Eigen::Index i = 0; i < grad.rows(); ++i) {
    EXPECT_DOUBLE_EQ(grad(i, 0), 0.6);
    EXPECT_DOUBLE_EQ(grad(i, 1), -0.8);
  }
}

TEST(GradInputTest, MatchesCentralDifferencesInState) {
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    std::mt19937_64 rng(50 + c);
    MlpSpec spec = SmallSpec(4, c % 2 ? Activation::kSoftplus
                                      : Activation::kTanh);
    ParameterSet p = RandomParams(spec, 50 + c);
    Matrix s = RandomMatrix(3, 2, rng);
    Matrix g = RandomMatrix(3, 2, rng);
    Matrix grad = GradInput(p, spec, s, g);
    ASSERT_EQ(grad.cols(), s.cols());
    Matrix fd = CentralDifferenceGrad(
        [&](const Matrix& sp) {
          Matrix x(sp.rows(), 4);
          x << sp, g;
          return Forward(p, spec, x).sum();
        },
        s);
    worst = std::max(worst, MaxRelativeError(grad, fd));
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(GradInputTest, AgreesWithForwardModeDual) {
  MlpSpec spec = SmallSpec(3, Activation::kSoftplus);
  ParameterSet p = RandomParams(spec, 9);
  Matrix x = Matrix::Random(6, 3);
  Matrix dir = Matrix::Random(6, 3);
  Dual out = ForwardDual(p, spec, Dual(x, dir));
  Matrix grad = InputGradient(p, spec, x);
  Matrix jvp = grad.cwiseProduct(dir).rowwise().sum();
  EXPECT_LT((out.tangent() - jvp).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((out.primal() - Forward(p, spec, x)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DualTest, RejectsShapeMismatch) {
  EXPECT_THROW(Dual(Matrix::Zero(2, 2), Matrix::Zero(2, 3)), InvalidArgument);
}

Var EikonalStylePenalty(Tape& tape, Var grad_s) {
  Var norm = Sqrt(AddScalar(SumCols(Square(grad_s)), 1e-12));
  (void)tape;
  return Square(AddScalar(norm, -1.0));
}

TEST(InputGradPenaltyTest, LinearAnalyticGradient) {
  MlpSpec spec{4, {}, 1, Activation::kTanh};
  ParameterSet p;
  p.Add("w0", {4, 1}, (Matrix(4, 1) << 1.2, -0.5, 0.7, 0.4).finished());
  p.Add("b0", {1}, Matrix::Zero(1, 1));
  Matrix s = Matrix::Random(3, 2);
  Matrix g = Matrix::Random(3, 2);
  LossAndGrad lg = GradParamsThroughInputGrad(p, spec, s, g, EikonalStylePenalty);
  const double n = std::sqrt(1.2 * 1.2 + 0.5 * 0.5 + 1e-12);
  EXPECT_NEAR(lg.loss, (n - 1) * (n - 1), 1e-12);
  EXPECT_NEAR(lg.grad.values("w0")(0, 0), 2 * (n - 1) * 1.2 / n, 1e-12);
  EXPECT_NEAR(lg.grad.values("w0")(1, 0), 2 * (n - 1) * -0.5 / n, 1e-12);
  EXPECT_EQ(lg.grad.values("w0")(2, 0), 0.0);
  EXPECT_EQ(lg.grad.values("w0")(3, 0), 0.0);
  EXPECT_EQ(lg.grad.values("b0")(0, 0), 0.0);
}

TEST(InputGradPenaltyTest, UnitGradientGivesZeroGradient) {
  MlpSpec spec{4, {}, 1, Activation::kTanh};
  ParameterSet p;
  p.Add("w0", {4, 1}, (Matrix(4, 1) << 0.6, 0.8, -2.0, 3.0).finished());
  p.Add("b0", {1}, Matrix::Zero(1, 1));
  LossAndGrad lg = GradParamsThroughInputGrad(
      p, spec, Matrix::Random(5, 2), Matrix::Random(5, 2),
      [](Tape& tape, Var grad_s) {
        (void)tape;
        Var norm = Sqrt(SumCols(Square(grad_s)));
        return Square(AddScalar(norm, -1.0));
      });
  EXPECT_NEAR(lg.loss, 0.0, 1e-15);
  for (std::size_t i = 0; i < lg.grad.size(); ++i) {
    EXPECT_LT(lg.grad.values(i).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(InputGradPenaltyTest, MatchesCentralDifferencesOnRandomNets) {
  double worst = 0.0;
  int checked = 0;
  for (int c = 0; c < 100; ++c) {
    std::mt19937_64 rng(300 + c);
    MlpSpec spec = SmallSpec(4, c % 2 ? Activation::kSoftplus
                                      : Activation::kTanh);
    ParameterSet p = RandomParams(spec, 300 + c);
    Matrix s = RandomMatrix(8, 2, rng);
    Matrix g = RandomMatrix(8, 2, rng);
    LossAndGrad lg = GradParamsThroughInputGrad(p, spec, s, g,
                                                EikonalStylePenalty);
    auto penalty = [&](const ParameterSet& q) {
      Matrix gs = GradInput(q, spec, s, g);
      Matrix norm = (gs.array().square().rowwise().sum() + 1e-12).sqrt();
      return (norm.array() - 1.0).square().mean();
    };
    EXPECT_NEAR(lg.loss, penalty(p), 1e-12);
    // Spot-check a few random coordinates per case.
    for (int k = 0; k < 3; ++k) {
      std::size_t e = std::uniform_int_distribution<std::size_t>(
          0, p.size() - 1)(rng);
      const Matrix& v = p.values(e);
      Eigen::Index r = std::uniform_int_distribution<Eigen::Index>(
          0, v.rows() - 1)(rng);
      Eigen::Index col = std::uniform_int_distribution<Eigen::Index>(
          0, v.cols() - 1)(rng);
      const double fd = CentralDifferenceAt(penalty, p, e, r, col);
      worst = std::max(worst,
                       checks::RelativeError(lg.grad.values(e)(r, col), fd));
      ++checked;
    }
  }
  EXPECT_GE(checked, 200);
  EXPECT_LT(worst, 1e-4);
}

TEST(InputGradPenaltyTest, RejectsPiecewiseLinearActivation) {
  MlpSpec spec = SmallSpec(4, Activation::kRelu);
  ParameterSet p = InitParams(spec, 1);
  EXPECT_THROW(GradParamsThroughInputGrad(p, spec, Matrix::Random(2, 2),
                                          Matrix::Random(2, 2),
                                          EikonalStylePenalty),
               InvalidArgument);
}

TEST(InputGradPenaltyTest, ReluSecondOrderHitsStepPrimitive) {
  // Bypassing validation, the recorded input gradient contains the ReLU
  // slope, which has no derivative rule.
  MlpSpec spec = SmallSpec(2, Activation::kRelu);
  ParameterSet p = RandomParams(spec, 4);
  Tape tape;
  MlpVars vars = BindParams(tape, p, spec, true);
  MlpTrace trace = MlpForward(vars, spec, tape.Constant(Matrix::Random(3, 2)));
  Var loss = Sum(Square(MlpInputGradient(vars, spec, trace)));
  std::vector<Var> flat = vars.Flat();
  EXPECT_THROW(tape.Gradients(loss, flat), UnsupportedPrimitive);
}

TEST(AdamTest, ZeroGradientLeavesParamsUnchanged) {
  MlpSpec spec = SmallSpec(2);
  ParameterSet p = RandomParams(spec, 3);
  ParameterSet before = p;
  AdamState state = AdamState::For(p);
  AdamStep(p, p.ZerosLike(), state, 3e-4);
  EXPECT_EQ(p, before);
}

TEST(AdamTest, FirstStepMovesByLearningRateAgainstGradientSign) {
  ParameterSet p;
  p.Add("x", {3}, (Matrix(1, 3) << 1.0, -2.0, 0.5).finished());
  ParameterSet g = p.ZerosLike();
  g.mutable_values(0) << 0.3, -4.0, 1e-3;
  AdamState state = AdamState::For(p);
  ParameterSet before = p;
  AdamStep(p, g, state, 3e-4);
  Matrix delta = p.values(0) - before.values(0);
  for (int j = 0; j < 3; ++j) {
    const double sign = g.values(0)(0, j) > 0 ? 1.0 : -1.0;
    EXPECT_NEAR(delta(0, j), -sign * 3e-4, 3e-4 * 1e-4);
  }
}

TEST(AdamTest, BitwiseDeterministic) {
  auto run = [] {
    MlpSpec spec = SmallSpec(2);
    ParameterSet p = RandomParams(spec, 8);
    AdamState state = AdamState::For(p);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 25; ++t) {
      ParameterSet g = p.ZerosLike();
      for (std::size_t i = 0; i < g.size(); ++i) {
        g.mutable_values(i) = RandomMatrix(g.values(i).rows(),
                                           g.values(i).cols(), rng);
      }
      AdamStep(p, g, state, 1e-3);
    }
    return p;
  };
  EXPECT_EQ(run(), run());
}

TEST(AdamTest, NanGradientAborts) {
  ParameterSet p;
  p.Add("x", {2}, Matrix::Ones(1, 2));
  ParameterSet g = p.ZerosLike();
  g.mutable_values(0)(0, 1) = std::nan("");
  AdamState state = AdamState::For(p);
  ParameterSet before = p;
  EXPECT_THROW(AdamStep(p, g, state, 1e-3), NumericalError);
  EXPECT_EQ(p, before);
  EXPECT_EQ(state.step, 0);
}

TEST(CheckpointTest, RoundTripIsBitExact) {
  MlpSpec spec{4, {7, 3}, 2, Activation::kTanh};
  ParameterSet p = RandomParams(spec, 12);
  p.mutable_values(0)(0, 0) = -0.0;
  p.mutable_values(1)(0, 1) = 1e-310;  // subnormal
  EXPECT_EQ(DeserializeCheckpoint(SerializeCheckpoint(p)), p);
}

TEST(CheckpointTest, LayoutMatchesFormat) {
  ParameterSet p;
  p.Add("ab", {2}, (Matrix(1, 2) << 1.0, -2.0).finished());
  const std::string bytes = SerializeCheckpoint(p);
  ASSERT_EQ(bytes.size(), 8u + 1 + 4 + 2 + 4 + 4 + 16);
  EXPECT_EQ(bytes.substr(0, 8), "EIKGCRL1");
  EXPECT_EQ(bytes[8], 1);
  EXPECT_EQ(bytes[9], 2);  // name length, little-endian
  EXPECT_EQ(bytes.substr(13, 2), "ab");
  EXPECT_EQ(bytes[15], 1);  // rank
  EXPECT_EQ(bytes[19], 2);  // dim
  double first;
  std::memcpy(&first, bytes.data() + 23, 8);
  EXPECT_EQ(first, 1.0);
}

TEST(CheckpointTest, CorruptionDetected) {
  ParameterSet p = InitParams(MlpSpec{2, {3}, 1, Activation::kTanh}, 1);
  const std::string good = SerializeCheckpoint(p);
  EXPECT_THROW(DeserializeCheckpoint(good.substr(0, good.size() - 3)),
               CorruptArtifact);
  EXPECT_THROW(DeserializeCheckpoint(good.substr(0, 5)), CorruptArtifact);
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(DeserializeCheckpoint(bad_magic), CorruptArtifact);
  std::string bad_version = good;
  bad_version[8] = 9;
  EXPECT_THROW(DeserializeCheckpoint(bad_version), CorruptArtifact);
}

TEST(ParameterSetTest, RejectsDuplicateNamesAndBadShapes) {
  ParameterSet p;
  p.Add("a", {2}, Matrix::Zero(1, 2));
  EXPECT_THROW(p.Add("a", {2}, Matrix::Zero(1, 2)), InvalidArgument);
  EXPECT_THROW(p.Add("b", {3}, Matrix::Zero(1, 2)), InvalidArgument);
  EXPECT_THROW(p.Add("c", {1, 2, 3}, Matrix::Zero(1, 6)), InvalidArgument);
}

TEST(TapeTest, RejectsNonFiniteLeaves) {
  Tape tape;
  EXPECT_THROW(tape.Param(Matrix::Constant(1, 1, INFINITY)), NumericalError);
  EXPECT_THROW(tape.Constant(Matrix::Constant(1, 1, NAN)), NumericalError);
}

}  // namespace
}  // namespace eikgcrl::diffcore
