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

#ifndef EIKGCRL_DIFFCORE_TAPE_H_
#define EIKGCRL_DIFFCORE_TAPE_H_

#include <span>
#include <vector>

#include "eikgcrl/diffcore/parameter_set.h"

namespace eikgcrl::diffcore {

// Primitive operations recorded on a Tape. Every primitive except kStep has
// a vector-Jacobian rule; kStep exists so that non-smooth constructions
// (e.g. the derivative of a ReLU) can be evaluated but never differentiated.
enum class Op {
  kParam,
  kConstant,
  kMatMul,
  kAdd,
  kSub,
  kMul,
  kAddRow,
  kMulRow,
  kMulCol,
  kNeg,
  kScale,
  kAddScalar,
  kTanh,
  kSoftplus,
  kSigmoid,
  kRelu,
  kStep,
  kExp,
  kLog,
  kSquare,
  kSqrt,
  kClip,
  kStopGradient,
  kSumCols,
  kSum,
  kMean,
  kTranspose,
  kSliceCols,
  kConcatCols,
};

const char* OpName(Op op);

class Tape;

// Handle to a node on a Tape. Cheap to copy; valid while the Tape lives.
class Var {
 public:
  Var() = default;

  const Matrix& value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  // Value of a 1 x 1 node.
  double scalar() const;

  int id() const { return id_; }
  Tape* tape() const { return tape_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  int id_ = -1;
};

// Append-only record of a computation over dense matrices. Rows index batch
// samples throughout this library. Gradients are exact reverse mode; second
// derivatives are obtained by recording the first-derivative computation
// itself as tape operations (see mlp.h) and differentiating that.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Differentiable leaf. Rejects non-finite input.
  Var Param(const Matrix& value);
  // Non-differentiable leaf. Rejects non-finite input.
  Var Constant(Matrix value);
  Var Scalar(double value);

  const Matrix& value(Var v) const { return nodes_[v.id_].value; }
  std::size_t size() const { return nodes_.size(); }

  // d(loss)/d(wrt[i]) for a 1 x 1 `loss`. Throws UnsupportedPrimitive when a
  // path from `loss` back to any differentiable leaf crosses a primitive
  // without a derivative rule.
  std::vector<Matrix> Gradients(Var loss, std::span<const Var> wrt) const;

  // Internal: appends a node. Used by the free-function primitives below.
  Var Push(Op op, Matrix value, Var a, Var b = Var(), double k0 = 0.0,
           double k1 = 0.0, Eigen::Index i0 = 0, Eigen::Index i1 = 0);

 private:
  struct Node {
    Op op;
    Matrix value;
    int a = -1;
    int b = -1;
    double k0 = 0.0;
    double k1 = 0.0;
    Eigen::Index i0 = 0;
    Eigen::Index i1 = 0;
    bool requires_grad = false;
  };

  std::vector<Node> nodes_;
};

// Shapes: a is n x k, b is k x m.
Var MatMul(Var a, Var b);
Var Add(Var a, Var b);
Var Sub(Var a, Var b);
// Elementwise product.
Var Mul(Var a, Var b);
// a (n x m) + row (1 x m), broadcast over rows.
Var AddRow(Var a, Var row);
// a (n x m) * row (1 x m), broadcast over rows.
Var MulRow(Var a, Var row);
// a (n x m) * col (n x 1), broadcast over columns.
Var MulCol(Var a, Var col);
Var Neg(Var a);
Var Scale(Var a, double k);
Var AddScalar(Var a, double k);
Var Tanh(Var a);
Var Softplus(Var a);
Var Sigmoid(Var a);
Var Relu(Var a);
// Heaviside indicator [a > 0]; evaluable, not differentiable.
Var Step(Var a);
Var Exp(Var a);
Var Log(Var a);
Var Square(Var a);
Var Sqrt(Var a);
Var Clip(Var a, double lo, double hi);
Var StopGradient(Var a);
// Row sums: n x m -> n x 1.
Var SumCols(Var a);
// Sum / mean of all entries -> 1 x 1.
Var Sum(Var a);
Var Mean(Var a);
Var Transpose(Var a);
Var SliceCols(Var a, Eigen::Index start, Eigen::Index count);
Var ConcatCols(Var a, Var b);

inline Var operator+(Var a, Var b) { return Add(a, b); }
inline Var operator-(Var a, Var b) { return Sub(a, b); }
inline Var operator-(Var a) { return Neg(a); }
inline Var operator*(double k, Var a) { return Scale(a, k); }

}  // namespace eikgcrl::diffcore

#endif  // EIKGCRL_DIFFCORE_TAPE_H_
