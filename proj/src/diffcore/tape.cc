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

#include "eikgcrl/diffcore/tape.h"

#include <cmath>
#include <string>
#include <utility>

#include "eikgcrl/errors.h"

namespace eikgcrl::diffcore {
namespace {

Matrix StableSigmoid(const Matrix& x) {
  return x.unaryExpr([](double v) {
    if (v >= 0.0) return 1.0 / (1.0 + std::exp(-v));
    const double e = std::exp(v);
    return e / (1.0 + e);
  });
}

Matrix StableSoftplus(const Matrix& x) {
  return x.unaryExpr([](double v) {
    return std::max(v, 0.0) + std::log1p(std::exp(-std::abs(v)));
  });
}

Tape* SameTape(Var a, Var b) {
  if (!a.valid() || !b.valid()) throw InvalidArgument("invalid Var operand");
  if (a.tape() != b.tape()) throw InvalidArgument("Vars from different tapes");
  return a.tape();
}

Tape* TapeOf(Var a) {
  if (!a.valid()) throw InvalidArgument("invalid Var operand");
  return a.tape();
}

void RequireSameShape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument(std::string(op) + ": shape mismatch (" +
                          std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + " vs " +
                          std::to_string(b.rows()) + "x" +
                          std::to_string(b.cols()) + ")");
  }
}

}  // namespace

const char* OpName(Op op) {
  switch (op) {
    case Op::kParam: return "param";
    case Op::kConstant: return "constant";
    case Op::kMatMul: return "matmul";
    case Op::kAdd: return "add";
    case Op::kSub: return "sub";
    case Op::kMul: return "mul";
    case Op::kAddRow: return "add_row";
    case Op::kMulRow: return "mul_row";
    case Op::kMulCol: return "mul_col";
    case Op::kNeg: return "neg";
    case Op::kScale: return "scale";
    case Op::kAddScalar: return "add_scalar";
    case Op::kTanh: return "tanh";
    case Op::kSoftplus: return "softplus";
    case Op::kSigmoid: return "sigmoid";
    case Op::kRelu: return "relu";
    case Op::kStep: return "step";
    case Op::kExp: return "exp";
    case Op::kLog: return "log";
    case Op::kSquare: return "square";
    case Op::kSqrt: return "sqrt";
    case Op::kClip: return "clip";
    case Op::kStopGradient: return "stop_gradient";
    case Op::kSumCols: return "sum_cols";
    case Op::kSum: return "sum";
    case Op::kMean: return "mean";
    case Op::kTranspose: return "transpose";
    case Op::kSliceCols: return "slice_cols";
    case Op::kConcatCols: return "concat_cols";
  }
  return "unknown";
}

const Matrix& Var::value() const { return tape_->value(*this); }

double Var::scalar() const {
  const Matrix& v = value();
  if (v.size() != 1) throw InvalidArgument("Var is not 1x1");
  return v(0, 0);
}

Var Tape::Param(const Matrix& value) {
  if (!value.allFinite()) throw NumericalError("non-finite parameter value");
  nodes_.push_back({Op::kParam, value});
  nodes_.back().requires_grad = true;
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Var Tape::Constant(Matrix value) {
  if (!value.allFinite()) throw NumericalError("non-finite constant value");
  nodes_.push_back({Op::kConstant, std::move(value)});
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Var Tape::Scalar(double value) {
  return Constant(Matrix::Constant(1, 1, value));
}

Var Tape::Push(Op op, Matrix value, Var a, Var b, double k0, double k1,
               Eigen::Index i0, Eigen::Index i1) {
  Node n{op, std::move(value), a.id_, b.valid() ? b.id_ : -1, k0, k1, i0, i1};
  if (op != Op::kStopGradient) {
    n.requires_grad = nodes_[a.id_].requires_grad ||
                      (n.b >= 0 && nodes_[n.b].requires_grad);
  }
  nodes_.push_back(std::move(n));
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

std::vector<Matrix> Tape::Gradients(Var loss, std::span<const Var> wrt) const {
  if (loss.tape_ != this) throw InvalidArgument("loss is not on this tape");
  const Matrix& lv = nodes_[loss.id_].value;
  if (lv.size() != 1) throw InvalidArgument("loss must be 1x1");
  if (!std::isfinite(lv(0, 0))) throw NumericalError("non-finite loss");

  std::vector<Matrix> adj(nodes_.size());
  std::vector<bool> has(nodes_.size(), false);
  auto accumulate = [&](int id, const Matrix& g) {
    if (id < 0 || !nodes_[id].requires_grad) return;
    if (!has[id]) {
      adj[id] = g;
      has[id] = true;
    } else {
      adj[id] += g;
    }
  };
  adj[loss.id_] = Matrix::Ones(1, 1);
  has[loss.id_] = true;

  for (int id = loss.id_; id >= 0; --id) {
    if (!has[id]) continue;
    const Node& n = nodes_[id];
    if (!n.requires_grad) continue;
    const Matrix& g = adj[id];
    const Matrix& y = n.value;
    const Matrix* a = n.a >= 0 ? &nodes_[n.a].value : nullptr;
    const Matrix* b = n.b >= 0 ? &nodes_[n.b].value : nullptr;
    switch (n.op) {
      case Op::kParam:
      case Op::kConstant:
      case Op::kStopGradient:
        break;
      case Op::kMatMul:
        accumulate(n.a, g * b->transpose());
        accumulate(n.b, a->transpose() * g);
        break;
      case Op::kAdd:
        accumulate(n.a, g);
        accumulate(n.b, g);
        break;
      case Op::kSub:
        accumulate(n.a, g);
        accumulate(n.b, -g);
        break;
      case Op::kMul:
        accumulate(n.a, g.cwiseProduct(*b));
        accumulate(n.b, g.cwiseProduct(*a));
        break;
      case Op::kAddRow:
        accumulate(n.a, g);
        accumulate(n.b, g.colwise().sum());
        break;
      case Op::kMulRow:
        accumulate(n.a, (g.array().rowwise() * b->row(0).array()).matrix());
        accumulate(n.b, g.cwiseProduct(*a).colwise().sum());
        break;
      case Op::kMulCol:
        accumulate(n.a, (g.array().colwise() * b->col(0).array()).matrix());
        accumulate(n.b, g.cwiseProduct(*a).rowwise().sum());
        break;
      case Op::kNeg:
        accumulate(n.a, -g);
        break;
      case Op::kScale:
        accumulate(n.a, n.k0 * g);
        break;
      case Op::kAddScalar:
        accumulate(n.a, g);
        break;
      case Op::kTanh:
        accumulate(n.a,
                   g.cwiseProduct((1.0 - y.array().square()).matrix()));
        break;
      case Op::kSoftplus:
        accumulate(n.a, g.cwiseProduct(StableSigmoid(*a)));
        break;
      case Op::kSigmoid:
        accumulate(n.a, g.cwiseProduct((y.array() * (1.0 - y.array())).matrix()));
        break;
      case Op::kRelu:
        accumulate(n.a, g.cwiseProduct(
                            a->unaryExpr([](double v) { return v > 0 ? 1.0 : 0.0; })));
        break;
      case Op::kStep:
        throw UnsupportedPrimitive(
            "no derivative rule for primitive '" + std::string(OpName(n.op)) +
            "' on a differentiable path");
      case Op::kExp:
        accumulate(n.a, g.cwiseProduct(y));
        break;
      case Op::kLog:
        accumulate(n.a, g.cwiseQuotient(*a));
        break;
      case Op::kSquare:
        accumulate(n.a, 2.0 * g.cwiseProduct(*a));
        break;
      case Op::kSqrt:
        accumulate(n.a, (g.array() / (2.0 * y.array())).matrix());
        break;
      case Op::kClip: {
        const double lo = n.k0;
        const double hi = n.k1;
        accumulate(n.a, g.cwiseProduct(a->unaryExpr([lo, hi](double v) {
          return (v >= lo && v <= hi) ? 1.0 : 0.0;
        })));
        break;
      }
      case Op::kSumCols:
        accumulate(n.a, g.col(0).replicate(1, a->cols()));
        break;
      case Op::kSum:
        accumulate(n.a, Matrix::Constant(a->rows(), a->cols(), g(0, 0)));
        break;
      case Op::kMean:
        accumulate(n.a, Matrix::Constant(a->rows(), a->cols(),
                                         g(0, 0) / static_cast<double>(a->size())));
        break;
      case Op::kTranspose:
        accumulate(n.a, g.transpose());
        break;
      case Op::kSliceCols: {
        Matrix full = Matrix::Zero(a->rows(), a->cols());
        full.middleCols(n.i0, n.i1) = g;
        accumulate(n.a, full);
        break;
      }
      case Op::kConcatCols:
        accumulate(n.a, g.leftCols(a->cols()));
        accumulate(n.b, g.rightCols(b->cols()));
        break;
    }
  }

  std::vector<Matrix> out;
  out.reserve(wrt.size());
  for (Var v : wrt) {
    if (v.tape_ != this) throw InvalidArgument("wrt Var is not on this tape");
    const Matrix& val = nodes_[v.id_].value;
    out.push_back(has[v.id_] ? adj[v.id_]
                             : Matrix::Zero(val.rows(), val.cols()));
  }
  return out;
}

Var MatMul(Var a, Var b) {
  Tape* t = SameTape(a, b);
  if (a.cols() != b.rows()) {
    throw InvalidArgument("matmul: inner dimensions differ (" +
                          std::to_string(a.cols()) + " vs " +
                          std::to_string(b.rows()) + ")");
  }
  return t->Push(Op::kMatMul, a.value() * b.value(), a, b);
}

Var Add(Var a, Var b) {
  Tape* t = SameTape(a, b);
  RequireSameShape(a.value(), b.value(), "add");
  return t->Push(Op::kAdd, a.value() + b.value(), a, b);
}

Var Sub(Var a, Var b) {
  Tape* t = SameTape(a, b);
  RequireSameShape(a.value(), b.value(), "sub");
  return t->Push(Op::kSub, a.value() - b.value(), a, b);
}

Var Mul(Var a, Var b) {
  Tape* t = SameTape(a, b);
  RequireSameShape(a.value(), b.value(), "mul");
  return t->Push(Op::kMul, a.value().cwiseProduct(b.value()), a, b);
}

Var AddRow(Var a, Var row) {
  Tape* t = SameTape(a, row);
  if (row.rows() != 1 || row.cols() != a.cols()) {
    throw InvalidArgument("add_row: row must be 1 x cols(a)");
  }
  Matrix v = a.value().rowwise() + row.value().row(0);
  return t->Push(Op::kAddRow, std::move(v), a, row);
}

Var MulRow(Var a, Var row) {
  Tape* t = SameTape(a, row);
  if (row.rows() != 1 || row.cols() != a.cols()) {
    throw InvalidArgument("mul_row: row must be 1 x cols(a)");
  }
  Matrix v = (a.value().array().rowwise() * row.value().row(0).array()).matrix();
  return t->Push(Op::kMulRow, std::move(v), a, row);
}

Var MulCol(Var a, Var col) {
  Tape* t = SameTape(a, col);
  if (col.cols() != 1 || col.rows() != a.rows()) {
    throw InvalidArgument("mul_col: col must be rows(a) x 1");
  }
  Matrix v = (a.value().array().colwise() * col.value().col(0).array()).matrix();
  return t->Push(Op::kMulCol, std::move(v), a, col);
}

Var Neg(Var a) { return TapeOf(a)->Push(Op::kNeg, -a.value(), a); }

Var Scale(Var a, double k) {
  return TapeOf(a)->Push(Op::kScale, k * a.value(), a, Var(), k);
}

Var AddScalar(Var a, double k) {
  Matrix v = (a.value().array() + k).matrix();
  return TapeOf(a)->Push(Op::kAddScalar, std::move(v), a, Var(), k);
}

Var Tanh(Var a) {
  return TapeOf(a)->Push(Op::kTanh, a.value().array().tanh().matrix(), a);
}

Var Softplus(Var a) {
  return TapeOf(a)->Push(Op::kSoftplus, StableSoftplus(a.value()), a);
}

Var Sigmoid(Var a) {
  return TapeOf(a)->Push(Op::kSigmoid, StableSigmoid(a.value()), a);
}

Var Relu(Var a) {
  return TapeOf(a)->Push(Op::kRelu, a.value().cwiseMax(0.0), a);
}

Var Step(Var a) {
  Matrix v = a.value().unaryExpr([](double x) { return x > 0 ? 1.0 : 0.0; });
  return TapeOf(a)->Push(Op::kStep, std::move(v), a);
}

Var Exp(Var a) {
  return TapeOf(a)->Push(Op::kExp, a.value().array().exp().matrix(), a);
}

Var Log(Var a) {
  return TapeOf(a)->Push(Op::kLog, a.value().array().log().matrix(), a);
}

Var Square(Var a) {
  return TapeOf(a)->Push(Op::kSquare, a.value().array().square().matrix(), a);
}

Var Sqrt(Var a) {
  return TapeOf(a)->Push(Op::kSqrt, a.value().array().sqrt().matrix(), a);
}

Var Clip(Var a, double lo, double hi) {
  if (!(lo <= hi)) throw InvalidArgument("clip: lo > hi");
  Matrix v = a.value().cwiseMax(lo).cwiseMin(hi);
  return TapeOf(a)->Push(Op::kClip, std::move(v), a, Var(), lo, hi);
}

Var StopGradient(Var a) {
  return TapeOf(a)->Push(Op::kStopGradient, a.value(), a);
}

Var SumCols(Var a) {
  return TapeOf(a)->Push(Op::kSumCols, a.value().rowwise().sum(), a);
}

Var Sum(Var a) {
  return TapeOf(a)->Push(Op::kSum, Matrix::Constant(1, 1, a.value().sum()), a);
}

Var Mean(Var a) {
  if (a.value().size() == 0) throw InvalidArgument("mean of empty matrix");
  return TapeOf(a)->Push(Op::kMean, Matrix::Constant(1, 1, a.value().mean()),
                         a);
}

Var Transpose(Var a) {
  return TapeOf(a)->Push(Op::kTranspose, a.value().transpose(), a);
}

Var SliceCols(Var a, Eigen::Index start, Eigen::Index count) {
  if (start < 0 || count < 0 || start + count > a.cols()) {
    throw InvalidArgument("slice_cols: range out of bounds");
  }
  return TapeOf(a)->Push(Op::kSliceCols, a.value().middleCols(start, count), a,
                         Var(), 0.0, 0.0, start, count);
}

Var ConcatCols(Var a, Var b) {
  Tape* t = SameTape(a, b);
  if (a.rows() != b.rows()) throw InvalidArgument("concat_cols: row mismatch");
  Matrix v(a.rows(), a.cols() + b.cols());
  v << a.value(), b.value();
  return t->Push(Op::kConcatCols, std::move(v), a, b);
}

}  // namespace eikgcrl::diffcore
