/* Copyright 2026 The Memotion Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Minimal reverse-mode automatic differentiation over dense float64
// tensors of rank 0 (scalar), 1 (vector) or 2 (row-major matrix).
//
// Every op checks its result for NaN/Inf and throws Error(kNonFinite)
// instead of letting non-finite values propagate. A graph node is recorded
// only when at least one input requires gradients; Backward() then walks
// the recorded nodes in reverse topological order, each exactly once.

#ifndef MEMOTION_AUTOGRAD_H_
#define MEMOTION_AUTOGRAD_H_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "memotion/random.h"

namespace memotion::ag {

using Shape = std::vector<size_t>;

struct Node;

class Tensor {
 public:
  Tensor() = default;

  // Leaf holding `values`; no gradient is tracked.
  static Tensor Constant(Shape shape, std::vector<double> values);
  // Trainable leaf; gradients accumulate into grad() across Backward calls.
  static Tensor Parameter(Shape shape, std::vector<double> values);
  static Tensor Zeros(Shape shape);
  static Tensor Scalar(double v) { return Constant({}, {v}); }
  static Tensor Vector(std::vector<double> v) {
    size_t n = v.size();
    return Constant({n}, std::move(v));
  }

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const;
  size_t rank() const { return shape().size(); }
  size_t size() const;
  size_t rows() const;
  size_t cols() const;

  std::span<const double> values() const;
  // Direct write access for optimizers and finite-difference probes.
  std::span<double> mutable_values();
  std::span<const double> grad() const;
  std::span<double> mutable_grad();
  bool requires_grad() const;
  void set_requires_grad(bool on);
  void ZeroGrad();

  double item() const;
  double operator[](size_t i) const { return values()[i]; }
  double at(size_t r, size_t c) const { return values()[r * cols() + c]; }

  // Fresh leaf with a copy of the values (gradient tracking preserved).
  Tensor Clone() const;

  const std::shared_ptr<Node>& node() const { return node_; }
  explicit Tensor(std::shared_ptr<Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<Node> node_;
};

struct Node {
  Shape shape;
  std::vector<double> value;
  std::vector<double> grad;  // allocated when requires_grad
  bool requires_grad = false;
  bool leaf = true;
  bool backward_done = false;
  std::string op;
  std::vector<std::shared_ptr<Node>> parents;
  // Accumulates this node's grad into its parents' grads.
  std::function<void(Node&)> backward;
};

// p x q times q x r.
Tensor MatMul(const Tensor& a, const Tensor& b);
// p x q matrix times q-vector.
Tensor MatVec(const Tensor& w, const Tensor& x);
Tensor Add(const Tensor& a, const Tensor& b);
Tensor Mul(const Tensor& a, const Tensor& b);
// Rank-1 concatenation, in order.
Tensor Concat(const std::vector<Tensor>& parts);
Tensor Concat(const Tensor& a, const Tensor& b);
// Elements [offset, offset + length) of a vector.
Tensor Slice(const Tensor& v, size_t offset, size_t length);
Tensor Sigmoid(const Tensor& a);
Tensor Tanh(const Tensor& a);
// Gradient at exactly zero is zero.
Tensor Relu(const Tensor& a);
// Max-subtracted softmax over a vector.
Tensor Softmax(const Tensor& z);
// -log(max(probs[target], 1e-12)) as a scalar.
Tensor CrossEntropy(const Tensor& probs, size_t target);
// Inverted dropout: in training, zero each element with probability `rate`
// and scale survivors by 1/(1-rate); identity otherwise.
Tensor Dropout(const Tensor& a, double rate, bool training, Rng& rng);
// Per-column max over rows [0, true_length); ties keep the earliest row.
// true_length == 0 yields a zero vector.
Tensor TemporalMaxPool(const Tensor& h, size_t true_length);
Tensor Sum(const Tensor& a);
// Rows of a V x d table selected by ids -> n x d. Id 0 (padding) yields a
// zero row and never sends gradient to the table.
Tensor Gather(const Tensor& table, std::span<const int> ids);
// Row r of a matrix as a vector.
Tensor Row(const Tensor& m, size_t r);
// n x w matrix whose first rows.size() rows are the given vectors and the
// remainder zero. Undefined entries in `rows` are zero rows as well.
Tensor StackRows(const std::vector<Tensor>& rows, size_t n);
// [a | b] for matrices with equal row counts.
Tensor ConcatCols(const Tensor& a, const Tensor& b);

// Seeds d(loss)/d(loss) = 1 and propagates. Throws NotScalar when the loss
// has more than one element and BackwardTwice when called again on the same
// loss.
void Backward(const Tensor& loss);

}  // namespace memotion::ag

#endif  // MEMOTION_AUTOGRAD_H_
