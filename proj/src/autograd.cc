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

#include "memotion/autograd.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "memotion/error.h"

namespace memotion::ag {

namespace {

size_t NumElements(const Shape& shape) {
  return std::accumulate(shape.begin(), shape.end(), size_t{1}, std::multiplies<>());
}

std::string ShapeString(const Shape& shape) {
  std::string s = "[";
  for (size_t i = 0; i < shape.size(); ++i) {
    if (i) s += "x";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

void CheckFinite(const std::vector<double>& v, const char* op) {
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(ErrorCode::kNonFinite, std::string(op) + " produced a non-finite value");
  }
}

std::shared_ptr<Node> MakeLeaf(Shape shape, std::vector<double> values, bool requires_grad) {
  if (NumElements(shape) != values.size()) {
    throw Error(ErrorCode::kShapeMismatch, "value count " + std::to_string(values.size()) +
                                               " does not match shape " + ShapeString(shape));
  }
  CheckFinite(values, "leaf");
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->value = std::move(values);
  node->requires_grad = requires_grad;
  node->op = "leaf";
  if (requires_grad) node->grad.assign(node->value.size(), 0.0);
  return node;
}

// Builds an op result; the backward rule is attached only when a parent
// tracks gradients.
Tensor MakeOp(const char* op, Shape shape, std::vector<double> value,
              std::vector<std::shared_ptr<Node>> parents, std::function<void(Node&)> backward) {
  CheckFinite(value, op);
  auto node = std::make_shared<Node>();
  node->shape = std::move(shape);
  node->value = std::move(value);
  node->leaf = false;
  node->op = op;
  bool track = std::any_of(parents.begin(), parents.end(),
                           [](const auto& p) { return p->requires_grad; });
  if (track) {
    node->requires_grad = true;
    node->grad.assign(node->value.size(), 0.0);
    node->parents = std::move(parents);
    node->backward = std::move(backward);
  }
  return Tensor(std::move(node));
}

void RequireRank(const Tensor& t, size_t rank, const char* op) {
  if (t.rank() != rank) {
    throw Error(ErrorCode::kRankError, std::string(op) + " expects rank " + std::to_string(rank) +
                                           ", got " + ShapeString(t.shape()));
  }
}

void RequireSameShape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw Error(ErrorCode::kShapeMismatch, std::string(op) + ": " + ShapeString(a.shape()) + " vs " +
                                               ShapeString(b.shape()));
  }
}

template <typename Fn, typename Deriv>
Tensor Unary(const char* op, const Tensor& a, Fn fn, Deriv deriv) {
  const auto& in = a.node()->value;
  std::vector<double> out(in.size());
  for (size_t i = 0; i < in.size(); ++i) out[i] = fn(in[i]);
  return MakeOp(op, a.shape(), std::move(out), {a.node()}, [deriv](Node& self) {
    Node& p = *self.parents[0];
    if (!p.requires_grad) return;
    for (size_t i = 0; i < self.grad.size(); ++i) {
      p.grad[i] += self.grad[i] * deriv(p.value[i], self.value[i]);
    }
  });
}

}  // namespace

Tensor Tensor::Constant(Shape shape, std::vector<double> values) {
  return Tensor(MakeLeaf(std::move(shape), std::move(values), false));
}

Tensor Tensor::Parameter(Shape shape, std::vector<double> values) {
  return Tensor(MakeLeaf(std::move(shape), std::move(values), true));
}

Tensor Tensor::Zeros(Shape shape) {
  size_t n = NumElements(shape);
  return Constant(std::move(shape), std::vector<double>(n, 0.0));
}

const Shape& Tensor::shape() const { return node_->shape; }
size_t Tensor::size() const { return node_->value.size(); }

size_t Tensor::rows() const {
  if (rank() == 0) return 1;
  return shape()[0];
}

size_t Tensor::cols() const {
  if (rank() < 2) return 1;
  return shape()[1];
}

std::span<const double> Tensor::values() const { return node_->value; }
std::span<double> Tensor::mutable_values() { return node_->value; }
std::span<const double> Tensor::grad() const { return node_->grad; }
std::span<double> Tensor::mutable_grad() { return node_->grad; }
bool Tensor::requires_grad() const { return node_->requires_grad; }

void Tensor::set_requires_grad(bool on) {
  if (!node_->leaf) throw Error(ErrorCode::kInvalidArgument, "only leaves can toggle gradient tracking");
  node_->requires_grad = on;
  if (on) {
    node_->grad.assign(node_->value.size(), 0.0);
  } else {
    node_->grad.clear();
  }
}

void Tensor::ZeroGrad() { std::fill(node_->grad.begin(), node_->grad.end(), 0.0); }

double Tensor::item() const {
  if (size() != 1) throw Error(ErrorCode::kNotScalar, "item() on tensor of shape " + ShapeString(shape()));
  return node_->value[0];
}

Tensor Tensor::Clone() const {
  return Tensor(MakeLeaf(node_->shape, node_->value, node_->requires_grad));
}

Tensor MatMul(const Tensor& a, const Tensor& b) {
  RequireRank(a, 2, "matmul");
  RequireRank(b, 2, "matmul");
  const size_t p = a.rows(), q = a.cols(), r = b.cols();
  if (b.rows() != q) {
    throw Error(ErrorCode::kShapeMismatch,
                "matmul inner dims: " + ShapeString(a.shape()) + " x " + ShapeString(b.shape()));
  }
  const auto& av = a.node()->value;
  const auto& bv = b.node()->value;
  std::vector<double> out(p * r, 0.0);
  for (size_t i = 0; i < p; ++i) {
    for (size_t k = 0; k < q; ++k) {
      const double aik = av[i * q + k];
      for (size_t j = 0; j < r; ++j) out[i * r + j] += aik * bv[k * r + j];
    }
  }
  return MakeOp("matmul", {p, r}, std::move(out), {a.node(), b.node()}, [p, q, r](Node& self) {
    Node& na = *self.parents[0];
    Node& nb = *self.parents[1];
    const auto& g = self.grad;
    if (na.requires_grad) {
      for (size_t i = 0; i < p; ++i) {
        for (size_t k = 0; k < q; ++k) {
          double s = 0;
          for (size_t j = 0; j < r; ++j) s += g[i * r + j] * nb.value[k * r + j];
          na.grad[i * q + k] += s;
        }
      }
    }
    if (nb.requires_grad) {
      for (size_t i = 0; i < p; ++i) {
        for (size_t k = 0; k < q; ++k) {
          const double aik = na.value[i * q + k];
          for (size_t j = 0; j < r; ++j) nb.grad[k * r + j] += aik * g[i * r + j];
        }
      }
    }
  });
}

Tensor MatVec(const Tensor& w, const Tensor& x) {
  RequireRank(w, 2, "matvec");
  RequireRank(x, 1, "matvec");
  const size_t p = w.rows(), q = w.cols();
  if (x.size() != q) {
    throw Error(ErrorCode::kShapeMismatch,
                "matvec: " + ShapeString(w.shape()) + " x " + ShapeString(x.shape()));
  }
  const auto& wv = w.node()->value;
  const auto& xv = x.node()->value;
  std::vector<double> out(p, 0.0);
  for (size_t i = 0; i < p; ++i) {
    const double* row = wv.data() + i * q;
    double s = 0;
    for (size_t k = 0; k < q; ++k) s += row[k] * xv[k];
    out[i] = s;
  }
  return MakeOp("matvec", {p}, std::move(out), {w.node(), x.node()}, [p, q](Node& self) {
    Node& nw = *self.parents[0];
    Node& nx = *self.parents[1];
    const auto& g = self.grad;
    if (nw.requires_grad) {
      for (size_t i = 0; i < p; ++i) {
        if (g[i] == 0.0) continue;
        double* row = nw.grad.data() + i * q;
        for (size_t k = 0; k < q; ++k) row[k] += g[i] * nx.value[k];
      }
    }
    if (nx.requires_grad) {
      for (size_t i = 0; i < p; ++i) {
        if (g[i] == 0.0) continue;
        const double* row = nw.value.data() + i * q;
        for (size_t k = 0; k < q; ++k) nx.grad[k] += g[i] * row[k];
      }
    }
  });
}

Tensor Add(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "add");
  const auto& av = a.node()->value;
  const auto& bv = b.node()->value;
  std::vector<double> out(av.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = av[i] + bv[i];
  return MakeOp("add", a.shape(), std::move(out), {a.node(), b.node()}, [](Node& self) {
    for (auto& parent : self.parents) {
      if (!parent->requires_grad) continue;
      for (size_t i = 0; i < self.grad.size(); ++i) parent->grad[i] += self.grad[i];
    }
  });
}

Tensor Mul(const Tensor& a, const Tensor& b) {
  RequireSameShape(a, b, "mul");
  const auto& av = a.node()->value;
  const auto& bv = b.node()->value;
  std::vector<double> out(av.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = av[i] * bv[i];
  return MakeOp("mul", a.shape(), std::move(out), {a.node(), b.node()}, [](Node& self) {
    Node& na = *self.parents[0];
    Node& nb = *self.parents[1];
    for (size_t i = 0; i < self.grad.size(); ++i) {
      if (na.requires_grad) na.grad[i] += self.grad[i] * nb.value[i];
      if (nb.requires_grad) nb.grad[i] += self.grad[i] * na.value[i];
    }
  });
}

Tensor Concat(const std::vector<Tensor>& parts) {
  std::vector<double> out;
  std::vector<std::shared_ptr<Node>> parents;
  for (const Tensor& t : parts) {
    RequireRank(t, 1, "concat");
    out.insert(out.end(), t.values().begin(), t.values().end());
    parents.push_back(t.node());
  }
  const size_t n = out.size();
  return MakeOp("concat", {n}, std::move(out), std::move(parents), [](Node& self) {
    size_t offset = 0;
    for (auto& parent : self.parents) {
      const size_t len = parent->value.size();
      if (parent->requires_grad) {
        for (size_t i = 0; i < len; ++i) parent->grad[i] += self.grad[offset + i];
      }
      offset += len;
    }
  });
}

Tensor Concat(const Tensor& a, const Tensor& b) { return Concat(std::vector<Tensor>{a, b}); }

Tensor Slice(const Tensor& v, size_t offset, size_t length) {
  RequireRank(v, 1, "slice");
  if (offset + length > v.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "slice [" + std::to_string(offset) + ", " +
                                                 std::to_string(offset + length) + ") of " +
                                                 ShapeString(v.shape()));
  }
  std::vector<double> out(v.values().begin() + static_cast<long>(offset),
                          v.values().begin() + static_cast<long>(offset + length));
  return MakeOp("slice", {length}, std::move(out), {v.node()}, [offset](Node& self) {
    Node& p = *self.parents[0];
    for (size_t i = 0; i < self.grad.size(); ++i) p.grad[offset + i] += self.grad[i];
  });
}

Tensor Sigmoid(const Tensor& a) {
  return Unary(
      "sigmoid", a,
      [](double x) { return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x)); },
      [](double, double y) { return y * (1.0 - y); });
}

Tensor Tanh(const Tensor& a) {
  return Unary(
      "tanh", a, [](double x) { return std::tanh(x); }, [](double, double y) { return 1.0 - y * y; });
}

Tensor Relu(const Tensor& a) {
  return Unary(
      "relu", a, [](double x) { return x > 0 ? x : 0.0; },
      [](double x, double) { return x > 0 ? 1.0 : 0.0; });
}

Tensor Softmax(const Tensor& z) {
  RequireRank(z, 1, "softmax");
  if (z.size() == 0) throw Error(ErrorCode::kShapeMismatch, "softmax of an empty vector");
  const auto& zv = z.node()->value;
  const double mx = *std::max_element(zv.begin(), zv.end());
  std::vector<double> out(zv.size());
  double total = 0;
  for (size_t i = 0; i < zv.size(); ++i) {
    out[i] = std::exp(zv[i] - mx);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return MakeOp("softmax", z.shape(), std::move(out), {z.node()}, [](Node& self) {
    Node& p = *self.parents[0];
    double dot = 0;
    for (size_t i = 0; i < self.grad.size(); ++i) dot += self.grad[i] * self.value[i];
    for (size_t i = 0; i < self.grad.size(); ++i) p.grad[i] += self.value[i] * (self.grad[i] - dot);
  });
}

Tensor CrossEntropy(const Tensor& probs, size_t target) {
  RequireRank(probs, 1, "cross_entropy");
  if (target >= probs.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "target class " + std::to_string(target) + " >= " +
                                                 std::to_string(probs.size()));
  }
  constexpr double kFloor = 1e-12;
  const double p = probs.node()->value[target];
  const bool floored = p < kFloor;
  return MakeOp("cross_entropy", {}, {-std::log(std::max(p, kFloor))}, {probs.node()},
                [target, floored](Node& self) {
                  Node& pn = *self.parents[0];
                  if (!floored) pn.grad[target] += -self.grad[0] / pn.value[target];
                });
}

Tensor Dropout(const Tensor& a, double rate, bool training, Rng& rng) {
  if (!(rate >= 0.0 && rate < 1.0)) throw Error(ErrorCode::kInvalidArgument, "dropout rate must lie in [0, 1)");
  if (!training || rate == 0.0) return a;
  const double scale = 1.0 / (1.0 - rate);
  std::vector<double> mask(a.size());
  for (double& m : mask) m = rng.Uniform() < rate ? 0.0 : scale;
  const auto& av = a.node()->value;
  std::vector<double> out(av.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = av[i] * mask[i];
  return MakeOp("dropout", a.shape(), std::move(out), {a.node()},
                [mask = std::move(mask)](Node& self) {
                  Node& p = *self.parents[0];
                  for (size_t i = 0; i < self.grad.size(); ++i) p.grad[i] += self.grad[i] * mask[i];
                });
}

Tensor TemporalMaxPool(const Tensor& h, size_t true_length) {
  RequireRank(h, 2, "temporal_max_pool");
  const size_t n = h.rows(), d = h.cols();
  if (true_length > n) {
    throw Error(ErrorCode::kShapeMismatch, "true_length " + std::to_string(true_length) +
                                               " exceeds sequence length " + std::to_string(n));
  }
  const auto& hv = h.node()->value;
  std::vector<double> out(d, 0.0);
  std::vector<size_t> argmax(d, 0);
  if (true_length > 0) {
    for (size_t c = 0; c < d; ++c) {
      size_t best = 0;
      for (size_t r = 1; r < true_length; ++r) {
        if (hv[r * d + c] > hv[best * d + c]) best = r;
      }
      argmax[c] = best;
      out[c] = hv[best * d + c];
    }
  }
  return MakeOp("temporal_max_pool", {d}, std::move(out), {h.node()},
                [argmax = std::move(argmax), d, true_length](Node& self) {
                  if (true_length == 0) return;
                  Node& p = *self.parents[0];
                  for (size_t c = 0; c < d; ++c) p.grad[argmax[c] * d + c] += self.grad[c];
                });
}

Tensor Sum(const Tensor& a) {
  double s = 0;
  for (double v : a.values()) s += v;
  return MakeOp("sum", {}, {s}, {a.node()}, [](Node& self) {
    Node& p = *self.parents[0];
    for (double& g : p.grad) g += self.grad[0];
  });
}

Tensor Gather(const Tensor& table, std::span<const int> ids) {
  RequireRank(table, 2, "gather");
  const size_t v = table.rows(), d = table.cols();
  std::vector<int> idx(ids.begin(), ids.end());
  std::vector<double> out(idx.size() * d);
  const auto& tv = table.node()->value;
  for (size_t t = 0; t < idx.size(); ++t) {
    if (idx[t] < 0 || static_cast<size_t>(idx[t]) >= v) {
      throw Error(ErrorCode::kIndexOutOfRange, "token id " + std::to_string(idx[t]) +
                                                   " outside table of " + std::to_string(v) + " rows");
    }
    if (idx[t] == 0) continue;  // padding reads as zeros whatever row 0 holds
    std::copy_n(tv.begin() + static_cast<long>(static_cast<size_t>(idx[t]) * d), d,
                out.begin() + static_cast<long>(t * d));
  }
  const size_t n = idx.size();
  return MakeOp("gather", {n, d}, std::move(out), {table.node()},
                [idx = std::move(idx), d](Node& self) {
                  Node& p = *self.parents[0];
                  for (size_t t = 0; t < idx.size(); ++t) {
                    if (idx[t] == 0) continue;
                    const size_t base = static_cast<size_t>(idx[t]) * d;
                    for (size_t c = 0; c < d; ++c) p.grad[base + c] += self.grad[t * d + c];
                  }
                });
}

Tensor Row(const Tensor& m, size_t r) {
  RequireRank(m, 2, "row");
  const size_t d = m.cols();
  if (r >= m.rows()) throw Error(ErrorCode::kIndexOutOfRange, "row " + std::to_string(r) + " of " + ShapeString(m.shape()));
  std::vector<double> out(m.values().begin() + static_cast<long>(r * d),
                          m.values().begin() + static_cast<long>((r + 1) * d));
  return MakeOp("row", {d}, std::move(out), {m.node()}, [r, d](Node& self) {
    Node& p = *self.parents[0];
    for (size_t c = 0; c < d; ++c) p.grad[r * d + c] += self.grad[c];
  });
}

Tensor StackRows(const std::vector<Tensor>& rows, size_t n) {
  if (rows.size() > n) throw Error(ErrorCode::kShapeMismatch, "more rows than the stacked height");
  size_t width = 0;
  bool have_width = false;
  for (const Tensor& t : rows) {
    if (!t.defined()) continue;
    RequireRank(t, 1, "stack_rows");
    if (have_width && t.size() != width) throw Error(ErrorCode::kShapeMismatch, "stack_rows: ragged rows");
    width = t.size();
    have_width = true;
  }
  if (!have_width) throw Error(ErrorCode::kShapeMismatch, "stack_rows needs at least one row; use Zeros");
  std::vector<double> out(n * width, 0.0);
  std::vector<std::shared_ptr<Node>> parents;
  std::vector<size_t> positions;
  for (size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].defined()) continue;
    std::copy(rows[r].values().begin(), rows[r].values().end(),
              out.begin() + static_cast<long>(r * width));
    parents.push_back(rows[r].node());
    positions.push_back(r);
  }
  return MakeOp("stack_rows", {n, width}, std::move(out), std::move(parents),
                [positions = std::move(positions), width](Node& self) {
                  for (size_t k = 0; k < positions.size(); ++k) {
                    Node& p = *self.parents[k];
                    if (!p.requires_grad) continue;
                    for (size_t c = 0; c < width; ++c) p.grad[c] += self.grad[positions[k] * width + c];
                  }
                });
}

Tensor ConcatCols(const Tensor& a, const Tensor& b) {
  RequireRank(a, 2, "concat_cols");
  RequireRank(b, 2, "concat_cols");
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::kShapeMismatch,
                "concat_cols: " + ShapeString(a.shape()) + " vs " + ShapeString(b.shape()));
  }
  const size_t n = a.rows(), p = a.cols(), q = b.cols();
  std::vector<double> out(n * (p + q));
  for (size_t r = 0; r < n; ++r) {
    std::copy_n(a.values().begin() + static_cast<long>(r * p), p, out.begin() + static_cast<long>(r * (p + q)));
    std::copy_n(b.values().begin() + static_cast<long>(r * q), q,
                out.begin() + static_cast<long>(r * (p + q) + p));
  }
  return MakeOp("concat_cols", {n, p + q}, std::move(out), {a.node(), b.node()}, [n, p, q](Node& self) {
    Node& na = *self.parents[0];
    Node& nb = *self.parents[1];
    for (size_t r = 0; r < n; ++r) {
      if (na.requires_grad) {
        for (size_t c = 0; c < p; ++c) na.grad[r * p + c] += self.grad[r * (p + q) + c];
      }
      if (nb.requires_grad) {
        for (size_t c = 0; c < q; ++c) nb.grad[r * q + c] += self.grad[r * (p + q) + p + c];
      }
    }
  });
}

void Backward(const Tensor& loss) {
  if (!loss.defined()) throw Error(ErrorCode::kInvalidArgument, "backward on an undefined tensor");
  if (loss.size() != 1) {
    throw Error(ErrorCode::kNotScalar, "backward needs a scalar loss, got " + ShapeString(loss.shape()));
  }
  Node* root = loss.node().get();
  if (root->backward_done) throw Error(ErrorCode::kBackwardTwice, "backward already ran on this loss");
  if (!root->requires_grad) {
    root->backward_done = true;
    return;
  }

  // Iterative post-order DFS; reversing it gives a topological order.
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, size_t>> stack = {{root, 0}};
  visited.insert(root);
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      Node* parent = node->parents[next++].get();
      if (parent->requires_grad && !parent->leaf && visited.insert(parent).second) {
        stack.push_back({parent, 0});
      }
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }

  for (Node* n : order) std::fill(n->grad.begin(), n->grad.end(), 0.0);
  root->grad[0] = 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if ((*it)->backward) (*it)->backward(**it);
  }
  root->backward_done = true;
}

}  // namespace memotion::ag
