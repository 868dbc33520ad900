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

#include "memotion/layers.h"

#include <cmath>
#include <string>
#include <vector>

#include "memotion/error.h"

namespace memotion {

namespace {

std::vector<double> GlorotUniform(size_t rows, size_t cols, size_t fan_in, size_t fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::vector<double> v(rows * cols);
  for (double& x : v) x = rng.Uniform(-limit, limit);
  return v;
}

}  // namespace

LstmParams LstmParams::Init(size_t input, size_t hidden, Rng& rng) {
  LstmParams p;
  p.w = ag::Tensor::Parameter({4 * hidden, input}, GlorotUniform(4 * hidden, input, input, hidden, rng));
  p.u = ag::Tensor::Parameter({4 * hidden, hidden}, GlorotUniform(4 * hidden, hidden, hidden, hidden, rng));
  std::vector<double> bias(4 * hidden, 0.0);
  for (size_t k = hidden; k < 2 * hidden; ++k) bias[k] = 1.0;
  p.b = ag::Tensor::Parameter({4 * hidden}, std::move(bias));
  return p;
}

LstmState LstmStep(const ag::Tensor& x, const LstmState& prev, const LstmParams& p) {
  const size_t h = p.hidden();
  if (p.w.rows() != 4 * h || p.u.rows() != 4 * h || p.b.size() != 4 * h || x.rank() != 1 ||
      x.size() != p.input() || prev.h.size() != h || prev.c.size() != h) {
    throw Error(ErrorCode::kShapeMismatch, "lstm_step: inconsistent input/state/parameter shapes");
  }
  ag::Tensor z = ag::Add(ag::Add(ag::MatVec(p.w, x), ag::MatVec(p.u, prev.h)), p.b);
  ag::Tensor in_gate = ag::Sigmoid(ag::Slice(z, 0, h));
  ag::Tensor forget_gate = ag::Sigmoid(ag::Slice(z, h, h));
  ag::Tensor candidate = ag::Tanh(ag::Slice(z, 2 * h, h));
  ag::Tensor out_gate = ag::Sigmoid(ag::Slice(z, 3 * h, h));
  ag::Tensor c = ag::Add(ag::Mul(forget_gate, prev.c), ag::Mul(in_gate, candidate));
  return {ag::Mul(out_gate, ag::Tanh(c)), c};
}

LstmOutput LstmEncode(const ag::Tensor& x, size_t true_length, const LstmParams& p, bool reverse) {
  if (x.rank() != 2 || x.cols() != p.input()) {
    throw Error(ErrorCode::kShapeMismatch, "lstm_encode: input width " + std::to_string(x.cols()) +
                                               " != parameter input " + std::to_string(p.input()));
  }
  const size_t n = x.rows(), h = p.hidden();
  if (true_length > n) throw Error(ErrorCode::kShapeMismatch, "lstm_encode: true_length exceeds n");

  LstmState state{ag::Tensor::Zeros({h}), ag::Tensor::Zeros({h})};
  if (true_length == 0) return {ag::Tensor::Zeros({n, h}), state.h};

  std::vector<ag::Tensor> rows(true_length);
  for (size_t k = 0; k < true_length; ++k) {
    const size_t t = reverse ? true_length - 1 - k : k;
    state = LstmStep(ag::Row(x, t), state, p);
    rows[t] = state.h;
  }
  return {ag::StackRows(rows, n), state.h};
}

ag::Tensor BiLstmEncode(const ag::Tensor& x, size_t true_length, const LstmParams& fwd,
                        const LstmParams& bwd) {
  if (fwd.hidden() != bwd.hidden() || fwd.input() != bwd.input()) {
    throw Error(ErrorCode::kShapeMismatch, "bilstm: forward/backward parameter shapes differ");
  }
  LstmOutput f = LstmEncode(x, true_length, fwd, false);
  LstmOutput b = LstmEncode(x, true_length, bwd, true);
  return ag::ConcatCols(f.outputs, b.outputs);
}

DenseParams DenseParams::Init(size_t in, size_t out, Activation activation, Rng& rng) {
  DenseParams p;
  p.w = ag::Tensor::Parameter({out, in}, GlorotUniform(out, in, in, out, rng));
  p.b = ag::Tensor::Parameter({out}, std::vector<double>(out, 0.0));
  p.activation = activation;
  return p;
}

ag::Tensor Dense(const ag::Tensor& x, const DenseParams& p) {
  if (x.rank() != 1 || x.size() != p.in() || p.b.size() != p.out()) {
    throw Error(ErrorCode::kShapeMismatch, "dense: input " + std::to_string(x.size()) +
                                               " vs layer " + std::to_string(p.in()) + "->" +
                                               std::to_string(p.out()));
  }
  ag::Tensor y = ag::Add(ag::MatVec(p.w, x), p.b);
  return p.activation == Activation::kRelu ? ag::Relu(y) : y;
}

}  // namespace memotion
